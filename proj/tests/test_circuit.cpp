#include <algorithm>
#include <random>

#include "doctest.h"
#include "qmpack/circuit.hpp"
#include "test_util.hpp"

using namespace qmpack;

TEST_SUITE_BEGIN("circuit");

namespace {

/// Brute-force longest path over the dependency DAG with per-node weights.
int longest_path_oracle(const CircuitIR& c, bool cx_only) {
    CircuitDag dag = build_dag(c);
    std::vector<int> memo(c.gates.size(), -1);
    // gate order is topological, so a reverse scan settles every successor
    int best = 0;
    for (int i = static_cast<int>(c.gates.size()) - 1; i >= 0; --i) {
        int weight = cx_only ? (c.gates[i].kind == GateKind::Cx ? 1 : 0)
                             : (c.gates[i].kind == GateKind::Barrier ? 0 : 1);
        int down = 0;
        for (int s : dag.succ[static_cast<std::size_t>(i)]) down = std::max(down, memo[s]);
        memo[static_cast<std::size_t>(i)] = weight + down;
        best = std::max(best, memo[static_cast<std::size_t>(i)]);
    }
    return best;
}

}  // namespace

TEST_CASE("dag links dependent gates") {
    CircuitIR c = test_util::parse_text("OPENQASM 2.0;\nqreg q[2];\nh q[0];\ncx q[0],q[1];\n");
    CircuitDag dag = build_dag(c);
    REQUIRE(dag.node_count() == 2);
    CHECK(dag.succ[0] == std::vector<int>{1});
    CHECK(dag.pred[1] == std::vector<int>{0});
}

TEST_CASE("parallel gates have no edges") {
    CircuitIR c = test_util::parse_text("OPENQASM 2.0;\nqreg q[2];\nx q[0];\nx q[1];\n");
    CircuitDag dag = build_dag(c);
    CHECK(dag.succ[0].empty());
    CHECK(dag.succ[1].empty());
}

TEST_CASE("barriers order gates but carry no depth") {
    CircuitIR c = test_util::parse_text(
        "OPENQASM 2.0;\nqreg q[2];\nx q[0];\nbarrier q[0],q[1];\nx q[1];\n");
    CircuitDag dag = build_dag(c);
    CHECK(dag.succ[0] == std::vector<int>{1});
    CHECK(dag.succ[1] == std::vector<int>{2});
    CHECK(cx_depth(c) == 0);
    CHECK(logic_depth(c) == 2);  // the barrier serializes the two x gates
}

TEST_CASE("cx depth basics") {
    CHECK(cx_depth(test_util::parse_text("OPENQASM 2.0;\nqreg q[2];\nh q[0];\n")) == 0);
    std::string chain = "OPENQASM 2.0;\nqreg q[3];\n";
    for (int i = 0; i < 5; ++i) chain += "cx q[0],q[1];\ncx q[1],q[2];\n";
    CHECK(cx_depth(test_util::parse_text(chain)) == 10);
}

TEST_CASE("adder depth equals the oracle") {
    CircuitIR c = test_util::parse_file("data/benchmarks/adder_n4.qasm");
    CHECK(cx_depth(c) == longest_path_oracle(c, true));
    CHECK(logic_depth(c) == longest_path_oracle(c, false));
}

TEST_CASE("random circuits: depth matches oracle and dag stays acyclic") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        CircuitIR c = test_util::random_circuit(4, 30, rng);
        CAPTURE(trial);
        CHECK(cx_depth(c) == longest_path_oracle(c, true));
        CHECK(cx_depth(c) <= static_cast<int>(c.cx_count()));
        // acyclicity: every edge goes forward in list order
        CircuitDag dag = build_dag(c);
        for (std::size_t i = 0; i < dag.succ.size(); ++i)
            for (int s : dag.succ[i]) CHECK(s > static_cast<int>(i));
    }
}

TEST_CASE("interaction graph counts cx per pair") {
    CircuitIR c = test_util::parse_text(
        "OPENQASM 2.0;\nqreg q[3];\ncx q[0],q[1];\ncx q[0],q[1];\ncx q[1],q[2];\n");
    InteractionGraph g = interaction_graph(c);
    CHECK(g.weights.at({0, 1}) == 2);
    CHECK(g.weights.at({1, 2}) == 1);
    CHECK(g.total_weight() == 3);
}

TEST_CASE("single-qubit circuits give an edgeless graph") {
    CircuitIR c = test_util::parse_text("OPENQASM 2.0;\nqreg q[3];\nh q;\n");
    CHECK(interaction_graph(c).weights.empty());
}

TEST_CASE("fredkin total interaction weight is eight") {
    CircuitIR c = test_util::parse_file("data/benchmarks/fredkin_n3.qasm");
    CHECK(interaction_graph(c).total_weight() == 8);
}

TEST_CASE("interaction weight equals the cx count on random circuits") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        CircuitIR c = test_util::random_circuit(5, 40, rng);
        CHECK(interaction_graph(c).total_weight() == static_cast<int>(c.cx_count()));
    }
}

TEST_CASE("validate rejects bad operands") {
    CircuitIR c;
    c.n_qubits = 2;
    GateOp g;
    g.kind = GateKind::Cx;
    g.qubits = {0, 0};
    c.gates.push_back(g);
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.gates[0].qubits = {0, 5};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_SUITE_END();
