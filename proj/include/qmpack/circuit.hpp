#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qmpack {

enum class GateKind {
    U1,
    U2,
    U3,
    Rz,
    Sx,
    X,
    H,
    T,
    Tdg,
    S,
    Sdg,
    Cx,
    Barrier,
    Measure,
};

const char* gate_name(GateKind kind);

/// Number of qubit operands (-1 for barrier, which takes any number).
int gate_arity(GateKind kind);

/// Number of angle parameters (u1/rz: 1, u2: 2, u3: 3, others: 0).
int gate_param_count(GateKind kind);

/// Gate angle. Angles written as rational multiples of pi keep the exact
/// rational so text round-trips are stable; everything else is a plain double.
struct Angle {
    bool pi_rational = false;
    std::int64_t num = 0;
    std::int64_t den = 1;
    double value = 0.0;

    static Angle pi_multiple(std::int64_t num, std::int64_t den);
    static Angle literal(double v);

    bool operator==(const Angle& other) const;
};

struct GateOp {
    GateKind kind = GateKind::X;
    std::vector<int> qubits;
    std::vector<Angle> params;
    int clbit = -1;  // measure target

    bool operator==(const GateOp& other) const;
};

struct CircuitIR {
    int n_qubits = 0;
    int n_clbits = 0;
    std::string name;
    std::vector<GateOp> gates;

    /// Throws std::invalid_argument when an operand index is out of range or
    /// a gate lists the same qubit twice.
    void validate() const;

    std::size_t cx_count() const;
    /// Non-barrier operations, measurements included.
    std::size_t operation_count() const;
    /// Non-barrier, non-measure gates (the usual benchmark gate count).
    std::size_t logic_gate_count() const;

    bool structurally_equal(const CircuitIR& other) const;
};

/// Gate dependency DAG: node per gate, edge to the next gate that shares an
/// operand (qubit or classical bit). Gate-list order is a topological order.
struct CircuitDag {
    std::vector<std::vector<int>> succ;
    std::vector<std::vector<int>> pred;

    std::size_t node_count() const { return succ.size(); }
};

CircuitDag build_dag(const CircuitIR& c);

/// Longest dependency-path length counting only cx nodes.
int cx_depth(const CircuitIR& c);

/// Longest path in gate units (barriers count 0) — scheduling oracle helper.
int logic_depth(const CircuitIR& c);

/// Undirected qubit-interaction graph; edge weight = cx count on that pair.
struct InteractionGraph {
    int n_qubits = 0;
    std::map<std::pair<int, int>, int> weights;  // key (lo, hi)

    int total_weight() const;
    int node_degree_weight(int q) const;
};

InteractionGraph interaction_graph(const CircuitIR& c);

}  // namespace qmpack
