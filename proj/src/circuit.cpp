#include "qmpack/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qmpack {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

const char* gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::U1: return "u1";
        case GateKind::U2: return "u2";
        case GateKind::U3: return "u3";
        case GateKind::Rz: return "rz";
        case GateKind::Sx: return "sx";
        case GateKind::X: return "x";
        case GateKind::H: return "h";
        case GateKind::T: return "t";
        case GateKind::Tdg: return "tdg";
        case GateKind::S: return "s";
        case GateKind::Sdg: return "sdg";
        case GateKind::Cx: return "cx";
        case GateKind::Barrier: return "barrier";
        case GateKind::Measure: return "measure";
    }
    return "?";
}

int gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::Cx: return 2;
        case GateKind::Barrier: return -1;
        default: return 1;
    }
}

int gate_param_count(GateKind kind) {
    switch (kind) {
        case GateKind::U1:
        case GateKind::Rz: return 1;
        case GateKind::U2: return 2;
        case GateKind::U3: return 3;
        default: return 0;
    }
}

Angle Angle::pi_multiple(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("Angle: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    Angle a;
    a.pi_rational = true;
    a.num = num;
    a.den = den;
    a.value = static_cast<double>(num) / static_cast<double>(den) * kPi;
    return a;
}

Angle Angle::literal(double v) {
    Angle a;
    a.value = v;
    return a;
}

bool Angle::operator==(const Angle& other) const {
    if (pi_rational != other.pi_rational) return false;
    if (pi_rational) return num == other.num && den == other.den;
    return value == other.value;
}

bool GateOp::operator==(const GateOp& other) const {
    return kind == other.kind && qubits == other.qubits && params == other.params &&
           clbit == other.clbit;
}

void CircuitIR::validate() const {
    for (const GateOp& g : gates) {
        for (int q : g.qubits) {
            if (q < 0 || q >= n_qubits)
                throw std::invalid_argument("gate operand out of range");
        }
        std::vector<int> sorted = g.qubits;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("gate repeats a qubit operand");
        int arity = gate_arity(g.kind);
        if (arity >= 0 && static_cast<int>(g.qubits.size()) != arity)
            throw std::invalid_argument("gate operand count mismatch");
        if (static_cast<int>(g.params.size()) != gate_param_count(g.kind))
            throw std::invalid_argument("gate parameter count mismatch");
        if (g.kind == GateKind::Measure) {
            if (g.clbit < 0 || g.clbit >= n_clbits)
                throw std::invalid_argument("measure target out of range");
        }
    }
}

std::size_t CircuitIR::cx_count() const {
    return static_cast<std::size_t>(
        std::count_if(gates.begin(), gates.end(),
                      [](const GateOp& g) { return g.kind == GateKind::Cx; }));
}

std::size_t CircuitIR::operation_count() const {
    return static_cast<std::size_t>(
        std::count_if(gates.begin(), gates.end(),
                      [](const GateOp& g) { return g.kind != GateKind::Barrier; }));
}

std::size_t CircuitIR::logic_gate_count() const {
    return static_cast<std::size_t>(std::count_if(
        gates.begin(), gates.end(), [](const GateOp& g) {
            return g.kind != GateKind::Barrier && g.kind != GateKind::Measure;
        }));
}

bool CircuitIR::structurally_equal(const CircuitIR& other) const {
    return n_qubits == other.n_qubits && n_clbits == other.n_clbits &&
           gates == other.gates;
}

CircuitDag build_dag(const CircuitIR& c) {
    CircuitDag dag;
    dag.succ.assign(c.gates.size(), {});
    dag.pred.assign(c.gates.size(), {});
    // last gate seen per qubit / per classical bit
    std::vector<int> last_q(c.n_qubits, -1);
    std::vector<int> last_c(c.n_clbits, -1);
    auto link = [&dag](int from, int to) {
        auto& s = dag.succ[from];
        if (std::find(s.begin(), s.end(), to) == s.end()) {
            s.push_back(to);
            dag.pred[to].push_back(from);
        }
    };
    for (int i = 0; i < static_cast<int>(c.gates.size()); ++i) {
        const GateOp& g = c.gates[i];
        for (int q : g.qubits) {
            if (last_q[q] >= 0) link(last_q[q], i);
            last_q[q] = i;
        }
        if (g.kind == GateKind::Measure && g.clbit >= 0) {
            if (last_c[g.clbit] >= 0) link(last_c[g.clbit], i);
            last_c[g.clbit] = i;
        }
    }
    return dag;
}

namespace {

int longest_path(const CircuitIR& c, bool cx_only) {
    CircuitDag dag = build_dag(c);
    std::vector<int> depth(c.gates.size(), 0);
    int best = 0;
    for (int i = 0; i < static_cast<int>(c.gates.size()); ++i) {
        int in = 0;
        for (int p : dag.pred[i]) in = std::max(in, depth[p]);
        int weight;
        if (cx_only)
            weight = c.gates[i].kind == GateKind::Cx ? 1 : 0;
        else
            weight = c.gates[i].kind == GateKind::Barrier ? 0 : 1;
        depth[i] = in + weight;
        best = std::max(best, depth[i]);
    }
    return best;
}

}  // namespace

int cx_depth(const CircuitIR& c) { return longest_path(c, true); }

int logic_depth(const CircuitIR& c) { return longest_path(c, false); }

InteractionGraph interaction_graph(const CircuitIR& c) {
    InteractionGraph g;
    g.n_qubits = c.n_qubits;
    for (const GateOp& op : c.gates) {
        if (op.kind != GateKind::Cx) continue;
        int a = op.qubits[0], b = op.qubits[1];
        if (a > b) std::swap(a, b);
        g.weights[{a, b}] += 1;
    }
    return g;
}

int InteractionGraph::total_weight() const {
    int total = 0;
    for (const auto& [edge, w] : weights) total += w;
    return total;
}

int InteractionGraph::node_degree_weight(int q) const {
    int total = 0;
    for (const auto& [edge, w] : weights)
        if (edge.first == q || edge.second == q) total += w;
    return total;
}

}  // namespace qmpack
