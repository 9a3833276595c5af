#include <charconv>
#include <sstream>
#include <string>

#include "qmpack/qasm.hpp"

namespace qmpack::qasm {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_angle(const Angle& a) {
    if (!a.pi_rational) return format_double(a.value);
    std::ostringstream out;
    if (a.num == 1)
        out << "pi";
    else if (a.num == -1)
        out << "-pi";
    else
        out << a.num << "*pi";
    if (a.den != 1) out << '/' << a.den;
    return out.str();
}

}  // namespace

SourceProgram emit_qasm(const CircuitIR& c) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << c.n_qubits << "];\n";
    if (c.n_clbits > 0) out << "creg c[" << c.n_clbits << "];\n";
    for (const GateOp& g : c.gates) {
        if (g.kind == GateKind::Measure) {
            out << "measure q[" << g.qubits[0] << "] -> c[" << g.clbit << "];\n";
            continue;
        }
        out << gate_name(g.kind);
        if (!g.params.empty()) {
            out << '(';
            for (std::size_t i = 0; i < g.params.size(); ++i) {
                if (i) out << ',';
                out << format_angle(g.params[i]);
            }
            out << ')';
        }
        out << ' ';
        for (std::size_t i = 0; i < g.qubits.size(); ++i) {
            if (i) out << ',';
            out << "q[" << g.qubits[i] << ']';
        }
        out << ";\n";
    }
    SourceProgram src;
    src.text = out.str();
    src.origin = c.name.empty() ? "circuit" : c.name + ".qasm";
    return src;
}

}  // namespace qmpack::qasm
