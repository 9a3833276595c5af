#pragma once

#include <string>
#include <vector>

#include "qmpack/circuit.hpp"

namespace qmpack::qasm {

struct SourceProgram {
    std::string text;
    std::string origin;  // file path or inline label
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string message;
    int line = 1;
    int column = 1;
};

/// "origin:line:col: severity: message"
std::string format_diagnostic(const Diagnostic& d, const std::string& origin);

struct ParseResult {
    bool ok = false;
    CircuitIR circuit;
    std::vector<Diagnostic> diagnostics;
};

/// Parses the supported OpenQASM 2.0 subset. ccx and swap are lowered to the
/// one/two-qubit basis at parse time. On any error the circuit is empty and
/// ok is false; diagnostics carry positions.
ParseResult parse_qasm(const SourceProgram& src);

/// Round-trippable text: parse_qasm(emit_qasm(c)) is structurally equal to c.
SourceProgram emit_qasm(const CircuitIR& c);

}  // namespace qmpack::qasm
