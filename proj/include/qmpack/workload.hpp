#pragma once

#include <string>
#include <vector>

#include "qmpack/circuit.hpp"

namespace qmpack {

struct LoadedQueue {
    std::vector<CircuitIR> circuits;
    std::vector<std::string> sources;  // one path per queue entry
};

/// Loads circuits from files and directories (directories expand to their
/// *.qasm files, sorted by name). A `benchmarks.json` sitting next to a
/// loaded file pins its expected qubit/gate/cx counts; mismatches are load
/// errors. queue_size > 0 cycles the loaded list up to that many entries.
/// Throws std::runtime_error with formatted diagnostics on any failure.
LoadedQueue load_circuit_queue(const std::vector<std::string>& paths, int queue_size = 0);

}  // namespace qmpack
