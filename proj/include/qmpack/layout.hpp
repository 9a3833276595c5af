#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmpack/circuit.hpp"
#include "qmpack/hardware.hpp"

namespace qmpack {

/// Total injective mapping program qubit -> physical qubit for one circuit.
struct LayoutMap {
    std::map<int, int> to_physical;

    int at(int program_qubit) const;
    std::vector<int> image() const;  // sorted physical qubits
};

struct LayoutOptions {
    /// Algorithm keeps the strict component-size test (component > circuit);
    /// set to admit exact fits (component >= circuit).
    bool allow_exact_fit = false;
};

/// Greedy reliability-driven placement of one circuit on the available
/// qubits: seeds the heaviest interaction edge on the most reliable edge of a
/// large-enough component (size >= circuit), then grows qubit by qubit along
/// the best connecting hardware edge. Returns nullopt when there is no room.
std::optional<LayoutMap> allocate_one(const InteractionGraph& g, const HardwareState& s,
                                      const ReliabilityGraph& r);

struct PlacedMember {
    int queue_index = -1;
    std::string name;
    LayoutMap layout;
};

struct RoundPlan {
    std::vector<PlacedMember> members;
};

struct LeftoverRecord {
    int queue_index = -1;
    std::string name;
    std::string reason;
};

/// Ordered concurrent-execution rounds plus circuits that can never place.
struct BatchPlan {
    std::string device;
    int buffer = 0;
    bool allow_exact_fit = false;
    std::vector<RoundPlan> rounds;
    std::vector<LeftoverRecord> leftover;

    std::size_t placed_count() const;
};

/// Packs the queue into rounds: sorts by cx depth (descending), places
/// greedily while a large-enough component remains, excludes a buffer of d
/// hops around every placed circuit, and opens a fresh round when the device
/// is exhausted.
BatchPlan physical_distance_layout(const std::vector<CircuitIR>& queue,
                                   const HardwareModel& h, int buffer,
                                   const LayoutOptions& opts = {});

}  // namespace qmpack
