#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

namespace qmpack {

/// Unordered physical-qubit pair, stored canonically (lo, hi).
struct QubitPair {
    int lo = 0;
    int hi = 0;

    static QubitPair make(int a, int b) { return a < b ? QubitPair{a, b} : QubitPair{b, a}; }

    bool operator<(const QubitPair& o) const {
        return lo != o.lo ? lo < o.lo : hi < o.hi;
    }
    bool operator==(const QubitPair& o) const { return lo == o.lo && hi == o.hi; }

    std::string label() const { return std::to_string(lo) + "-" + std::to_string(hi); }
};

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

struct GateDurations {
    int one_qubit_dt = 36;
    int cx_dt = 160;
    int measure_dt = 1200;
};

struct HardwareModel {
    std::string name;
    int n_qubits = 0;
    std::vector<QubitPair> coupling;  // canonical, sorted, unique
    std::map<QubitPair, double> cx_error;
    std::vector<double> sq_error;       // per qubit, defaults 0
    std::vector<double> readout_error;  // per qubit, defaults 0
    GateDurations durations;

    /// Validates invariants and builds adjacency plus all-pairs hop counts.
    void finalize();

    bool has_edge(int a, int b) const;
    const std::vector<int>& neighbors(int q) const { return adjacency_[static_cast<std::size_t>(q)]; }

    /// Shortest-path edge count in the coupling graph; kUnreachable when the
    /// qubits are in different components.
    int hop_distance(int a, int b) const;

    /// Minimum hop distance between any endpoint of `a` and any endpoint of `b`.
    int pair_distance(const QubitPair& a, const QubitPair& b) const;

private:
    std::vector<std::vector<int>> adjacency_;
    std::vector<int> hops_;  // n*n matrix
};

/// Loads the calibration document (JSON text). Unknown top-level fields are
/// rejected. Throws std::runtime_error with a descriptive message on any
/// malformed content.
HardwareModel load_calibration(const std::string& json_text, const std::string& origin);
HardwareModel load_calibration_file(const std::string& path);

struct ReliabilityGraph {
    std::map<QubitPair, double> reliability;  // r = 1 - eps, exactly

    double at(const QubitPair& e) const;
};

ReliabilityGraph reliability_graph(const HardwareModel& h);

/// Subset of still-available physical qubits over a parent model.
struct HardwareState {
    const HardwareModel* model = nullptr;
    std::vector<bool> available;

    static HardwareState full(const HardwareModel& h);

    bool is_available(int q) const { return available[static_cast<std::size_t>(q)]; }
    int available_count() const;
};

/// Maximal connected sets of the induced available subgraph, each sorted,
/// ordered by smallest member.
std::vector<std::vector<int>> connected_components(const HardwareState& s);

/// Removes `used` plus every available qubit within hop distance d of any
/// used qubit. Distance is measured on the full device graph.
HardwareState remove_with_buffer(const HardwareState& s, const std::vector<int>& used, int d);

}  // namespace qmpack
