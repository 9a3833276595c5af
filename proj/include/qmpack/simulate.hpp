#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qmpack/compose.hpp"
#include "qmpack/hardware.hpp"
#include "qmpack/layout.hpp"

namespace qmpack {

/// Deterministic stream derivation for seeded runs.
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts);

/// Stochastic-Pauli noise parameters. Crosstalk scales a cx error by
/// gamma^k, k counting concurrent nearby cx gates of other members.
struct NoiseModel {
    std::map<QubitPair, double> cx_error;
    std::vector<double> sq_error;
    std::vector<double> readout_error;
    double gamma = 1.0;
    int hop_threshold = 1;
    double idle_rate = 0.0;  // idle depolarizing rate per dt

    static NoiseModel from_hardware(const HardwareModel& h);
    static NoiseModel noiseless(const HardwareModel& h);

    void set_uniform_cx_error(double eps);
    double cx_eps(const QubitPair& e) const;
    /// eps * gamma^k clamped to [0, 1]
    double effective_cx_error(const QubitPair& e, int k) const;
};

struct IdealOutputs {
    /// Aggregated outcome probabilities above 1e-9, highest first (ties by
    /// string).
    std::vector<std::pair<std::string, double>> outcomes;
    /// Minimal set of highest-probability strings covering >= 99% of the
    /// ideal mass; these count as correct for PST.
    std::vector<std::string> correct;
};

/// Exact statevector simulation of one member circuit. Measurements must be
/// terminal per qubit. Throws when the circuit exceeds max_qubits.
IdealOutputs ideal_outputs(const CircuitIR& c, int max_qubits = 14);

struct MemberCounts {
    std::map<std::string, std::int64_t> counts;
    std::int64_t shots = 0;
};

struct ShotCounts {
    std::vector<MemberCounts> members;
};

struct SimOptions {
    int max_qubits = 14;
};

/// Monte-Carlo simulation of a composed round: every member evolves in its
/// own statevector; coupling between members enters only through the
/// crosstalk scaling of cx error rates on overlapping nearby gates.
ShotCounts simulate_round(const ComposedRound& cr, const HardwareModel& h,
                          const NoiseModel& nm, std::int64_t shots, std::uint64_t seed,
                          const SimOptions& opts = {});

/// PST = counted shots on correct strings / total shots.
double pst(const MemberCounts& counts, const std::vector<std::string>& correct);

struct MemberResult {
    int round = -1;
    int slot = -1;
    int queue_index = -1;
    std::string name;
    bool skipped = false;
    std::string skip_reason;
    double pst_value = 0.0;
    std::vector<std::string> correct;
    MemberCounts counts;
};

struct SimReport {
    std::uint64_t seed = 0;
    std::int64_t shots = 0;
    double gamma = 1.0;
    int hop_threshold = 1;
    double idle_rate = 0.0;
    std::vector<MemberResult> members;

    double mean_pst() const;
};

/// Simulates every round of a plan; members above the statevector bound are
/// reported as skipped (their gates still contribute crosstalk pressure).
SimReport simulate_plan(const std::vector<CircuitIR>& queue, const BatchPlan& plan,
                        const HardwareModel& h, const NoiseModel& nm, std::int64_t shots,
                        std::uint64_t seed, const SimOptions& opts = {});

}  // namespace qmpack
