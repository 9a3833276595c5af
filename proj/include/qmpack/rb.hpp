#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qmpack/circuit.hpp"
#include "qmpack/hardware.hpp"
#include "qmpack/simulate.hpp"

namespace qmpack {

struct RBTarget {
    std::vector<int> qubits;  // 1 or 2 physical qubits

    std::string label() const;
};

struct RBConfig {
    std::vector<int> lengths = {1, 2, 4, 8, 16, 32};
    int samples = 3;
    std::int64_t shots = 1024;
    std::uint64_t seed = 0;

    void validate() const;  // >= 3 distinct lengths, samples >= 1
};

/// Exponential decay model P(m) = A * alpha^m + B.
struct DecayFit {
    double amplitude = 0.0;
    double alpha = 1.0;
    double baseline = 0.0;
    double residual = 0.0;
    bool ok = false;
};

/// Damped least squares with log-linear initialization; survivals that do not
/// decrease come back flagged (ok = false) instead of throwing.
DecayFit fit_decay(const std::vector<double>& lengths, const std::vector<double>& survival);

struct RBResult {
    RBTarget target;
    std::vector<int> lengths;
    std::vector<double> survival_mean;               // per length
    std::vector<std::vector<double>> survival_samples;  // [length][sample]
    DecayFit fit;
    double error_per_clifford = 0.0;  // (2^n - 1)/2^n * (1 - alpha)
};

/// m uniformly random Cliffords followed by the composed inverse, with a
/// barrier after every layer; noiseless output is all zeros.
CircuitIR gen_rb_circuit(int n_qubits, int length, std::uint64_t seed);

/// Runs RB on each target. With `simultaneous` set, equal-length sequences of
/// all targets are composed into shared rounds with layer-aligned barriers so
/// that crosstalk coupling applies.
std::vector<RBResult> run_rb(const std::vector<RBTarget>& targets, bool simultaneous,
                             const RBConfig& cfg, const NoiseModel& nm,
                             const HardwareModel& h);

struct CharacterizationReport {
    std::vector<std::string> targets;
    std::vector<double> isolated_eps;
    std::vector<double> simultaneous_eps;
    double mu_rb = 0.0, sigma_rb = 0.0, cv_rb = 0.0;
    double mu_simrb = 0.0, sigma_simrb = 0.0, cv_simrb = 0.0;
    double ct = 0.0;  // cv_simrb - cv_rb
};

CharacterizationReport crosstalk_presence(const std::vector<RBResult>& isolated,
                                          const std::vector<RBResult>& simultaneous);

/// Same statistics from raw error-rate lists (targets must align).
CharacterizationReport crosstalk_presence_from_eps(const std::vector<std::string>& targets,
                                                   const std::vector<double>& isolated,
                                                   const std::vector<double>& simultaneous);

/// Mean-PST gain of the best buffered layout (d in {2, 3}) over the dense
/// d = 0 layout. The map must contain d = 0 and at least one of d in {2, 3}.
double gain(const std::map<int, std::vector<double>>& pst_by_buffer);

}  // namespace qmpack
