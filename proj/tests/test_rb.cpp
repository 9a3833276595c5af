#include <cmath>
#include <random>

#include "doctest.h"
#include "qmpack/clifford.hpp"
#include "qmpack/rb.hpp"
#include "test_util.hpp"

using namespace qmpack;

TEST_SUITE_BEGIN("rb");

TEST_CASE("rb circuits invert to all zeros") {
    for (int n : {1, 2}) {
        for (int m : {1, 4, 9}) {
            CircuitIR c = gen_rb_circuit(n, m, 1234 + m);
            IdealOutputs out = ideal_outputs(c);
            REQUIRE(out.outcomes.size() == 1);
            CHECK(out.outcomes[0].first == std::string(static_cast<std::size_t>(n), '0'));
            CHECK(out.outcomes[0].second == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("fit recovers exact synthetic decay parameters") {
    std::vector<double> lengths, survival;
    for (int m : {1, 2, 4, 8, 16, 32, 64, 128}) {
        lengths.push_back(m);
        survival.push_back(0.75 * std::pow(0.95, m) + 0.25);
    }
    DecayFit fit = fit_decay(lengths, survival);
    CHECK(fit.ok);
    CHECK(std::abs(fit.alpha - 0.95) < 0.005);
    CHECK(std::abs(fit.amplitude - 0.75) < 0.02);
    CHECK(std::abs(fit.baseline - 0.25) < 0.02);
}

TEST_CASE("flat survival fits as no decay, rising survival is flagged") {
    std::vector<double> lengths{1, 2, 4, 8};
    DecayFit flat = fit_decay(lengths, {1.0, 1.0, 1.0, 1.0});
    CHECK(flat.ok);
    CHECK(flat.alpha == doctest::Approx(1.0));

    DecayFit rising = fit_decay(lengths, {0.3, 0.5, 0.7, 0.9});
    CHECK_FALSE(rising.ok);
}

TEST_CASE("noiseless rb fits alpha near one") {
    HardwareModel h = test_util::line_device(4, 0.0);
    RBConfig cfg;
    cfg.lengths = {1, 2, 4, 8};
    cfg.samples = 2;
    cfg.shots = 256;
    cfg.seed = 5;
    NoiseModel nm = NoiseModel::noiseless(h);
    auto results = run_rb({{{0, 1}}}, false, cfg, nm, h);
    REQUIRE(results.size() == 1);
    CHECK(std::abs(results[0].fit.alpha - 1.0) < 1e-3);
    CHECK(std::abs(results[0].error_per_clifford) < 1e-3);
}

TEST_CASE("injected cx error is recovered through the decay") {
    const double p = 0.02;
    HardwareModel h = test_util::line_device(4, p);
    RBConfig cfg;
    cfg.lengths = {1, 2, 4, 8, 16, 32, 64};
    cfg.samples = 6;
    cfg.shots = 2048;
    cfg.seed = 11;
    NoiseModel nm = NoiseModel::from_hardware(h);
    auto results = run_rb({{{0, 1}}}, false, cfg, nm, h);
    REQUIRE(results.size() == 1);
    REQUIRE(results[0].fit.ok);

    const CliffordGroup& group = CliffordGroup::instance(2);
    double depol_per_cx = 1.0 - 16.0 * p / 15.0;
    double predicted_alpha = group.mean_decay_factor(depol_per_cx);
    CHECK(std::abs(results[0].fit.alpha - predicted_alpha) / (1.0 - predicted_alpha) < 0.15);

    // invert the fitted alpha back to a per-cx error estimate
    double alpha_hat = results[0].fit.alpha;
    double per_cx = std::pow(alpha_hat, 1.0 / group.average_cx_count());
    double p_hat = (1.0 - per_cx) * 15.0 / 16.0;
    CHECK(std::abs(p_hat - p) / p < 0.15);
}

TEST_CASE("survival at one length matches the twirled-channel prediction") {
    const double p = 0.01;
    const int m = 16;
    HardwareModel h = test_util::line_device(4, p);
    NoiseModel nm = NoiseModel::from_hardware(h);
    const CliffordGroup& group = CliffordGroup::instance(2);
    double abar = group.mean_decay_factor(1.0 - 16.0 * p / 15.0);
    double predicted = 0.25 + 0.75 * std::pow(abar, m + 1);

    LayoutMap layout;
    layout.to_physical = {{0, 0}, {1, 1}};
    double total = 0.0;
    const int samples = 24;
    const std::int64_t shots = 2048;
    for (int s = 0; s < samples; ++s) {
        CircuitIR c = gen_rb_circuit(2, m, 900 + s);
        ComposedRound round = compose_members({c}, {layout}, h, true);
        ShotCounts counts = simulate_round(round, h, nm, shots, 7000 + s);
        total += pst(counts.members[0], {"00"});
    }
    double mean = total / samples;
    double sigma = std::sqrt(predicted * (1 - predicted) / (samples * shots));
    // sequence-to-sequence spread dominates the shot noise; allow a wide band
    CHECK(std::abs(mean - predicted) < std::max(6 * sigma, 0.02));
}

TEST_CASE("simultaneous rb on adjacent pairs raises the error rate") {
    HardwareModel h = test_util::line_device(4, 0.01);
    RBConfig cfg;
    cfg.lengths = {1, 2, 4, 8, 16, 32};
    cfg.samples = 5;
    cfg.shots = 2048;
    cfg.seed = 23;
    NoiseModel nm = NoiseModel::from_hardware(h);
    nm.gamma = 3.0;
    std::vector<RBTarget> targets{{{0, 1}}, {{2, 3}}};
    auto isolated = run_rb(targets, false, cfg, nm, h);
    auto simultaneous = run_rb(targets, true, cfg, nm, h);
    for (std::size_t i = 0; i < targets.size(); ++i) {
        CAPTURE(i);
        CHECK(simultaneous[i].error_per_clifford > isolated[i].error_per_clifford);
    }
}

TEST_CASE("distant pairs see no simultaneous penalty") {
    HardwareModel h = test_util::line_device(8, 0.01);
    RBConfig cfg;
    cfg.lengths = {1, 2, 4, 8, 16, 32};
    cfg.samples = 8;
    cfg.shots = 4096;
    cfg.seed = 31;
    NoiseModel nm = NoiseModel::from_hardware(h);
    nm.gamma = 3.0;  // hop threshold 1; pairs sit 3 hops apart
    std::vector<RBTarget> targets{{{0, 1}}, {{4, 5}}};
    auto isolated = run_rb(targets, false, cfg, nm, h);
    auto simultaneous = run_rb(targets, true, cfg, nm, h);
    for (std::size_t i = 0; i < targets.size(); ++i) {
        // any residual difference is fit noise, far below the ~2x shift the
        // gamma = 3 coupling produces on adjacent pairs
        double rel = std::abs(simultaneous[i].error_per_clifford -
                              isolated[i].error_per_clifford) /
                     isolated[i].error_per_clifford;
        CAPTURE(i);
        CHECK(rel < 0.3);
    }
}

TEST_CASE("crosstalk presence arithmetic") {
    auto report = crosstalk_presence_from_eps({"0-1", "2-3"}, {0.01, 0.01}, {0.01, 0.03});
    CHECK(report.cv_rb == doctest::Approx(0.0));
    CHECK(report.mu_simrb == doctest::Approx(0.02));
    CHECK(report.sigma_simrb == doctest::Approx(0.01));
    CHECK(report.cv_simrb == doctest::Approx(0.5));
    CHECK(report.ct == doctest::Approx(0.5));

    auto zero = crosstalk_presence_from_eps({"a", "b"}, {0.02, 0.02}, {0.02, 0.02});
    CHECK(zero.ct == doctest::Approx(0.0));

    CHECK_THROWS_AS(crosstalk_presence_from_eps({"a"}, {0.0}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(crosstalk_presence_from_eps({}, {}, {}), std::invalid_argument);
}

TEST_CASE("cv is invariant under scaling of all error rates") {
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> eps(0.001, 0.1);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::string> names;
        std::vector<double> iso, sim;
        int n = 3 + static_cast<int>(rng() % 5);
        for (int i = 0; i < n; ++i) {
            names.push_back("t" + std::to_string(i));
            iso.push_back(eps(rng));
            sim.push_back(eps(rng));
        }
        auto base = crosstalk_presence_from_eps(names, iso, sim);
        double c = 0.1 + 5.0 * (static_cast<double>(rng() % 1000) / 1000.0);
        std::vector<double> iso_scaled = iso, sim_scaled = sim;
        for (double& v : iso_scaled) v *= c;
        for (double& v : sim_scaled) v *= c;
        auto scaled = crosstalk_presence_from_eps(names, iso_scaled, sim_scaled);
        CHECK(scaled.cv_rb == doctest::Approx(base.cv_rb).epsilon(1e-9));
        CHECK(scaled.cv_simrb == doctest::Approx(base.cv_simrb).epsilon(1e-9));
        CHECK(scaled.ct == doctest::Approx(base.ct).epsilon(1e-9));
    }
}

TEST_CASE("gain follows the buffered-minus-dense convention") {
    std::map<int, std::vector<double>> psts;
    psts[0] = {0.60, 0.60};
    psts[2] = {0.68};
    psts[3] = {0.66};
    CHECK(gain(psts) == doctest::Approx(0.08));

    std::map<int, std::vector<double>> equal;
    equal[0] = {0.5};
    equal[2] = {0.5};
    CHECK(gain(equal) == doctest::Approx(0.0));

    std::map<int, std::vector<double>> missing_base;
    missing_base[2] = {0.5};
    CHECK_THROWS_AS(gain(missing_base), std::invalid_argument);
    std::map<int, std::vector<double>> missing_buffered;
    missing_buffered[0] = {0.5};
    missing_buffered[1] = {0.6};
    CHECK_THROWS_AS(gain(missing_buffered), std::invalid_argument);
}

TEST_CASE("rb rejects overlapping targets and bad configs") {
    HardwareModel h = test_util::line_device(4, 0.01);
    RBConfig cfg;
    cfg.lengths = {1, 2, 4};
    NoiseModel nm = NoiseModel::from_hardware(h);
    CHECK_THROWS_AS(run_rb({{{0, 1}}, {{1, 2}}}, false, cfg, nm, h), std::invalid_argument);
    RBConfig bad;
    bad.lengths = {1, 2};
    CHECK_THROWS_AS(run_rb({{{0, 1}}}, false, bad, nm, h), std::invalid_argument);
}

TEST_SUITE_END();
