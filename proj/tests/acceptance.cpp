// Acceptance suite: one check per release criterion, each printed as a
// single PASS/FAIL line. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "layout_oracle.hpp"
#include "qmpack/clifford.hpp"
#include "qmpack/compose.hpp"
#include "qmpack/layout.hpp"
#include "qmpack/qasm.hpp"
#include "qmpack/rb.hpp"
#include "qmpack/report.hpp"
#include "qmpack/simulate.hpp"
#include "qmpack/workload.hpp"
#include "test_util.hpp"

using namespace qmpack;
namespace fs = std::filesystem;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void report(int number, bool pass, const std::string& text, double seconds) {
    std::printf("[%s] criterion %2d: %s (%.1f s)\n", pass ? "PASS" : "FAIL", number,
                text.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
}

double mean_of(const std::vector<double>& values) {
    double sum = std::accumulate(values.begin(), values.end(), 0.0);
    return sum / static_cast<double>(values.size());
}

// ---------------------------------------------------------------- workloads

/// Serial 3-qubit cx chains with controlled (a-b | b-c) patterns; identical
/// gate skeletons keep every member's cx windows aligned.
std::vector<CircuitIR> patterned_chains(int n_cx,
                                        const std::vector<std::vector<int>>& bc_positions) {
    std::vector<std::vector<int>> patterns(bc_positions.size(),
                                           std::vector<int>(static_cast<std::size_t>(n_cx), 0));
    for (std::size_t j = 0; j < bc_positions.size(); ++j)
        for (int i : bc_positions[j]) patterns[j][static_cast<std::size_t>(i)] = 1;
    std::vector<CircuitIR> queue;
    for (std::size_t j = 0; j < patterns.size(); ++j) {
        std::vector<int> p(patterns[j].begin(), patterns[j].end());
        queue.push_back(test_util::cx_chain_circuit(p, "chain" + std::to_string(j)));
    }
    return queue;
}

/// Mean member PST over seeds for one buffer value.
std::vector<double> member_mean_psts(const std::vector<CircuitIR>& queue,
                                     const HardwareModel& h, int buffer, double gamma,
                                     const std::vector<std::uint64_t>& seeds,
                                     std::int64_t shots) {
    BatchPlan plan = physical_distance_layout(queue, h, buffer);
    NoiseModel nm = NoiseModel::from_hardware(h);
    nm.gamma = gamma;
    nm.hop_threshold = 1;
    std::vector<double> mean(queue.size(), 0.0);
    for (std::uint64_t seed : seeds) {
        SimReport rep = simulate_plan(queue, plan, h, nm, shots, seed);
        for (const MemberResult& m : rep.members)
            mean[static_cast<std::size_t>(m.queue_index)] +=
                m.pst_value / static_cast<double>(seeds.size());
    }
    return mean;
}

// ---------------------------------------------------------------- criteria

void criterion_1_noiseless() {
    Timer timer;
    HardwareModel h =
        load_calibration_file(test_util::repo_path("data/devices/falcon27.json"));
    LoadedQueue loaded =
        load_circuit_queue({test_util::repo_path("data/benchmarks")}, 0);
    NoiseModel nm = NoiseModel::noiseless(h);
    int exact = 0;
    for (const CircuitIR& circuit : loaded.circuits) {
        LayoutMap layout;
        for (int q = 0; q < circuit.n_qubits; ++q) layout.to_physical[q] = q;
        ComposedRound round = compose_members({circuit}, {layout}, h, false);
        ShotCounts counts = simulate_round(round, h, nm, 8192, 2026);
        IdealOutputs ideal = ideal_outputs(circuit);
        if (pst(counts.members[0], ideal.correct) == 1.0) ++exact;
    }
    bool pass = exact == static_cast<int>(loaded.circuits.size()) && timer.seconds() < 10.0;
    report(1, pass,
           "noiseless benchmarks reach PST 1.000 exactly (" + std::to_string(exact) + "/" +
               std::to_string(loaded.circuits.size()) + ")",
           timer.seconds());
}

void criterion_2_parser_audit() {
    Timer timer;
    struct Row {
        const char* file;
        int qubits, gates, cx;
    };
    const Row rows[] = {
        {"deutsch_n2.qasm", 2, 5, 1},   {"grover_n2.qasm", 2, 16, 2},
        {"linearsolver_n3.qasm", 3, 19, 4}, {"toffoli_n3.qasm", 3, 18, 6},
        {"fredkin_n3.qasm", 3, 19, 8},  {"adder_n4.qasm", 4, 23, 10},
        {"error_correctiond3_n5.qasm", 5, 114, 49},
    };
    int good = 0;
    for (const Row& row : rows) {
        CircuitIR c = test_util::parse_file(std::string("data/benchmarks/") + row.file);
        if (c.n_qubits == row.qubits &&
            static_cast<int>(c.logic_gate_count()) == row.gates &&
            static_cast<int>(c.cx_count()) == row.cx)
            ++good;
        else
            std::printf("       %s: got qubits=%d gates=%zu cx=%zu\n", row.file, c.n_qubits,
                        c.logic_gate_count(), c.cx_count());
    }
    // the audited loader must also accept the whole set
    load_circuit_queue({test_util::repo_path("data/benchmarks")}, 0);
    report(2, good == 7,
           "vendored benchmarks parse to their recorded qubit/gate/cx counts (" +
               std::to_string(good) + "/7)",
           timer.seconds());
}

void criterion_3_layout_invariants() {
    Timer timer;
    std::mt19937_64 rng(20260810);
    int instances = 0;
    int violations = 0;
    while (instances < 1000) {
        HardwareModel h =
            test_util::random_device(8 + static_cast<int>(rng() % 20), rng, 0.18);
        int d = static_cast<int>(rng() % 4);
        std::vector<CircuitIR> queue;
        int n_circuits = 1 + static_cast<int>(rng() % 8);
        for (int i = 0; i < n_circuits; ++i) {
            int size = 1 + static_cast<int>(rng() % 5);
            queue.push_back(
                test_util::random_circuit(size, 3 + static_cast<int>(rng() % 12), rng, false));
            queue.back().name = "c" + std::to_string(i);
        }
        BatchPlan plan = physical_distance_layout(queue, h, d);
        ++instances;

        std::set<int> accounted;
        bool ok = true;
        for (const RoundPlan& round : plan.rounds) {
            std::set<int> image;
            std::size_t expected = 0;
            for (const PlacedMember& m : round.members) {
                if (!accounted.insert(m.queue_index).second) ok = false;
                expected += m.layout.to_physical.size();
                for (int q : m.layout.image()) image.insert(q);
            }
            if (image.size() != expected) ok = false;
            for (std::size_t a = 0; a < round.members.size() && ok; ++a)
                for (std::size_t b = a + 1; b < round.members.size() && ok; ++b)
                    for (int qa : round.members[a].layout.image())
                        for (int qb : round.members[b].layout.image()) {
                            int dist = h.hop_distance(qa, qb);
                            if (dist != kUnreachable && dist < d + 1) ok = false;
                        }
        }
        for (const LeftoverRecord& rec : plan.leftover)
            if (!accounted.insert(rec.queue_index).second) ok = false;
        if (accounted.size() != queue.size()) ok = false;
        if (!ok) ++violations;
    }
    bool pass = violations == 0 && timer.seconds() < 60.0;
    report(3, pass,
           "layout invariants hold on 1000 randomized instances (" +
               std::to_string(violations) + " violations)",
           timer.seconds());
}

void criterion_4_micro_optimality() {
    Timer timer;
    using Edge = std::pair<int, int>;
    struct Shape {
        int nodes;
        std::vector<Edge> edges;
    };
    const std::vector<Shape> circuit_shapes = {
        {2, {{0, 1}}},
        {3, {{0, 1}, {1, 2}}},
        {3, {{0, 1}, {1, 2}, {0, 2}}},
        {4, {{0, 1}, {1, 2}, {2, 3}}},
        {4, {{0, 1}, {0, 2}, {0, 3}}},
        {4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}},
        {4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}},
        {4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}}},
        {4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}, {1, 3}}},
    };
    auto device_shapes = [](int n) {
        std::vector<std::vector<Edge>> shapes;
        std::vector<Edge> path, ring, star, complete;
        for (int i = 0; i + 1 < n; ++i) path.push_back({i, i + 1});
        ring = path;
        ring.push_back({0, n - 1});
        for (int i = 1; i < n; ++i) star.push_back({0, i});
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) complete.push_back({a, b});
        shapes.push_back(path);
        shapes.push_back(ring);
        shapes.push_back(star);
        shapes.push_back(complete);
        return shapes;
    };

    std::mt19937_64 rng(404);
    std::uniform_real_distribution<double> eps_draw(0.005, 0.05);
    long total = 0, optimal = 0;
    std::string first_miss;
    for (const Shape& shape : circuit_shapes) {
        for (int weight_draw = 0; weight_draw < 3; ++weight_draw) {
            CircuitIR circuit;
            circuit.n_qubits = shape.nodes;
            circuit.name = "micro";
            for (const Edge& e : shape.edges) {
                int w = weight_draw == 0 ? 1 : 1 + static_cast<int>(rng() % 4);
                for (int i = 0; i < w; ++i) {
                    GateOp cx;
                    cx.kind = GateKind::Cx;
                    cx.qubits = {e.first, e.second};
                    circuit.gates.push_back(cx);
                }
            }
            InteractionGraph g = interaction_graph(circuit);
            for (int n_dev = 4; n_dev <= 6; ++n_dev) {
                if (shape.nodes > n_dev) continue;
                for (const auto& dev_shape : device_shapes(n_dev)) {
                    for (int rel_draw = 0; rel_draw < 3; ++rel_draw) {
                        HardwareModel h;
                        h.name = "micro" + std::to_string(n_dev);
                        h.n_qubits = n_dev;
                        for (const Edge& e : dev_shape) {
                            QubitPair pair = QubitPair::make(e.first, e.second);
                            h.coupling.push_back(pair);
                            h.cx_error[pair] = eps_draw(rng);
                        }
                        h.finalize();
                        HardwareState s = HardwareState::full(h);
                        ReliabilityGraph r = reliability_graph(h);
                        auto best = test_util::brute_force_best_score(g, s, r);
                        if (!best) continue;  // no embedding with positive score
                        ++total;
                        auto layout = allocate_one(g, s, r);
                        double got =
                            layout ? test_util::placement_score(g, layout->to_physical, h, r)
                                   : 0.0;
                        if (std::abs(got - *best) <= 1e-12 * *best) {
                            ++optimal;
                        } else if (first_miss.empty()) {
                            char buf[160];
                            std::snprintf(buf, sizeof(buf),
                                          "first miss: %d-qubit circuit on %d-qubit device, "
                                          "greedy %.6f vs optimum %.6f",
                                          shape.nodes, n_dev, got, *best);
                            first_miss = buf;
                        }
                    }
                }
            }
        }
    }
    bool pass = optimal == total;
    std::string text = "allocate_one matches the exhaustive max-reliability product on " +
                       std::to_string(optimal) + "/" + std::to_string(total) +
                       " micro instances";
    if (!pass && !first_miss.empty()) text += "; " + first_miss;
    report(4, pass, text, timer.seconds());
}

void criterion_5_buffer_depth_trend() {
    Timer timer;
    HardwareModel h = test_util::ring_device(16, 0.01);
    const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    const std::int64_t shots = 8192;

    // 30-cx members: six to nine exposed windows each at d = 0
    std::vector<CircuitIR> deep = patterned_chains(
        30, {{0, 2, 4, 6, 8, 10}, {12, 14, 16}, {18, 20, 22}, {13, 15, 17, 19, 21, 23}, {}});
    std::vector<double> deep_d0 = member_mean_psts(deep, h, 0, 3.0, seeds, shots);
    std::vector<double> deep_d1 = member_mean_psts(deep, h, 1, 3.0, seeds, shots);
    std::vector<double> deep_d2 = member_mean_psts(deep, h, 2, 3.0, seeds, shots);

    // 10-cx members: at most one exposed window each
    std::vector<CircuitIR> shallow = patterned_chains(10, {{4}, {}, {}, {}, {}});
    std::vector<double> shallow_d0 = member_mean_psts(shallow, h, 0, 3.0, seeds, shots);
    std::vector<double> shallow_d2 = member_mean_psts(shallow, h, 2, 3.0, seeds, shots);

    bool pass = true;
    double worst_deep = 1.0, worst_shallow = 0.0;
    for (std::size_t j = 0; j < 5; ++j) {
        double gain1 = deep_d1[j] - deep_d0[j];
        double gain2 = deep_d2[j] - deep_d0[j];
        worst_deep = std::min(worst_deep, std::min(gain1, gain2));
        if (gain1 <= 0.05 || gain2 <= 0.05) pass = false;
        double diff = std::abs(shallow_d0[j] - shallow_d2[j]);
        worst_shallow = std::max(worst_shallow, diff);
        if (diff >= 0.03) pass = false;
    }
    if (timer.seconds() >= 300.0) pass = false;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "buffer helps 30-cx members (min gain %.3f > 0.05) and leaves 10-cx "
                  "members flat (max |diff| %.3f < 0.03)",
                  worst_deep, worst_shallow);
    report(5, pass, buf, timer.seconds());
}

void criterion_6_usage_time_trend() {
    Timer timer;
    HardwareModel h =
        load_calibration_file(test_util::repo_path("data/devices/falcon27.json"));
    LoadedQueue loaded =
        load_circuit_queue({test_util::repo_path("data/benchmarks")}, 100);
    std::vector<double> usage;
    std::vector<std::int64_t> duration;
    std::size_t placed = 0;
    for (int d = 0; d <= 3; ++d) {
        BatchPlan plan = physical_distance_layout(loaded.circuits, h, d);
        ExecutionEstimate est = estimate(loaded.circuits, plan, h);
        usage.push_back(est.mean_usage);
        duration.push_back(est.total_duration_dt);
        if (d == 0) placed = plan.placed_count();
    }
    bool pass = placed == 100;
    for (std::size_t i = 0; i + 1 < usage.size(); ++i) {
        if (!(usage[i + 1] < usage[i])) pass = false;
        if (!(duration[i + 1] > duration[i])) pass = false;
    }
    if (!(usage[0] >= 0.6)) pass = false;
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "100-circuit workload: usage %.3f/%.3f/%.3f/%.3f strictly down, duration "
                  "%lld->%lld dt strictly up, dense usage >= 0.6",
                  usage[0], usage[1], usage[2], usage[3],
                  static_cast<long long>(duration[0]), static_cast<long long>(duration[3]));
    report(6, pass, buf, timer.seconds());
}

void criterion_7_rb_estimator() {
    Timer timer;
    bool pass = true;

    // exact synthetic decay
    std::vector<double> lengths, survival;
    for (int m : {1, 2, 4, 8, 16, 32, 64, 128}) {
        lengths.push_back(m);
        survival.push_back(0.75 * std::pow(0.95, m) + 0.25);
    }
    DecayFit fit = fit_decay(lengths, survival);
    double alpha_err = std::abs(fit.alpha - 0.95);
    if (!(fit.ok && alpha_err < 0.005)) pass = false;

    // simulated recovery of the injected per-cx error
    const CliffordGroup& group = CliffordGroup::instance(2);
    double worst_rel = 0.0;
    for (double p : {0.005, 0.02, 0.05}) {
        HardwareModel h = test_util::line_device(4, p);
        RBConfig cfg;
        cfg.lengths = {1, 2, 4, 8, 16, 32, 64};
        cfg.samples = 10;
        cfg.shots = 4096;
        cfg.seed = 7;
        NoiseModel nm = NoiseModel::from_hardware(h);
        auto results = run_rb({{{0, 1}}}, false, cfg, nm, h);
        double per_cx = std::pow(results[0].fit.alpha, 1.0 / group.average_cx_count());
        double p_hat = (1.0 - per_cx) * 15.0 / 16.0;
        double rel = std::abs(p_hat - p) / p;
        worst_rel = std::max(worst_rel, rel);
        if (!(results[0].fit.ok && rel < 0.15)) pass = false;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "decay fit recovers alpha within %.4f and injected cx errors within "
                  "%.1f%% relative",
                  alpha_err, 100.0 * worst_rel);
    report(7, pass, buf, timer.seconds());
}

void criterion_8_clifford_machinery() {
    Timer timer;
    bool pass = true;
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 10000; ++trial) {
        int n = trial % 2 == 0 ? 2 : 1;
        SampledClifford sample = random_clifford(n, rng);
        CliffordTableau inv = inverse(sample.tableau);
        if (!compose(inv, sample.tableau).is_identity() ||
            !compose(sample.tableau, inv).is_identity()) {
            pass = false;
            break;
        }
    }
    // closure from the sampler's decompositions
    std::set<std::uint32_t> seen;
    std::vector<CliffordTableau> gens;
    for (int i = 0; i < 8; ++i) {
        SampledClifford sample = random_clifford(2, rng);
        CliffordTableau from_gates = CliffordTableau::identity(2);
        for (const GateOp& g : sample.gates) {
            switch (g.kind) {
                case GateKind::H: from_gates.conjugate_h(g.qubits[0]); break;
                case GateKind::S: from_gates.conjugate_s(g.qubits[0]); break;
                case GateKind::Sdg: from_gates.conjugate_sdg(g.qubits[0]); break;
                case GateKind::Cx: from_gates.conjugate_cx(g.qubits[0], g.qubits[1]); break;
                default: pass = false;
            }
        }
        if (!(from_gates == sample.tableau)) pass = false;
        gens.push_back(from_gates);
    }
    std::vector<CliffordTableau> frontier{CliffordTableau::identity(2)};
    seen.insert(frontier[0].key());
    while (!frontier.empty()) {
        CliffordTableau cur = frontier.back();
        frontier.pop_back();
        for (const CliffordTableau& g : gens) {
            CliffordTableau next = compose(g, cur);
            if (seen.insert(next.key()).second) frontier.push_back(next);
        }
    }
    if (seen.size() != 11520) pass = false;
    report(8, pass,
           "inverse law holds on 10000 tableaux; sampled closure reaches " +
               std::to_string(seen.size()) + "/11520 elements",
           timer.seconds());
}

void criterion_9_cv_ct_units() {
    Timer timer;
    bool pass = true;
    auto a = crosstalk_presence_from_eps({"0-1", "2-3"}, {0.01, 0.01}, {0.01, 0.03});
    if (std::abs(a.cv_rb) > 1e-12) pass = false;
    if (std::abs(a.cv_simrb - 0.5) > 1e-12) pass = false;
    if (std::abs(a.ct - 0.5) > 1e-12) pass = false;
    auto b = crosstalk_presence_from_eps({"x", "y", "z"}, {0.02, 0.02, 0.02},
                                         {0.03, 0.03, 0.03});
    if (std::abs(b.ct) > 1e-12) pass = false;

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> eps(0.001, 0.1);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng() % 6);
        std::vector<std::string> names;
        std::vector<double> iso, sim;
        for (int i = 0; i < n; ++i) {
            names.push_back("t" + std::to_string(i));
            iso.push_back(eps(rng));
            sim.push_back(eps(rng));
        }
        double c = 0.2 + 3.0 * eps(rng);
        auto base = crosstalk_presence_from_eps(names, iso, sim);
        for (double& v : iso) v *= c;
        for (double& v : sim) v *= c;
        auto scaled = crosstalk_presence_from_eps(names, iso, sim);
        if (std::abs(base.ct - scaled.ct) > 1e-9) pass = false;
    }
    report(9, pass, "hand-computed CV/ct values match and CV is scale-invariant",
           timer.seconds());
}

void criterion_10_gamma_trend() {
    Timer timer;
    HardwareModel h = test_util::ring_device(16, 0.01);
    const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    const std::vector<double> gammas{1.0, 2.0, 3.0, 4.0};

    // gain from the 30-cx patterned workload, d in {0, 2}
    std::vector<CircuitIR> deep = patterned_chains(
        30, {{0, 2, 4, 6, 8, 10}, {12, 14, 16}, {18, 20, 22}, {13, 15, 17, 19, 21, 23}, {}});
    std::vector<double> gains;
    for (double gamma : gammas) {
        std::map<int, std::vector<double>> pst_by_buffer;
        pst_by_buffer[0] = member_mean_psts(deep, h, 0, gamma, seeds, 8192);
        pst_by_buffer[2] = member_mean_psts(deep, h, 2, gamma, seeds, 8192);
        gains.push_back(gain(pst_by_buffer));
    }

    // ct from two adjacent pairs plus one isolated pair
    std::vector<RBTarget> targets{{{0, 1}}, {{2, 3}}, {{8, 9}}};
    std::vector<double> cts;
    for (double gamma : gammas) {
        double sum = 0.0;
        for (std::uint64_t seed : seeds) {
            RBConfig cfg;
            cfg.lengths = {1, 2, 4, 8, 16, 32};
            cfg.samples = 4;
            cfg.shots = 2048;
            cfg.seed = seed;
            NoiseModel nm = NoiseModel::from_hardware(h);
            nm.gamma = gamma;
            nm.hop_threshold = 1;
            auto isolated = run_rb(targets, false, cfg, nm, h);
            auto simultaneous = run_rb(targets, true, cfg, nm, h);
            sum += crosstalk_presence(isolated, simultaneous).ct;
        }
        cts.push_back(sum / static_cast<double>(seeds.size()));
    }

    bool pass = true;
    if (!(std::abs(cts[0]) < 0.05)) pass = false;
    if (!(std::abs(gains[0]) < 0.02)) pass = false;
    for (std::size_t i = 0; i + 1 < gammas.size(); ++i) {
        if (!(cts[i + 1] >= cts[i])) pass = false;
        if (!(gains[i + 1] >= gains[i])) pass = false;
    }
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "ct %.3f/%.3f/%.3f/%.3f and gain %.3f/%.3f/%.3f/%.3f are non-decreasing "
                  "in gamma; gamma=1 near zero",
                  cts[0], cts[1], cts[2], cts[3], gains[0], gains[1], gains[2], gains[3]);
    report(10, pass, buf, timer.seconds());
}

void criterion_11_determinism() {
    Timer timer;
    bool pass = true;

    // library level: identical plans and reports from identical inputs
    HardwareModel h =
        load_calibration_file(test_util::repo_path("data/devices/falcon27.json"));
    LoadedQueue loaded = load_circuit_queue({test_util::repo_path("data/benchmarks")}, 20);
    NoiseModel nm = NoiseModel::from_hardware(h);
    nm.gamma = 3.0;
    BatchPlan plan = physical_distance_layout(loaded.circuits, h, 1);
    SimReport first = simulate_plan(loaded.circuits, plan, h, nm, 1024, 77);
    SimReport second = simulate_plan(loaded.circuits, plan, h, nm, 1024, 77);
    if (render_json(sim_report_to_json(first)) != render_json(sim_report_to_json(second)))
        pass = false;

    // command level: run, rerun from the echoed manifest, compare bytes
    fs::path base = fs::temp_directory_path() / "qmpack_acceptance";
    fs::remove_all(base);
    fs::create_directories(base);
    std::string out = (base / "run").string();
    std::string cli = QMPACK_CLI_PATH;
    std::string repo = QMPACK_REPO_DIR;
    std::string cmd = cli + " simulate --device " + repo +
                      "/data/devices/falcon27.json --circuits " + repo +
                      "/data/benchmarks --buffer 1 --shots 512 --seed 9 --gamma 3 --out " +
                      out + " > /dev/null 2>&1";
    if (std::system(cmd.c_str()) != 0) pass = false;
    std::string report_path = out + "/report.json";
    std::string counts_path = out + "/counts.csv";
    std::string first_report, first_counts;
    if (pass) {
        first_report = read_text_file(report_path);
        first_counts = read_text_file(counts_path);
        std::string rerun = cli + " rerun " + report_path + " > /dev/null 2>&1";
        if (std::system(rerun.c_str()) != 0) pass = false;
    }
    if (pass) {
        if (read_text_file(report_path) != first_report) pass = false;
        if (read_text_file(counts_path) != first_counts) pass = false;
    }
    report(11, pass, "library reports and CLI rerun outputs are byte-identical",
           timer.seconds());
}

}  // namespace

int main() {
    std::printf("acceptance suite: %s %s\n", kToolName, kToolVersion);
    criterion_1_noiseless();
    criterion_2_parser_audit();
    criterion_3_layout_invariants();
    criterion_4_micro_optimality();
    criterion_5_buffer_depth_trend();
    criterion_6_usage_time_trend();
    criterion_7_rb_estimator();
    criterion_8_clifford_machinery();
    criterion_9_cv_ct_units();
    criterion_10_gamma_trend();
    criterion_11_determinism();
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
