// qmpack: pack queued OpenQASM circuits onto one device model, simulate the
// packed rounds under a crosstalk-aware stochastic Pauli model, and
// characterize crosstalk with RB / simultaneous RB.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qmpack/compose.hpp"
#include "qmpack/layout.hpp"
#include "qmpack/qasm.hpp"
#include "qmpack/rb.hpp"
#include "qmpack/report.hpp"
#include "qmpack/simulate.hpp"
#include "qmpack/workload.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qmpack;

namespace {

std::string out_path(const RunManifest& m, const std::string& file) {
    fs::create_directories(m.out_dir);
    return (fs::path(m.out_dir) / file).string();
}

NoiseModel noise_from(const RunManifest& m, const HardwareModel& h) {
    NoiseModel nm = NoiseModel::from_hardware(h);
    nm.gamma = m.gamma;
    nm.hop_threshold = m.hop_threshold;
    nm.idle_rate = m.idle_rate;
    return nm;
}

std::vector<RBTarget> parse_pattern(const std::string& text) {
    std::vector<RBTarget> targets;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string token =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        pos = comma == std::string::npos ? text.size() : comma + 1;
        if (token.empty()) continue;
        RBTarget target;
        std::size_t dash = token.find('-');
        if (dash == std::string::npos) {
            target.qubits = {std::stoi(token)};
        } else {
            target.qubits = {std::stoi(token.substr(0, dash)),
                             std::stoi(token.substr(dash + 1))};
        }
        targets.push_back(std::move(target));
    }
    if (targets.empty()) throw std::runtime_error("empty target pattern '" + text + "'");
    return targets;
}

/// Greedy maximal matching over the coupling edges, lexicographic order.
std::vector<RBTarget> default_pattern(const HardwareModel& h) {
    std::vector<RBTarget> targets;
    std::set<int> used;
    for (const QubitPair& e : h.coupling) {
        if (used.count(e.lo) || used.count(e.hi)) continue;
        used.insert(e.lo);
        used.insert(e.hi);
        targets.push_back({{e.lo, e.hi}});
    }
    return targets;
}

struct PlanBundle {
    std::vector<CircuitIR> queue;
    BatchPlan plan;
    ExecutionEstimate est;
};

PlanBundle compile_bundle(const RunManifest& m, const HardwareModel& h, int buffer) {
    PlanBundle bundle;
    LoadedQueue loaded = load_circuit_queue(m.circuit_files, m.queue_size);
    bundle.queue = std::move(loaded.circuits);
    LayoutOptions opts;
    opts.allow_exact_fit = m.allow_exact_fit;
    bundle.plan = physical_distance_layout(bundle.queue, h, buffer, opts);
    bundle.est = estimate(bundle.queue, bundle.plan, h);
    for (const LeftoverRecord& rec : bundle.plan.leftover)
        std::cerr << "warning: circuit '" << rec.name << "' left unplaced: " << rec.reason
                  << "\n";
    return bundle;
}

void write_round_files(const RunManifest& m, const PlanBundle& bundle,
                       const HardwareModel& h) {
    for (std::size_t ri = 0; ri < bundle.plan.rounds.size(); ++ri) {
        ComposedRound cr = compose_round(bundle.queue, bundle.plan.rounds[ri], h);
        char tag[16];
        std::snprintf(tag, sizeof(tag), "round_%03zu", ri);
        CircuitIR merged = cr.to_circuit(tag);
        write_text_file(out_path(m, std::string(tag) + ".qasm"),
                        qasm::emit_qasm(merged).text);
        json side;
        side["round"] = ri;
        json members = json::array();
        for (const ComposedMember& member : cr.members) {
            json jm;
            jm["name"] = member.name;
            jm["queue_index"] = member.queue_index;
            json layout;
            for (const auto& [prog, phys] : member.layout.to_physical)
                layout[std::to_string(prog)] = phys;
            jm["layout"] = layout;
            jm["clbits"] = {member.clbit_offset, member.clbit_offset + member.clbit_count};
            members.push_back(jm);
        }
        side["members"] = members;
        write_text_file(out_path(m, std::string(tag) + ".map.json"), render_json(side));
    }
}

int run_compile(const RunManifest& m) {
    HardwareModel h = load_calibration_file(m.device_file);
    PlanBundle bundle = compile_bundle(m, h, m.buffer);
    json report = report_envelope(m);
    report["plan"] = plan_to_json(bundle.queue, bundle.plan, bundle.est, m.shots);
    write_text_file(out_path(m, "plan.json"), render_json(report));
    write_round_files(m, bundle, h);
    std::cout << "plan: " << bundle.plan.rounds.size() << " round(s), "
              << bundle.plan.placed_count() << " circuit(s) placed, "
              << bundle.plan.leftover.size() << " leftover -> " << out_path(m, "plan.json")
              << "\n";
    return 0;
}

int run_simulate(const RunManifest& m) {
    HardwareModel h = load_calibration_file(m.device_file);
    PlanBundle bundle = compile_bundle(m, h, m.buffer);
    NoiseModel nm = noise_from(m, h);
    SimReport sim = simulate_plan(bundle.queue, bundle.plan, h, nm, m.shots, m.seed);
    for (const MemberResult& member : sim.members)
        if (member.skipped)
            std::cerr << "warning: member '" << member.name
                      << "' skipped: " << member.skip_reason << "\n";
    json report = report_envelope(m);
    report["plan"] = plan_to_json(bundle.queue, bundle.plan, bundle.est, m.shots);
    report["simulation"] = sim_report_to_json(sim);
    write_text_file(out_path(m, "report.json"), render_json(report));
    write_text_file(out_path(m, "counts.csv"), counts_csv(sim));
    std::cout << "simulated " << sim.members.size() << " member(s), mean PST "
              << format_number(sim.mean_pst()) << " -> " << out_path(m, "report.json")
              << "\n";
    return 0;
}

struct CharacterizationOutcome {
    std::vector<RBResult> isolated;
    std::vector<std::vector<RBResult>> per_pattern;
    CharacterizationReport report;
};

CharacterizationOutcome characterize(const RunManifest& m, const HardwareModel& h,
                                     double gamma, std::uint64_t seed) {
    std::vector<std::vector<RBTarget>> patterns;
    for (const std::string& text : m.target_patterns) patterns.push_back(parse_pattern(text));
    if (patterns.empty()) patterns.push_back(default_pattern(h));

    // isolated list: union of all patterns, deduplicated, label-sorted
    std::map<std::string, RBTarget> by_label;
    for (const auto& pattern : patterns)
        for (const RBTarget& t : pattern) by_label[t.label()] = t;
    std::vector<RBTarget> all_targets;
    for (const auto& [label, target] : by_label) all_targets.push_back(target);

    RBConfig cfg;
    cfg.lengths = m.rb_lengths;
    cfg.samples = m.rb_samples;
    cfg.shots = m.rb_shots;
    cfg.seed = seed;
    NoiseModel nm = noise_from(m, h);
    nm.gamma = gamma;

    CharacterizationOutcome outcome;
    outcome.isolated = run_rb(all_targets, false, cfg, nm, h);

    std::map<std::string, std::pair<double, int>> sim_eps;  // label -> (sum, runs)
    for (const auto& pattern : patterns) {
        outcome.per_pattern.push_back(run_rb(pattern, true, cfg, nm, h));
        for (const RBResult& res : outcome.per_pattern.back()) {
            auto& slot = sim_eps[res.target.label()];
            slot.first += res.error_per_clifford;
            slot.second += 1;
        }
    }

    std::vector<std::string> labels;
    std::vector<double> iso, sim;
    for (const RBResult& res : outcome.isolated) {
        const std::string label = res.target.label();
        auto it = sim_eps.find(label);
        if (it == sim_eps.end()) continue;
        labels.push_back(label);
        iso.push_back(res.error_per_clifford);
        sim.push_back(it->second.first / it->second.second);
    }
    outcome.report = crosstalk_presence_from_eps(labels, iso, sim);
    return outcome;
}

int run_characterize(const RunManifest& m) {
    HardwareModel h = load_calibration_file(m.device_file);
    CharacterizationOutcome outcome = characterize(m, h, m.gamma, m.seed);
    json report = report_envelope(m);
    report["characterization"] = characterization_to_json(outcome.report);
    report["rb_isolated"] = rb_results_to_json(outcome.isolated);
    json patterns = json::array();
    for (const auto& pattern : outcome.per_pattern)
        patterns.push_back(rb_results_to_json(pattern));
    report["rb_simultaneous"] = patterns;
    write_text_file(out_path(m, "characterization.json"), render_json(report));
    write_text_file(out_path(m, "rb_survival_isolated.csv"), survival_csv(outcome.isolated));
    std::vector<RBResult> simultaneous_flat;
    for (const auto& pattern : outcome.per_pattern)
        simultaneous_flat.insert(simultaneous_flat.end(), pattern.begin(), pattern.end());
    write_text_file(out_path(m, "rb_survival_simultaneous.csv"),
                    survival_csv(simultaneous_flat));
    std::cout << "ct = " << format_number(outcome.report.ct) << " (CV_RB "
              << format_number(outcome.report.cv_rb) << ", CV_SimRB "
              << format_number(outcome.report.cv_simrb) << ") -> "
              << out_path(m, "characterization.json") << "\n";
    return 0;
}

int run_sweep(const RunManifest& m) {
    if (m.buffers.size() < 2 ||
        std::find(m.buffers.begin(), m.buffers.end(), 0) == m.buffers.end())
        throw std::runtime_error("sweep needs at least two buffer values including 0");
    if (m.seeds.empty()) throw std::runtime_error("sweep needs explicit seeds");
    HardwareModel h = load_calibration_file(m.device_file);

    // plans do not depend on gamma or seed
    std::map<int, PlanBundle> plans;
    for (int d : m.buffers)
        if (!plans.count(d)) plans.emplace(d, compile_bundle(m, h, d));

    json points = json::array();
    std::string csv = "gamma,ct,g\n";
    std::vector<double> gammas = m.gammas.empty() ? std::vector<double>{1, 2, 3, 4} : m.gammas;
    for (double gamma : gammas) {
        std::map<int, std::vector<double>> pst_by_buffer;
        for (std::uint64_t seed : m.seeds) {
            for (int d : m.buffers) {
                const PlanBundle& bundle = plans.at(d);
                NoiseModel nm = noise_from(m, h);
                nm.gamma = gamma;
                SimReport sim =
                    simulate_plan(bundle.queue, bundle.plan, h, nm, m.shots, seed);
                for (const MemberResult& member : sim.members)
                    if (!member.skipped) pst_by_buffer[d].push_back(member.pst_value);
            }
        }
        double g = gain(pst_by_buffer);
        double ct_sum = 0.0;
        for (std::uint64_t seed : m.seeds)
            ct_sum += characterize(m, h, gamma, seed).report.ct;
        double ct_mean = ct_sum / static_cast<double>(m.seeds.size());

        json point;
        point["gamma"] = gamma;
        point["ct"] = ct_mean;
        point["gain"] = g;
        json means;
        for (const auto& [d, values] : pst_by_buffer) {
            double sum = 0.0;
            for (double v : values) sum += v;
            means[std::to_string(d)] = sum / static_cast<double>(values.size());
        }
        point["mean_pst_by_buffer"] = means;
        points.push_back(point);
        csv += format_number(gamma) + "," + format_number(ct_mean) + "," +
               format_number(g) + "\n";
    }

    json report = report_envelope(m);
    report["points"] = points;
    write_text_file(out_path(m, "sweep.json"), render_json(report));
    write_text_file(out_path(m, "sweep_points.csv"), csv);
    std::cout << "sweep wrote " << points.size() << " point(s) -> "
              << out_path(m, "sweep.json") << "\n";
    return 0;
}

int dispatch(const RunManifest& m) {
    if (m.command == "compile") return run_compile(m);
    if (m.command == "simulate") return run_simulate(m);
    if (m.command == "characterize") return run_characterize(m);
    if (m.command == "sweep") return run_sweep(m);
    throw std::runtime_error("unknown command '" + m.command + "'");
}

void add_common_flags(CLI::App* cmd, RunManifest& m, bool needs_circuits) {
    cmd->add_option("--device", m.device_file, "device calibration file")->required();
    if (needs_circuits)
        cmd->add_option("--circuits", m.circuit_files,
                        "circuit files or directories of *.qasm")
            ->required();
    cmd->add_option("--out", m.out_dir, "output directory")->required();
    cmd->add_option("--queue-size", m.queue_size,
                    "cycle the inputs up to this many circuits (0: once through)");
}

void add_noise_flags(CLI::App* cmd, RunManifest& m) {
    cmd->add_option("--gamma", m.gamma, "crosstalk amplification factor");
    cmd->add_option("--hop-threshold", m.hop_threshold, "crosstalk locality in hops");
    cmd->add_option("--idle-rate", m.idle_rate, "idle depolarizing rate per dt");
}

void add_rb_flags(CLI::App* cmd, RunManifest& m) {
    cmd->add_option("--targets", m.target_patterns,
                    "simultaneous pattern, e.g. \"0-1,4-5\" (repeatable)");
    cmd->add_option("--rb-lengths", m.rb_lengths, "RB sequence lengths");
    cmd->add_option("--rb-samples", m.rb_samples, "RB samples per length");
    cmd->add_option("--rb-shots", m.rb_shots, "shots per RB circuit");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum multi-programming packer and crosstalk workbench"};
    app.require_subcommand(1);

    RunManifest m;
    std::string rerun_file;

    CLI::App* compile = app.add_subcommand("compile", "pack circuits into rounds");
    add_common_flags(compile, m, true);
    compile->add_option("--buffer", m.buffer, "idle-qubit hops between circuits");
    compile->add_flag("--allow-exact-fit", m.allow_exact_fit,
                      "admit components exactly the circuit size");
    compile->add_option("--shots", m.shots, "shots (echoed into duration-by-shots)");

    CLI::App* simulate = app.add_subcommand("simulate", "compile and simulate with noise");
    add_common_flags(simulate, m, true);
    simulate->add_option("--buffer", m.buffer, "idle-qubit hops between circuits");
    simulate->add_flag("--allow-exact-fit", m.allow_exact_fit,
                       "admit components exactly the circuit size");
    simulate->add_option("--shots", m.shots, "shots per round");
    simulate->add_option("--seed", m.seed, "simulation seed");
    add_noise_flags(simulate, m);

    CLI::App* characterize_cmd =
        app.add_subcommand("characterize", "RB / simultaneous RB crosstalk detection");
    add_common_flags(characterize_cmd, m, false);
    characterize_cmd->add_option("--seed", m.seed, "sequence and simulation seed");
    add_noise_flags(characterize_cmd, m);
    add_rb_flags(characterize_cmd, m);

    CLI::App* sweep = app.add_subcommand("sweep", "buffer/gamma sweep: (ct, gain) points");
    add_common_flags(sweep, m, true);
    sweep->add_option("--buffers", m.buffers, "buffer values (must include 0)")->required();
    sweep->add_option("--gammas", m.gammas, "gamma values (default 1 2 3 4)");
    sweep->add_option("--seeds", m.seeds, "simulation seeds")->required();
    sweep->add_option("--shots", m.shots, "shots per round");
    sweep->add_flag("--allow-exact-fit", m.allow_exact_fit,
                    "admit components exactly the circuit size");
    sweep->add_option("--hop-threshold", m.hop_threshold, "crosstalk locality in hops");
    sweep->add_option("--idle-rate", m.idle_rate, "idle depolarizing rate per dt");
    add_rb_flags(sweep, m);

    CLI::App* rerun = app.add_subcommand("rerun", "re-execute an echoed manifest");
    rerun->add_option("file", rerun_file, "report or manifest JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (rerun->parsed()) {
            json doc = json::parse(read_text_file(rerun_file));
            RunManifest echoed =
                manifest_from_json(doc.contains("manifest") ? doc["manifest"] : doc);
            return dispatch(echoed);
        }
        m.command = app.get_subcommands().front()->get_name();
        return dispatch(m);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
