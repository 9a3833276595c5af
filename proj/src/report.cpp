#include "qmpack/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qmpack {

using nlohmann::json;

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

json manifest_to_json(const RunManifest& m) {
    json j;
    j["command"] = m.command;
    j["device"] = m.device_file;
    j["circuits"] = m.circuit_files;
    j["queue_size"] = m.queue_size;
    j["buffer"] = m.buffer;
    j["buffers"] = m.buffers;
    j["shots"] = m.shots;
    j["seed"] = m.seed;
    j["seeds"] = m.seeds;
    j["gamma"] = m.gamma;
    j["gammas"] = m.gammas;
    j["hop_threshold"] = m.hop_threshold;
    j["idle_rate"] = m.idle_rate;
    j["allow_exact_fit"] = m.allow_exact_fit;
    j["targets"] = m.target_patterns;
    j["rb_lengths"] = m.rb_lengths;
    j["rb_samples"] = m.rb_samples;
    j["rb_shots"] = m.rb_shots;
    j["out"] = m.out_dir;
    return j;
}

RunManifest manifest_from_json(const json& j) {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.device_file = j.at("device").get<std::string>();
    m.circuit_files = j.at("circuits").get<std::vector<std::string>>();
    m.queue_size = j.at("queue_size").get<int>();
    m.buffer = j.at("buffer").get<int>();
    m.buffers = j.at("buffers").get<std::vector<int>>();
    m.shots = j.at("shots").get<std::int64_t>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    m.gamma = j.at("gamma").get<double>();
    m.gammas = j.at("gammas").get<std::vector<double>>();
    m.hop_threshold = j.at("hop_threshold").get<int>();
    m.idle_rate = j.at("idle_rate").get<double>();
    m.allow_exact_fit = j.at("allow_exact_fit").get<bool>();
    m.target_patterns = j.at("targets").get<std::vector<std::string>>();
    m.rb_lengths = j.at("rb_lengths").get<std::vector<int>>();
    m.rb_samples = j.at("rb_samples").get<int>();
    m.rb_shots = j.at("rb_shots").get<std::int64_t>();
    m.out_dir = j.at("out").get<std::string>();
    return m;
}

json plan_to_json(const std::vector<CircuitIR>& queue, const BatchPlan& plan,
                  const ExecutionEstimate& est, std::int64_t shots) {
    json j;
    j["device"] = plan.device;
    j["buffer"] = plan.buffer;
    j["allow_exact_fit"] = plan.allow_exact_fit;
    j["round_count"] = plan.rounds.size();
    json rounds = json::array();
    for (std::size_t ri = 0; ri < plan.rounds.size(); ++ri) {
        const RoundPlan& round = plan.rounds[ri];
        json jr;
        jr["index"] = ri;
        if (ri < est.round_duration_dt.size()) {
            jr["duration_dt"] = est.round_duration_dt[ri];
            jr["usage"] = est.round_usage[ri];
        }
        json members = json::array();
        for (const PlacedMember& m : round.members) {
            json jm;
            jm["queue_index"] = m.queue_index;
            jm["name"] = m.name;
            jm["qubits"] = queue.at(static_cast<std::size_t>(m.queue_index)).n_qubits;
            json layout;
            for (const auto& [prog, phys] : m.layout.to_physical)
                layout[std::to_string(prog)] = phys;
            jm["layout"] = layout;
            members.push_back(jm);
        }
        jr["members"] = members;
        rounds.push_back(jr);
    }
    j["rounds"] = rounds;
    json leftover = json::array();
    for (const LeftoverRecord& rec : plan.leftover) {
        json jl;
        jl["queue_index"] = rec.queue_index;
        jl["name"] = rec.name;
        jl["reason"] = rec.reason;
        leftover.push_back(jl);
    }
    j["leftover"] = leftover;
    j["total_duration_dt"] = est.total_duration_dt;
    j["total_duration_dt_times_shots"] = est.total_duration_dt * shots;
    j["mean_usage"] = est.mean_usage;
    return j;
}

json sim_report_to_json(const SimReport& report) {
    json j;
    j["seed"] = report.seed;
    j["shots"] = report.shots;
    j["noise"] = {{"gamma", report.gamma},
                  {"hop_threshold", report.hop_threshold},
                  {"idle_rate", report.idle_rate}};
    j["mean_pst"] = report.mean_pst();
    json members = json::array();
    for (const MemberResult& m : report.members) {
        json jm;
        jm["round"] = m.round;
        jm["slot"] = m.slot;
        jm["queue_index"] = m.queue_index;
        jm["name"] = m.name;
        if (m.skipped) {
            jm["skipped"] = true;
            jm["reason"] = m.skip_reason;
        } else {
            jm["pst"] = m.pst_value;
            jm["correct_outputs"] = m.correct;
        }
        members.push_back(jm);
    }
    j["members"] = members;
    return j;
}

json characterization_to_json(const CharacterizationReport& report) {
    json j;
    j["targets"] = report.targets;
    j["isolated_eps"] = report.isolated_eps;
    j["simultaneous_eps"] = report.simultaneous_eps;
    j["rb"] = {{"mu", report.mu_rb}, {"sigma", report.sigma_rb}, {"cv", report.cv_rb}};
    j["simrb"] = {{"mu", report.mu_simrb}, {"sigma", report.sigma_simrb}, {"cv", report.cv_simrb}};
    j["ct"] = report.ct;
    return j;
}

json rb_results_to_json(const std::vector<RBResult>& results) {
    json arr = json::array();
    for (const RBResult& r : results) {
        json jr;
        jr["target"] = r.target.label();
        jr["lengths"] = r.lengths;
        jr["survival_mean"] = r.survival_mean;
        jr["fit"] = {{"amplitude", r.fit.amplitude},
                     {"alpha", r.fit.alpha},
                     {"baseline", r.fit.baseline},
                     {"residual", r.fit.residual},
                     {"ok", r.fit.ok}};
        jr["error_per_clifford"] = r.error_per_clifford;
        arr.push_back(jr);
    }
    return arr;
}

json report_envelope(const RunManifest& manifest) {
    json j;
    j["schema"] = kReportSchema;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    j["manifest"] = manifest_to_json(manifest);
    return j;
}

std::string render_json(const json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << content;
    if (!out) throw std::runtime_error(path + ": write failed");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string counts_csv(const SimReport& report) {
    std::ostringstream out;
    out << "member,bitstring,count\n";
    for (const MemberResult& m : report.members) {
        if (m.skipped) continue;
        std::string label =
            m.name + "#r" + std::to_string(m.round) + "s" + std::to_string(m.slot);
        for (const auto& [bits, count] : m.counts.counts)
            out << label << ',' << bits << ',' << count << '\n';
    }
    return out.str();
}

std::string survival_csv(const std::vector<RBResult>& results) {
    std::ostringstream out;
    out << "target,length,sample,survival\n";
    for (const RBResult& r : results) {
        for (std::size_t li = 0; li < r.survival_samples.size(); ++li)
            for (std::size_t si = 0; si < r.survival_samples[li].size(); ++si)
                out << r.target.label() << ',' << r.lengths[li] << ',' << si << ','
                    << format_number(r.survival_samples[li][si]) << '\n';
    }
    return out.str();
}

}  // namespace qmpack
