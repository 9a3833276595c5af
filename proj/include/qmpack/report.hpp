#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qmpack/compose.hpp"
#include "qmpack/layout.hpp"
#include "qmpack/rb.hpp"
#include "qmpack/simulate.hpp"

namespace qmpack {

inline constexpr const char* kToolName = "qmpack";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

/// Everything a run needs; echoed verbatim into reports so a run can be
/// reproduced bit for bit.
struct RunManifest {
    std::string command;
    std::string device_file;
    std::vector<std::string> circuit_files;
    int queue_size = 0;  // cycle the sorted inputs up to this many circuits (0: once)
    int buffer = 0;
    std::vector<int> buffers;
    std::int64_t shots = 8192;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> seeds;
    double gamma = 3.0;
    std::vector<double> gammas;
    int hop_threshold = 1;
    double idle_rate = 0.0;
    bool allow_exact_fit = false;
    std::vector<std::string> target_patterns;  // e.g. "0-1,4-5"
    std::vector<int> rb_lengths = {1, 2, 4, 8, 16, 32};
    int rb_samples = 3;
    std::int64_t rb_shots = 1024;
    std::string out_dir;
};

nlohmann::json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

nlohmann::json plan_to_json(const std::vector<CircuitIR>& queue, const BatchPlan& plan,
                            const ExecutionEstimate& est, std::int64_t shots);
nlohmann::json sim_report_to_json(const SimReport& report);
nlohmann::json characterization_to_json(const CharacterizationReport& report);
nlohmann::json rb_results_to_json(const std::vector<RBResult>& results);

/// Report envelope: schema/tool header plus the echoed manifest.
nlohmann::json report_envelope(const RunManifest& manifest);

/// Canonical rendering (sorted keys, two-space indent, trailing newline);
/// reports compare byte for byte across reruns.
std::string render_json(const nlohmann::json& j);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// counts CSV rows: member,bitstring,count (member labels carry round/slot)
std::string counts_csv(const SimReport& report);
/// survival CSV rows: target,length,sample,survival
std::string survival_csv(const std::vector<RBResult>& results);

std::string format_number(double v);  // shortest round-trip decimal

}  // namespace qmpack
