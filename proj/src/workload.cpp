#include "qmpack/workload.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <stdexcept>

#include "json.hpp"
#include "qmpack/qasm.hpp"
#include "qmpack/report.hpp"

namespace qmpack {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct ExpectedCounts {
    int qubits = 0;
    int gates = 0;
    int cx = 0;
};

std::map<std::string, ExpectedCounts> load_audit(const fs::path& dir) {
    std::map<std::string, ExpectedCounts> audit;
    fs::path manifest = dir / "benchmarks.json";
    if (!fs::exists(manifest)) return audit;
    json doc = json::parse(read_text_file(manifest.string()));
    for (const auto& entry : doc.at("circuits")) {
        ExpectedCounts counts;
        counts.qubits = entry.at("qubits").get<int>();
        counts.gates = entry.at("gates").get<int>();
        counts.cx = entry.at("cx").get<int>();
        audit[entry.at("file").get<std::string>()] = counts;
    }
    return audit;
}

CircuitIR parse_one(const fs::path& path) {
    qasm::SourceProgram src{read_text_file(path.string()), path.string()};
    qasm::ParseResult result = qasm::parse_qasm(src);
    if (!result.ok) {
        std::string msg;
        for (const auto& d : result.diagnostics) {
            if (!msg.empty()) msg += '\n';
            msg += qasm::format_diagnostic(d, path.string());
        }
        throw std::runtime_error(msg);
    }
    return std::move(result.circuit);
}

}  // namespace

LoadedQueue load_circuit_queue(const std::vector<std::string>& paths, int queue_size) {
    std::vector<fs::path> files;
    for (const std::string& raw : paths) {
        fs::path path(raw);
        if (fs::is_directory(path)) {
            std::vector<fs::path> here;
            for (const auto& entry : fs::directory_iterator(path))
                if (entry.is_regular_file() && entry.path().extension() == ".qasm")
                    here.push_back(entry.path());
            std::sort(here.begin(), here.end());
            files.insert(files.end(), here.begin(), here.end());
        } else if (fs::is_regular_file(path)) {
            files.push_back(path);
        } else {
            throw std::runtime_error(raw + ": no such file or directory");
        }
    }
    if (files.empty()) throw std::runtime_error("no input circuits");

    std::map<std::string, std::map<std::string, ExpectedCounts>> audits;
    LoadedQueue base;
    for (const fs::path& file : files) {
        CircuitIR circuit = parse_one(file);
        std::string dir = file.parent_path().string();
        if (!audits.count(dir)) audits[dir] = load_audit(file.parent_path());
        auto it = audits[dir].find(file.filename().string());
        if (it != audits[dir].end()) {
            const ExpectedCounts& want = it->second;
            if (circuit.n_qubits != want.qubits ||
                static_cast<int>(circuit.logic_gate_count()) != want.gates ||
                static_cast<int>(circuit.cx_count()) != want.cx)
                throw std::runtime_error(
                    file.string() + ": parsed counts (qubits=" +
                    std::to_string(circuit.n_qubits) +
                    ", gates=" + std::to_string(circuit.logic_gate_count()) +
                    ", cx=" + std::to_string(circuit.cx_count()) +
                    ") do not match the recorded benchmark counts (qubits=" +
                    std::to_string(want.qubits) + ", gates=" + std::to_string(want.gates) +
                    ", cx=" + std::to_string(want.cx) + ")");
        }
        base.circuits.push_back(std::move(circuit));
        base.sources.push_back(file.string());
    }

    if (queue_size <= 0 || queue_size == static_cast<int>(base.circuits.size())) return base;
    LoadedQueue cycled;
    for (int i = 0; i < queue_size; ++i) {
        std::size_t j = static_cast<std::size_t>(i) % base.circuits.size();
        CircuitIR copy = base.circuits[j];
        if (static_cast<std::size_t>(i) >= base.circuits.size())
            copy.name += "#" + std::to_string(i / base.circuits.size());
        cycled.circuits.push_back(std::move(copy));
        cycled.sources.push_back(base.sources[j]);
    }
    return cycled;
}

}  // namespace qmpack
