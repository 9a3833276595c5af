#include "qmpack/hardware.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qmpack {

namespace {

using nlohmann::json;

[[noreturn]] void load_fail(const std::string& origin, const std::string& msg) {
    throw std::runtime_error(origin + ": " + msg);
}

double checked_error(const std::string& origin, const json& v, const std::string& what) {
    if (!v.is_number()) load_fail(origin, what + " must be a number");
    double x = v.get<double>();
    if (x < 0.0 || x > 1.0) load_fail(origin, what + " out of [0,1]");
    return x;
}

}  // namespace

void HardwareModel::finalize() {
    if (n_qubits <= 0) throw std::runtime_error("hardware model has no qubits");
    std::sort(coupling.begin(), coupling.end());
    coupling.erase(std::unique(coupling.begin(), coupling.end()), coupling.end());
    for (const QubitPair& e : coupling) {
        if (e.lo == e.hi) throw std::runtime_error("coupling self-loop");
        if (e.lo < 0 || e.hi >= n_qubits) throw std::runtime_error("coupling index out of range");
    }
    if (sq_error.empty()) sq_error.assign(static_cast<std::size_t>(n_qubits), 0.0);
    if (readout_error.empty()) readout_error.assign(static_cast<std::size_t>(n_qubits), 0.0);

    adjacency_.assign(static_cast<std::size_t>(n_qubits), {});
    for (const QubitPair& e : coupling) {
        adjacency_[static_cast<std::size_t>(e.lo)].push_back(e.hi);
        adjacency_[static_cast<std::size_t>(e.hi)].push_back(e.lo);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

    // all-pairs hops by BFS from each node
    hops_.assign(static_cast<std::size_t>(n_qubits) * static_cast<std::size_t>(n_qubits),
                 kUnreachable);
    for (int s = 0; s < n_qubits; ++s) {
        auto row = hops_.begin() + static_cast<std::ptrdiff_t>(s) * n_qubits;
        std::deque<int> queue{s};
        row[s] = 0;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : adjacency_[static_cast<std::size_t>(u)]) {
                if (row[v] == kUnreachable) {
                    row[v] = row[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
}

bool HardwareModel::has_edge(int a, int b) const {
    QubitPair e = QubitPair::make(a, b);
    return std::binary_search(coupling.begin(), coupling.end(), e,
                              [](const QubitPair& x, const QubitPair& y) { return x < y; });
}

int HardwareModel::hop_distance(int a, int b) const {
    return hops_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_qubits) +
                 static_cast<std::size_t>(b)];
}

int HardwareModel::pair_distance(const QubitPair& a, const QubitPair& b) const {
    int best = kUnreachable;
    for (int x : {a.lo, a.hi})
        for (int y : {b.lo, b.hi}) best = std::min(best, hop_distance(x, y));
    return best;
}

HardwareModel load_calibration(const std::string& json_text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        load_fail(origin, std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) load_fail(origin, "document root must be an object");

    static const std::set<std::string> known = {"name",     "n_qubits",      "coupling",
                                                "cx_error", "sq_error",      "readout_error",
                                                "durations"};
    for (const auto& [key, value] : doc.items())
        if (!known.count(key)) load_fail(origin, "unknown field '" + key + "'");

    HardwareModel h;
    if (!doc.contains("name") || !doc["name"].is_string())
        load_fail(origin, "missing or invalid 'name'");
    h.name = doc["name"].get<std::string>();

    if (!doc.contains("n_qubits") || !doc["n_qubits"].is_number_integer() ||
        doc["n_qubits"].get<int>() <= 0)
        load_fail(origin, "missing or invalid 'n_qubits'");
    h.n_qubits = doc["n_qubits"].get<int>();

    if (!doc.contains("coupling") || !doc["coupling"].is_array())
        load_fail(origin, "missing coupling list");
    for (const auto& entry : doc["coupling"]) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer() ||
            !entry[1].is_number_integer())
            load_fail(origin, "coupling entries must be [a, b] qubit pairs");
        int a = entry[0].get<int>();
        int b = entry[1].get<int>();
        if (a == b) load_fail(origin, "coupling self-loop " + std::to_string(a));
        if (a < 0 || b < 0 || a >= h.n_qubits || b >= h.n_qubits)
            load_fail(origin, "coupling qubit index out of range");
        h.coupling.push_back(QubitPair::make(a, b));
    }
    std::sort(h.coupling.begin(), h.coupling.end());
    if (std::adjacent_find(h.coupling.begin(), h.coupling.end()) != h.coupling.end())
        load_fail(origin, "duplicate coupling edge");

    if (!doc.contains("cx_error") || !doc["cx_error"].is_object())
        load_fail(origin, "missing 'cx_error' map");
    for (const auto& [key, value] : doc["cx_error"].items()) {
        std::size_t dash = key.find('-');
        if (dash == std::string::npos) load_fail(origin, "cx_error key '" + key + "' is not 'a-b'");
        int a = 0, b = 0;
        try {
            a = std::stoi(key.substr(0, dash));
            b = std::stoi(key.substr(dash + 1));
        } catch (...) {
            load_fail(origin, "cx_error key '" + key + "' is not 'a-b'");
        }
        QubitPair e = QubitPair::make(a, b);
        if (!std::binary_search(h.coupling.begin(), h.coupling.end(), e))
            load_fail(origin, "cx_error key '" + key + "' is not a coupling edge");
        h.cx_error[e] = checked_error(origin, value, "cx_error['" + key + "']");
    }
    for (const QubitPair& e : h.coupling)
        if (!h.cx_error.count(e))
            load_fail(origin, "cx_error missing for edge " + e.label());

    auto load_per_qubit = [&](const char* field, std::vector<double>& out) {
        if (!doc.contains(field)) return;
        if (!doc[field].is_array() ||
            doc[field].size() != static_cast<std::size_t>(h.n_qubits))
            load_fail(origin, std::string("'") + field + "' must be an array of n_qubits values");
        for (const auto& v : doc[field])
            out.push_back(checked_error(origin, v, field));
    };
    load_per_qubit("sq_error", h.sq_error);
    load_per_qubit("readout_error", h.readout_error);

    if (doc.contains("durations")) {
        if (!doc["durations"].is_object()) load_fail(origin, "'durations' must be an object");
        static const std::set<std::string> dur_keys = {"1q_gate_dt", "cx_dt", "measure_dt"};
        for (const auto& [key, value] : doc["durations"].items()) {
            if (!dur_keys.count(key)) load_fail(origin, "unknown duration '" + key + "'");
            if (!value.is_number_integer() || value.get<int>() <= 0)
                load_fail(origin, "duration '" + key + "' must be a positive integer");
            int v = value.get<int>();
            if (key == "1q_gate_dt") h.durations.one_qubit_dt = v;
            if (key == "cx_dt") h.durations.cx_dt = v;
            if (key == "measure_dt") h.durations.measure_dt = v;
        }
    }

    h.finalize();
    return h;
}

HardwareModel load_calibration_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open calibration file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_calibration(buf.str(), path);
}

double ReliabilityGraph::at(const QubitPair& e) const {
    auto it = reliability.find(e);
    if (it == reliability.end()) throw std::invalid_argument("no such edge " + e.label());
    return it->second;
}

ReliabilityGraph reliability_graph(const HardwareModel& h) {
    ReliabilityGraph g;
    for (const auto& [edge, eps] : h.cx_error) g.reliability[edge] = 1.0 - eps;
    return g;
}

HardwareState HardwareState::full(const HardwareModel& h) {
    HardwareState s;
    s.model = &h;
    s.available.assign(static_cast<std::size_t>(h.n_qubits), true);
    return s;
}

int HardwareState::available_count() const {
    return static_cast<int>(std::count(available.begin(), available.end(), true));
}

std::vector<std::vector<int>> connected_components(const HardwareState& s) {
    const HardwareModel& h = *s.model;
    std::vector<bool> seen(static_cast<std::size_t>(h.n_qubits), false);
    std::vector<std::vector<int>> components;
    for (int start = 0; start < h.n_qubits; ++start) {
        if (!s.is_available(start) || seen[static_cast<std::size_t>(start)]) continue;
        std::vector<int> comp;
        std::deque<int> queue{start};
        seen[static_cast<std::size_t>(start)] = true;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            comp.push_back(u);
            for (int v : h.neighbors(u)) {
                if (s.is_available(v) && !seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = true;
                    queue.push_back(v);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

HardwareState remove_with_buffer(const HardwareState& s, const std::vector<int>& used, int d) {
    HardwareState out = s;
    const HardwareModel& h = *s.model;
    for (int u : used) {
        if (!s.is_available(u)) throw std::invalid_argument("removing unavailable qubit");
        out.available[static_cast<std::size_t>(u)] = false;
    }
    if (d <= 0) return out;
    for (int q = 0; q < h.n_qubits; ++q) {
        if (!out.is_available(q)) continue;
        for (int u : used) {
            int dist = h.hop_distance(q, u);
            if (dist != kUnreachable && dist <= d) {
                out.available[static_cast<std::size_t>(q)] = false;
                break;
            }
        }
    }
    return out;
}

}  // namespace qmpack
