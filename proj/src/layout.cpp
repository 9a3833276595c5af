#include "qmpack/layout.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace qmpack {

int LayoutMap::at(int program_qubit) const {
    auto it = to_physical.find(program_qubit);
    if (it == to_physical.end()) throw std::invalid_argument("unmapped program qubit");
    return it->second;
}

std::vector<int> LayoutMap::image() const {
    std::vector<int> phys;
    phys.reserve(to_physical.size());
    for (const auto& [p, q] : to_physical) phys.push_back(q);
    std::sort(phys.begin(), phys.end());
    return phys;
}

namespace {

struct Growth {
    const InteractionGraph& g;
    const HardwareModel& hw;
    const ReliabilityGraph& rel;
    std::vector<bool> free;  // physical availability local to this allocation
    LayoutMap layout;
    std::vector<int> placed_prog;
    std::vector<int> placed_hw;

    void place(int prog, int phys) {
        layout.to_physical[prog] = phys;
        free[static_cast<std::size_t>(phys)] = false;
        placed_prog.push_back(prog);
        placed_hw.push_back(phys);
    }
    bool is_placed(int prog) const { return layout.to_physical.count(prog) != 0; }
};

/// Heaviest interaction edge among `eligible` program qubits; ties resolved
/// by lexicographic edge order.
std::optional<std::pair<int, int>> heaviest_edge(const InteractionGraph& g,
                                                 const std::vector<bool>& eligible) {
    std::optional<std::pair<int, int>> best;
    int best_w = 0;
    for (const auto& [edge, w] : g.weights) {
        if (!eligible[static_cast<std::size_t>(edge.first)] ||
            !eligible[static_cast<std::size_t>(edge.second)])
            continue;
        if (w > best_w) {
            best_w = w;
            best = edge;
        }
    }
    return best;
}

/// Next program qubit: the unplaced endpoint of the heaviest edge into the
/// placed set (ties: lower program index, then lower placed endpoint).
std::optional<int> next_program_qubit(const Growth& grow) {
    int best_w = 0;
    std::optional<int> best_q;
    int best_anchor = -1;
    for (const auto& [edge, w] : grow.g.weights) {
        int a = edge.first, b = edge.second;
        bool pa = grow.is_placed(a), pb = grow.is_placed(b);
        if (pa == pb) continue;
        int cand = pa ? b : a;
        int anchor = pa ? a : b;
        if (w > best_w || (w == best_w && best_q &&
                           (cand < *best_q || (cand == *best_q && anchor < best_anchor)))) {
            best_w = w;
            best_q = cand;
            best_anchor = anchor;
        }
    }
    return best_q;
}

/// Free physical qubit adjacent to the placed image via the most reliable
/// connecting edge (ties: lower candidate index, then lower image endpoint).
std::optional<int> best_adjacent_qubit(const Growth& grow) {
    std::optional<int> best;
    double best_r = -1.0;
    int best_anchor = -1;
    for (int anchor : grow.placed_hw) {
        for (int cand : grow.hw.neighbors(anchor)) {
            if (!grow.free[static_cast<std::size_t>(cand)]) continue;
            double r = grow.rel.at(QubitPair::make(anchor, cand));
            if (r > best_r || (r == best_r && best &&
                               (cand < *best || (cand == *best && anchor < best_anchor)))) {
                best_r = r;
                best = cand;
                best_anchor = anchor;
            }
        }
    }
    return best;
}

/// Free coupling edge nearest to the current image (then most reliable, then
/// lexicographic). With an empty image, distance is ignored.
std::optional<QubitPair> nearest_free_edge(const Growth& grow) {
    std::optional<QubitPair> best;
    int best_dist = kUnreachable;
    double best_r = -1.0;
    for (const QubitPair& e : grow.hw.coupling) {
        if (!grow.free[static_cast<std::size_t>(e.lo)] ||
            !grow.free[static_cast<std::size_t>(e.hi)])
            continue;
        int dist = 0;
        if (!grow.placed_hw.empty()) {
            dist = kUnreachable;
            for (int anchor : grow.placed_hw)
                for (int end : {e.lo, e.hi})
                    dist = std::min(dist, grow.hw.hop_distance(anchor, end));
        }
        double r = grow.rel.at(e);
        if (dist < best_dist || (dist == best_dist && r > best_r)) {
            best_dist = dist;
            best_r = r;
            best = e;
        }
    }
    return best;
}

/// Free qubits ranked for interaction-free placement: readout error, then
/// index.
std::optional<int> best_isolated_qubit(const Growth& grow) {
    std::optional<int> best;
    for (int q = 0; q < grow.hw.n_qubits; ++q) {
        if (!grow.free[static_cast<std::size_t>(q)]) continue;
        if (!best || grow.hw.readout_error[static_cast<std::size_t>(q)] <
                         grow.hw.readout_error[static_cast<std::size_t>(*best)])
            best = q;
    }
    return best;
}

/// Reliability product over interaction edges; an edge whose image is not a
/// coupling edge contributes factor 0.
double layout_score(const InteractionGraph& g, const LayoutMap& layout,
                    const HardwareModel& hw, const ReliabilityGraph& rel) {
    double score = 1.0;
    for (const auto& [edge, w] : g.weights) {
        int pa = layout.at(edge.first);
        int pb = layout.at(edge.second);
        if (!hw.has_edge(pa, pb)) return 0.0;
        double r = rel.at(QubitPair::make(pa, pb));
        for (int i = 0; i < w; ++i) score *= r;
    }
    return score;
}

/// Completes a growth whose seed pair is already placed. Returns false when
/// a connected program qubit has no free adjacent physical qubit.
bool grow_rest(Growth& grow) {
    int n = grow.g.n_qubits;
    while (static_cast<int>(grow.layout.to_physical.size()) < n) {
        if (auto prog = next_program_qubit(grow)) {
            auto phys = best_adjacent_qubit(grow);
            if (!phys) return false;
            grow.place(*prog, *phys);
            continue;
        }
        // no edge into the placed set: reseed on the remaining interaction
        // edges, nearest to the image first
        std::vector<bool> pending(static_cast<std::size_t>(n), false);
        for (int q = 0; q < n; ++q) pending[static_cast<std::size_t>(q)] = !grow.is_placed(q);
        if (auto edge = heaviest_edge(grow.g, pending)) {
            auto hw_edge = nearest_free_edge(grow);
            if (!hw_edge) return false;
            grow.place(edge->first, hw_edge->lo);
            grow.place(edge->second, hw_edge->hi);
            continue;
        }
        // interaction-free remainder: fill one by one
        int prog = -1;
        for (int q = 0; q < n; ++q)
            if (pending[static_cast<std::size_t>(q)]) {
                prog = q;
                break;
            }
        auto phys = best_isolated_qubit(grow);
        if (!phys) return false;
        grow.place(prog, *phys);
    }
    return true;
}

}  // namespace

std::optional<LayoutMap> allocate_one(const InteractionGraph& g, const HardwareState& s,
                                      const ReliabilityGraph& r) {
    const HardwareModel& hw = *s.model;
    int n = g.n_qubits;
    if (n <= 0) return LayoutMap{};
    if (n > hw.n_qubits) return std::nullopt;

    // components large enough to host the circuit qualify for seeding; the
    // strict round-level size test lives in the driver loop
    auto components = connected_components(s);
    std::vector<bool> in_qualifying(static_cast<std::size_t>(hw.n_qubits), false);
    bool any_qualifying = false;
    for (const auto& comp : components) {
        if (static_cast<int>(comp.size()) < n) continue;
        any_qualifying = true;
        for (int q : comp) in_qualifying[static_cast<std::size_t>(q)] = true;
    }
    if (!any_qualifying) return std::nullopt;

    std::vector<bool> all_prog(static_cast<std::size_t>(n), true);
    auto seed_prog = heaviest_edge(g, all_prog);

    if (!seed_prog) {
        // interaction-free circuit: rank free qubits by readout error, index
        Growth grow{g, hw, r, s.available, {}, {}, {}};
        for (int q = 0; q < n; ++q) {
            auto phys = best_isolated_qubit(grow);
            if (!phys) return std::nullopt;
            grow.place(q, *phys);
        }
        return grow.layout;
    }

    // most reliable free edge inside any qualifying component
    std::optional<QubitPair> seed_hw;
    double best_r = -1.0;
    for (const QubitPair& e : hw.coupling) {
        if (!s.is_available(e.lo) || !s.is_available(e.hi)) continue;
        if (!in_qualifying[static_cast<std::size_t>(e.lo)]) continue;
        double rel = r.at(e);
        if (rel > best_r) {
            best_r = rel;
            seed_hw = e;
        }
    }
    if (!seed_hw) return std::nullopt;

    // try both orientations of the seed edge, keep the better product
    std::optional<LayoutMap> best_layout;
    double best_score = -1.0;
    for (int flip = 0; flip < 2; ++flip) {
        Growth grow{g, hw, r, s.available, {}, {}, {}};
        int first = flip == 0 ? seed_hw->lo : seed_hw->hi;
        int second = flip == 0 ? seed_hw->hi : seed_hw->lo;
        grow.place(seed_prog->first, first);
        grow.place(seed_prog->second, second);
        if (!grow_rest(grow)) continue;
        double score = layout_score(g, grow.layout, hw, r);
        if (score > best_score) {
            best_score = score;
            best_layout = grow.layout;
        }
    }
    return best_layout;
}

std::size_t BatchPlan::placed_count() const {
    std::size_t total = 0;
    for (const RoundPlan& round : rounds) total += round.members.size();
    return total;
}

BatchPlan physical_distance_layout(const std::vector<CircuitIR>& queue,
                                   const HardwareModel& h, int buffer,
                                   const LayoutOptions& opts) {
    if (buffer < 0) throw std::invalid_argument("buffer must be >= 0");
    BatchPlan plan;
    plan.device = h.name;
    plan.buffer = buffer;
    plan.allow_exact_fit = opts.allow_exact_fit;

    std::vector<int> depths(queue.size(), 0);
    std::vector<InteractionGraph> graphs(queue.size());
    for (std::size_t i = 0; i < queue.size(); ++i) {
        queue[i].validate();
        depths[i] = cx_depth(queue[i]);
        graphs[i] = interaction_graph(queue[i]);
    }

    std::vector<int> order(queue.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&depths](int a, int b) { return depths[a] > depths[b]; });

    ReliabilityGraph rel = reliability_graph(h);
    std::deque<int> work(order.begin(), order.end());
    HardwareState state = HardwareState::full(h);
    RoundPlan draft;

    auto flush = [&plan, &draft, &state, &h]() {
        plan.rounds.push_back(std::move(draft));
        draft = RoundPlan{};
        state = HardwareState::full(h);
    };

    auto max_component_size = [](const HardwareState& st) {
        int best = 0;
        for (const auto& comp : connected_components(st))
            best = std::max(best, static_cast<int>(comp.size()));
        return best;
    };

    while (!work.empty()) {
        int idx = work.front();
        work.pop_front();
        const CircuitIR& circuit = queue[static_cast<std::size_t>(idx)];

        int largest = max_component_size(state);
        bool admits = opts.allow_exact_fit ? largest >= circuit.n_qubits
                                           : largest > circuit.n_qubits;
        std::optional<LayoutMap> layout;
        if (admits)
            layout = allocate_one(graphs[static_cast<std::size_t>(idx)], state, rel);
        if (layout) {
            PlacedMember member;
            member.queue_index = idx;
            member.name = circuit.name;
            member.layout = std::move(*layout);
            std::vector<int> image = member.layout.image();
            draft.members.push_back(std::move(member));
            state = remove_with_buffer(state, image, buffer);
            continue;
        }
        if (draft.members.empty()) {
            // fresh device and still no room: this circuit can never place
            plan.leftover.push_back(
                {idx, circuit.name, "no large-enough connected region on an empty device"});
            continue;
        }
        work.push_front(idx);
        flush();
    }
    if (!draft.members.empty()) plan.rounds.push_back(std::move(draft));
    return plan;
}

}  // namespace qmpack
