#include "qmpack/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "qmpack/statevector.hpp"

namespace qmpack {

std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x243F6A8885A308D3ULL;
    for (std::uint64_t p : parts) {
        std::uint64_t x = h ^ p;
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        h = x ^ (x >> 31);
    }
    return h;
}

NoiseModel NoiseModel::from_hardware(const HardwareModel& h) {
    NoiseModel nm;
    nm.cx_error = h.cx_error;
    nm.sq_error = h.sq_error;
    nm.readout_error = h.readout_error;
    return nm;
}

NoiseModel NoiseModel::noiseless(const HardwareModel& h) {
    NoiseModel nm;
    for (const QubitPair& e : h.coupling) nm.cx_error[e] = 0.0;
    nm.sq_error.assign(static_cast<std::size_t>(h.n_qubits), 0.0);
    nm.readout_error.assign(static_cast<std::size_t>(h.n_qubits), 0.0);
    return nm;
}

void NoiseModel::set_uniform_cx_error(double eps) {
    for (auto& [edge, value] : cx_error) value = eps;
}

double NoiseModel::cx_eps(const QubitPair& e) const {
    auto it = cx_error.find(e);
    return it == cx_error.end() ? 0.0 : it->second;
}

double NoiseModel::effective_cx_error(const QubitPair& e, int k) const {
    double eps = cx_eps(e);
    for (int i = 0; i < k; ++i) eps *= gamma;
    return std::clamp(eps, 0.0, 1.0);
}

IdealOutputs ideal_outputs(const CircuitIR& c, int max_qubits) {
    c.validate();
    if (c.n_qubits > max_qubits)
        throw std::runtime_error("circuit '" + c.name + "' exceeds the statevector bound (" +
                                 std::to_string(c.n_qubits) + " > " +
                                 std::to_string(max_qubits) + " qubits)");
    Statevector state(c.n_qubits);
    std::vector<int> measured_to(static_cast<std::size_t>(c.n_qubits), -1);
    for (const GateOp& g : c.gates) {
        if (g.kind == GateKind::Barrier) continue;
        if (g.kind == GateKind::Measure) {
            if (measured_to[static_cast<std::size_t>(g.qubits[0])] >= 0)
                throw std::runtime_error("qubit measured twice in ideal simulation");
            measured_to[static_cast<std::size_t>(g.qubits[0])] = g.clbit;
            continue;
        }
        for (int q : g.qubits)
            if (measured_to[static_cast<std::size_t>(q)] >= 0)
                throw std::runtime_error("gate after measurement in ideal simulation");
        state.apply(g);
    }

    std::map<std::string, double> mass;
    const auto& amp = state.amplitudes();
    for (std::size_t b = 0; b < amp.size(); ++b) {
        double p = std::norm(amp[b]);
        if (p == 0.0) continue;
        std::string key(static_cast<std::size_t>(std::max(c.n_clbits, 0)), '0');
        for (int q = 0; q < c.n_qubits; ++q) {
            int clbit = measured_to[static_cast<std::size_t>(q)];
            if (clbit < 0) continue;
            if (b & (std::size_t{1} << q))
                key[static_cast<std::size_t>(c.n_clbits - 1 - clbit)] = '1';
        }
        mass[key] += p;
    }

    IdealOutputs out;
    for (const auto& [key, p] : mass)
        if (p > 1e-9) out.outcomes.push_back({key, p});
    std::sort(out.outcomes.begin(), out.outcomes.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    double cum = 0.0;
    for (const auto& [key, p] : out.outcomes) {
        out.correct.push_back(key);
        cum += p;
        if (cum >= 0.99) break;
    }
    return out;
}

namespace {

struct MemberTimedGate {
    const GateOp* program_gate = nullptr;  // program-space operands
    GateKind kind = GateKind::X;
    std::vector<int> phys;
    std::int64_t start = 0;
    std::int64_t end = 0;
    double error_prob = 0.0;  // effective injection probability after this gate
};

/// Per-member timed gate lists with crosstalk-adjusted error rates.
std::vector<std::vector<MemberTimedGate>> build_timed_members(const ComposedRound& cr,
                                                              const HardwareModel& h,
                                                              const NoiseModel& nm) {
    Schedule sched = schedule_asap(cr, h);

    struct CxRef {
        int member;
        QubitPair pair;
        std::int64_t start, end;
    };
    std::vector<CxRef> all_cx;
    for (const TimedGate& t : sched.gates)
        if (t.kind == GateKind::Cx)
            all_cx.push_back({t.member, QubitPair::make(t.phys[0], t.phys[1]), t.start, t.end});

    std::vector<std::vector<MemberTimedGate>> members(cr.members.size());
    for (std::size_t i = 0; i < sched.gates.size(); ++i) {
        const TimedGate& t = sched.gates[i];
        const ComposedMember& member = cr.members[static_cast<std::size_t>(t.member)];
        MemberTimedGate g;
        g.program_gate = &member.circuit.gates[static_cast<std::size_t>(t.member_gate)];
        g.kind = t.kind;
        g.phys = t.phys;
        g.start = t.start;
        g.end = t.end;
        if (t.kind == GateKind::Cx) {
            QubitPair pair = QubitPair::make(t.phys[0], t.phys[1]);
            int k = 0;
            for (const CxRef& other : all_cx) {
                if (other.member == t.member) continue;
                if (other.start >= t.end || t.start >= other.end) continue;
                int dist = h.pair_distance(pair, other.pair);
                if (dist != kUnreachable && dist <= nm.hop_threshold) ++k;
            }
            g.error_prob = nm.effective_cx_error(pair, k);
        } else if (t.kind != GateKind::Barrier && t.kind != GateKind::Measure) {
            g.error_prob = t.phys.empty()
                               ? 0.0
                               : nm.sq_error[static_cast<std::size_t>(t.phys[0])];
        }
        members[static_cast<std::size_t>(t.member)].push_back(std::move(g));
    }
    return members;
}

MemberCounts simulate_member(const ComposedMember& member,
                             const std::vector<MemberTimedGate>& timeline,
                             const NoiseModel& nm, std::int64_t shots,
                             std::uint64_t member_seed) {
    MemberCounts result;
    result.shots = shots;
    const int n_clbits = member.circuit.n_clbits;

    for (std::int64_t shot = 0; shot < shots; ++shot) {
        std::mt19937_64 rng(mix_seed({member_seed, static_cast<std::uint64_t>(shot)}));
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        Statevector state(member.circuit.n_qubits);
        std::vector<std::int64_t> busy_until(
            static_cast<std::size_t>(member.circuit.n_qubits), 0);
        std::vector<char> bits(static_cast<std::size_t>(std::max(n_clbits, 0)), 0);

        for (const MemberTimedGate& g : timeline) {
            const GateOp& op = *g.program_gate;
            if (nm.idle_rate > 0.0 && g.kind != GateKind::Barrier) {
                for (std::size_t oi = 0; oi < op.qubits.size(); ++oi) {
                    int q = op.qubits[oi];
                    std::int64_t gap = g.start - busy_until[static_cast<std::size_t>(q)];
                    if (gap <= 0) continue;
                    double p = 1.0 - std::exp(-nm.idle_rate * static_cast<double>(gap));
                    if (uniform(rng) < p)
                        state.apply_pauli(q, 1 + static_cast<int>(rng() % 3));
                }
            }
            switch (g.kind) {
                case GateKind::Barrier:
                    break;
                case GateKind::Measure: {
                    int q = op.qubits[0];
                    int bit = state.measure(q, uniform(rng));
                    double flip = nm.readout_error.empty()
                                      ? 0.0
                                      : nm.readout_error[static_cast<std::size_t>(g.phys[0])];
                    if (flip > 0.0 && uniform(rng) < flip) bit ^= 1;
                    bits[static_cast<std::size_t>(op.clbit)] = static_cast<char>(bit);
                    break;
                }
                case GateKind::Cx: {
                    state.apply(op);
                    if (g.error_prob > 0.0 && uniform(rng) < g.error_prob) {
                        int idx = 1 + static_cast<int>(rng() % 15);  // non-identity pair
                        int pa = idx >> 2;
                        int pb = idx & 3;
                        if (pa) state.apply_pauli(op.qubits[0], pa);
                        if (pb) state.apply_pauli(op.qubits[1], pb);
                    }
                    break;
                }
                default: {
                    state.apply(op);
                    if (g.error_prob > 0.0 && uniform(rng) < g.error_prob)
                        state.apply_pauli(op.qubits[0], 1 + static_cast<int>(rng() % 3));
                    break;
                }
            }
            for (int q : op.qubits) busy_until[static_cast<std::size_t>(q)] = g.end;
        }

        std::string key(static_cast<std::size_t>(std::max(n_clbits, 0)), '0');
        for (int i = 0; i < n_clbits; ++i)
            if (bits[static_cast<std::size_t>(i)])
                key[static_cast<std::size_t>(n_clbits - 1 - i)] = '1';
        result.counts[key] += 1;
    }
    return result;
}

ShotCounts simulate_round_masked(const ComposedRound& cr, const HardwareModel& h,
                                 const NoiseModel& nm, std::int64_t shots,
                                 std::uint64_t seed, const std::vector<bool>& active) {
    if (shots <= 0) throw std::invalid_argument("shots must be positive");
    auto timelines = build_timed_members(cr, h, nm);
    ShotCounts out;
    out.members.resize(cr.members.size());
    for (std::size_t m = 0; m < cr.members.size(); ++m) {
        if (!active[m]) continue;
        std::uint64_t member_seed = mix_seed({seed, 0x6D656D62ULL, m});
        out.members[m] = simulate_member(cr.members[m], timelines[m], nm, shots, member_seed);
    }
    return out;
}

}  // namespace

ShotCounts simulate_round(const ComposedRound& cr, const HardwareModel& h,
                          const NoiseModel& nm, std::int64_t shots, std::uint64_t seed,
                          const SimOptions& opts) {
    for (const ComposedMember& m : cr.members)
        if (m.circuit.n_qubits > opts.max_qubits)
            throw std::runtime_error("member '" + m.name + "' exceeds the statevector bound");
    std::vector<bool> active(cr.members.size(), true);
    return simulate_round_masked(cr, h, nm, shots, seed, active);
}

double pst(const MemberCounts& counts, const std::vector<std::string>& correct) {
    if (counts.shots <= 0 || counts.counts.empty())
        throw std::invalid_argument("pst needs non-empty counts");
    std::int64_t hit = 0;
    for (const std::string& key : correct) {
        auto it = counts.counts.find(key);
        if (it != counts.counts.end()) hit += it->second;
    }
    return static_cast<double>(hit) / static_cast<double>(counts.shots);
}

double SimReport::mean_pst() const {
    double sum = 0.0;
    int n = 0;
    for (const MemberResult& m : members) {
        if (m.skipped) continue;
        sum += m.pst_value;
        ++n;
    }
    return n == 0 ? 0.0 : sum / n;
}

SimReport simulate_plan(const std::vector<CircuitIR>& queue, const BatchPlan& plan,
                        const HardwareModel& h, const NoiseModel& nm, std::int64_t shots,
                        std::uint64_t seed, const SimOptions& opts) {
    SimReport report;
    report.seed = seed;
    report.shots = shots;
    report.gamma = nm.gamma;
    report.hop_threshold = nm.hop_threshold;
    report.idle_rate = nm.idle_rate;

    for (std::size_t ri = 0; ri < plan.rounds.size(); ++ri) {
        ComposedRound cr = compose_round(queue, plan.rounds[ri], h);
        std::vector<bool> active(cr.members.size(), true);
        for (std::size_t m = 0; m < cr.members.size(); ++m)
            if (cr.members[m].circuit.n_qubits > opts.max_qubits) active[m] = false;

        std::uint64_t round_seed = mix_seed({seed, 0x726F756EULL, ri});
        ShotCounts counts = simulate_round_masked(cr, h, nm, shots, round_seed, active);

        for (std::size_t m = 0; m < cr.members.size(); ++m) {
            MemberResult res;
            res.round = static_cast<int>(ri);
            res.slot = static_cast<int>(m);
            res.queue_index = cr.members[m].queue_index;
            res.name = cr.members[m].name;
            if (!active[m]) {
                res.skipped = true;
                res.skip_reason = "exceeds the statevector bound (" +
                                  std::to_string(cr.members[m].circuit.n_qubits) + " > " +
                                  std::to_string(opts.max_qubits) + " qubits)";
            } else {
                IdealOutputs ideal = ideal_outputs(cr.members[m].circuit, opts.max_qubits);
                res.correct = ideal.correct;
                res.counts = std::move(counts.members[m]);
                res.pst_value = pst(res.counts, res.correct);
            }
            report.members.push_back(std::move(res));
        }
    }
    return report;
}

}  // namespace qmpack
