#include "qmpack/compose.hpp"

#include <algorithm>
#include <stdexcept>

namespace qmpack {

int ComposedRound::total_clbits() const {
    int total = 0;
    for (const ComposedMember& m : members) total += m.clbit_count;
    return total;
}

CircuitIR ComposedRound::to_circuit(const std::string& name) const {
    CircuitIR c;
    c.name = name;
    c.n_qubits = device_qubits;
    c.n_clbits = total_clbits();
    c.gates.reserve(gates.size());
    for (const ComposedGate& g : gates) c.gates.push_back(g.gate);
    return c;
}

namespace {

ComposedRound compose_impl(std::vector<ComposedMember> members, const HardwareModel& h,
                           bool sync_barriers) {
    ComposedRound round;
    round.device_qubits = h.n_qubits;
    round.sync_barriers = sync_barriers;

    int clbit_offset = 0;
    std::vector<bool> taken(static_cast<std::size_t>(h.n_qubits), false);
    for (ComposedMember& m : members) {
        m.circuit.validate();
        if (static_cast<int>(m.layout.to_physical.size()) != m.circuit.n_qubits)
            throw std::invalid_argument("layout does not cover member '" + m.name + "'");
        for (const auto& [prog, phys] : m.layout.to_physical) {
            if (phys < 0 || phys >= h.n_qubits)
                throw std::invalid_argument("layout image out of device range");
            if (taken[static_cast<std::size_t>(phys)])
                throw std::invalid_argument("layout images collide on qubit " +
                                            std::to_string(phys));
            taken[static_cast<std::size_t>(phys)] = true;
        }
        m.clbit_offset = clbit_offset;
        m.clbit_count = m.circuit.n_clbits;
        clbit_offset += m.clbit_count;
    }

    for (std::size_t mi = 0; mi < members.size(); ++mi) {
        const ComposedMember& m = members[mi];
        for (std::size_t gi = 0; gi < m.circuit.gates.size(); ++gi) {
            const GateOp& src = m.circuit.gates[gi];
            ComposedGate out;
            out.member = static_cast<int>(mi);
            out.member_gate = static_cast<int>(gi);
            out.gate = src;
            for (int& q : out.gate.qubits) q = m.layout.at(q);
            if (src.kind == GateKind::Measure) out.gate.clbit = m.clbit_offset + src.clbit;
            round.gates.push_back(std::move(out));
        }
    }
    round.members = std::move(members);
    return round;
}

std::int64_t gate_duration(GateKind kind, const GateDurations& d) {
    switch (kind) {
        case GateKind::Barrier: return 0;
        case GateKind::Measure: return d.measure_dt;
        case GateKind::Cx: return d.cx_dt;
        default: return d.one_qubit_dt;
    }
}

}  // namespace

ComposedRound compose_round(const std::vector<CircuitIR>& queue, const RoundPlan& round,
                            const HardwareModel& h) {
    std::vector<ComposedMember> members;
    members.reserve(round.members.size());
    for (const PlacedMember& placed : round.members) {
        ComposedMember m;
        m.queue_index = placed.queue_index;
        m.name = placed.name;
        m.circuit = queue.at(static_cast<std::size_t>(placed.queue_index));
        m.layout = placed.layout;
        members.push_back(std::move(m));
    }
    return compose_impl(std::move(members), h, false);
}

ComposedRound compose_members(const std::vector<CircuitIR>& circuits,
                              const std::vector<LayoutMap>& layouts, const HardwareModel& h,
                              bool sync_barriers) {
    if (circuits.size() != layouts.size())
        throw std::invalid_argument("compose_members: size mismatch");
    std::vector<ComposedMember> members;
    members.reserve(circuits.size());
    for (std::size_t i = 0; i < circuits.size(); ++i) {
        ComposedMember m;
        m.queue_index = static_cast<int>(i);
        m.name = circuits[i].name;
        m.circuit = circuits[i];
        m.layout = layouts[i];
        members.push_back(std::move(m));
    }
    return compose_impl(std::move(members), h, sync_barriers);
}

Schedule schedule_asap(const ComposedRound& cr, const HardwareModel& h) {
    Schedule sched;
    sched.gates.resize(cr.gates.size());
    std::vector<std::int64_t> ready(static_cast<std::size_t>(cr.device_qubits), 0);

    auto place_gate = [&](std::size_t index, std::int64_t floor_time) {
        const ComposedGate& g = cr.gates[index];
        std::int64_t start = floor_time;
        for (int q : g.gate.qubits)
            start = std::max(start, ready[static_cast<std::size_t>(q)]);
        std::int64_t end = start + gate_duration(g.gate.kind, h.durations);
        for (int q : g.gate.qubits) ready[static_cast<std::size_t>(q)] = end;
        TimedGate t;
        t.member = g.member;
        t.member_gate = g.member_gate;
        t.kind = g.gate.kind;
        t.phys = g.gate.qubits;
        t.clbit = g.gate.clbit;
        t.start = start;
        t.end = end;
        sched.gates[index] = std::move(t);
        sched.duration = std::max(sched.duration, end);
    };

    if (!cr.sync_barriers) {
        for (std::size_t i = 0; i < cr.gates.size(); ++i) place_gate(i, 0);
        return sched;
    }

    // shared fences: the k-th barrier of every member starts at a common time
    std::vector<std::vector<std::size_t>> member_gates(cr.members.size());
    for (std::size_t i = 0; i < cr.gates.size(); ++i)
        member_gates[static_cast<std::size_t>(cr.gates[i].member)].push_back(i);

    // per member: [begin, end) positions into member_gates, one per segment;
    // the trailing barrier (when present) belongs to its segment
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> segments(cr.members.size());
    for (std::size_t m = 0; m < cr.members.size(); ++m) {
        const auto& idxs = member_gates[m];
        std::size_t begin = 0;
        for (std::size_t j = 0; j < idxs.size(); ++j) {
            if (cr.gates[idxs[j]].gate.kind == GateKind::Barrier) {
                segments[m].push_back({begin, j + 1});
                begin = j + 1;
            }
        }
        if (begin < idxs.size()) segments[m].push_back({begin, idxs.size()});
    }

    std::size_t max_segments = 0;
    for (const auto& segs : segments) max_segments = std::max(max_segments, segs.size());
    std::int64_t fence = 0;
    for (std::size_t ordinal = 0; ordinal < max_segments; ++ordinal) {
        std::int64_t next_fence = fence;
        for (std::size_t m = 0; m < cr.members.size(); ++m) {
            if (ordinal >= segments[m].size()) continue;
            auto [b, e] = segments[m][ordinal];
            for (std::size_t j = b; j < e; ++j) {
                std::size_t composed = member_gates[m][j];
                place_gate(composed, fence);
                next_fence = std::max(next_fence, sched.gates[composed].end);
            }
        }
        fence = next_fence;
    }
    return sched;
}

ExecutionEstimate estimate(const std::vector<CircuitIR>& queue, const BatchPlan& plan,
                           const HardwareModel& h) {
    ExecutionEstimate est;
    for (const RoundPlan& round : plan.rounds) {
        ComposedRound cr = compose_round(queue, round, h);
        Schedule sched = schedule_asap(cr, h);
        est.round_duration_dt.push_back(sched.duration);
        int used = 0;
        for (const ComposedMember& m : cr.members) used += m.circuit.n_qubits;
        est.round_usage.push_back(static_cast<double>(used) /
                                  static_cast<double>(h.n_qubits));
        est.total_duration_dt += sched.duration;
    }
    if (!est.round_usage.empty()) {
        double sum = 0.0;
        for (double u : est.round_usage) sum += u;
        est.mean_usage = sum / static_cast<double>(est.round_usage.size());
    }
    return est;
}

}  // namespace qmpack
