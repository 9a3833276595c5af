#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmpack/circuit.hpp"
#include "qmpack/hardware.hpp"
#include "qmpack/layout.hpp"

namespace qmpack {

struct ComposedMember {
    int queue_index = -1;
    std::string name;
    CircuitIR circuit;  // program-space member circuit
    LayoutMap layout;
    int clbit_offset = 0;
    int clbit_count = 0;
};

struct ComposedGate {
    GateOp gate;  // device-space operands, device-space clbit
    int member = -1;
    int member_gate = -1;
};

/// One round's circuits merged into a device-wide gate stream. Members share
/// no qubits; classical bits are sliced per member.
struct ComposedRound {
    int device_qubits = 0;
    std::vector<ComposedMember> members;
    std::vector<ComposedGate> gates;
    /// When set, the k-th barrier of every member is a shared fence; the
    /// simultaneous-RB builder uses this to align Clifford layers.
    bool sync_barriers = false;

    int total_clbits() const;
    CircuitIR to_circuit(const std::string& name) const;
};

ComposedRound compose_round(const std::vector<CircuitIR>& queue, const RoundPlan& round,
                            const HardwareModel& h);

/// Assembles a round directly from (circuit, layout) pairs (used by the
/// characterization drivers).
ComposedRound compose_members(const std::vector<CircuitIR>& circuits,
                              const std::vector<LayoutMap>& layouts, const HardwareModel& h,
                              bool sync_barriers);

struct TimedGate {
    int member = -1;
    int member_gate = -1;
    GateKind kind = GateKind::X;
    std::vector<int> phys;
    int clbit = -1;
    std::int64_t start = 0;
    std::int64_t end = 0;
};

struct Schedule {
    std::vector<TimedGate> gates;  // composed-stream order
    std::int64_t duration = 0;
};

/// As-soon-as-possible start times given operand availability and the model's
/// gate durations. Barriers take no time but order their operands.
Schedule schedule_asap(const ComposedRound& cr, const HardwareModel& h);

struct ExecutionEstimate {
    std::vector<std::int64_t> round_duration_dt;
    std::vector<double> round_usage;
    std::int64_t total_duration_dt = 0;
    double mean_usage = 0.0;
};

ExecutionEstimate estimate(const std::vector<CircuitIR>& queue, const BatchPlan& plan,
                           const HardwareModel& h);

}  // namespace qmpack
