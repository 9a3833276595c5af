#include "qmpack/statevector.hpp"

#include <cmath>
#include <stdexcept>

namespace qmpack {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
using cd = std::complex<double>;
}  // namespace

Statevector::Statevector(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 0 || n_qubits > 30) throw std::invalid_argument("bad qubit count");
    amp_.assign(std::size_t{1} << n_qubits, cd{0.0, 0.0});
    amp_[0] = cd{1.0, 0.0};
}

void gate_matrix_1q(const GateOp& g, cd out[2][2]) {
    auto expi = [](double x) { return cd{std::cos(x), std::sin(x)}; };
    auto u3 = [&](double theta, double phi, double lambda) {
        out[0][0] = std::cos(theta / 2);
        out[0][1] = -expi(lambda) * std::sin(theta / 2);
        out[1][0] = expi(phi) * std::sin(theta / 2);
        out[1][1] = expi(phi + lambda) * std::cos(theta / 2);
    };
    switch (g.kind) {
        case GateKind::U1:
            out[0][0] = 1;
            out[0][1] = 0;
            out[1][0] = 0;
            out[1][1] = expi(g.params[0].value);
            return;
        case GateKind::Rz:
            out[0][0] = expi(-g.params[0].value / 2);
            out[0][1] = 0;
            out[1][0] = 0;
            out[1][1] = expi(g.params[0].value / 2);
            return;
        case GateKind::U2:
            u3(kPi / 2, g.params[0].value, g.params[1].value);
            return;
        case GateKind::U3:
            u3(g.params[0].value, g.params[1].value, g.params[2].value);
            return;
        case GateKind::Sx:
            out[0][0] = cd{0.5, 0.5};
            out[0][1] = cd{0.5, -0.5};
            out[1][0] = cd{0.5, -0.5};
            out[1][1] = cd{0.5, 0.5};
            return;
        case GateKind::X:
            out[0][0] = 0;
            out[0][1] = 1;
            out[1][0] = 1;
            out[1][1] = 0;
            return;
        case GateKind::H: {
            double s = 1.0 / std::sqrt(2.0);
            out[0][0] = s;
            out[0][1] = s;
            out[1][0] = s;
            out[1][1] = -s;
            return;
        }
        case GateKind::T:
            out[0][0] = 1;
            out[0][1] = 0;
            out[1][0] = 0;
            out[1][1] = expi(kPi / 4);
            return;
        case GateKind::Tdg:
            out[0][0] = 1;
            out[0][1] = 0;
            out[1][0] = 0;
            out[1][1] = expi(-kPi / 4);
            return;
        case GateKind::S:
            out[0][0] = 1;
            out[0][1] = 0;
            out[1][0] = 0;
            out[1][1] = cd{0.0, 1.0};
            return;
        case GateKind::Sdg:
            out[0][0] = 1;
            out[0][1] = 0;
            out[1][0] = 0;
            out[1][1] = cd{0.0, -1.0};
            return;
        default:
            throw std::invalid_argument("not a one-qubit unitary");
    }
}

void Statevector::apply(const GateOp& g) {
    if (g.kind == GateKind::Barrier || g.kind == GateKind::Measure)
        throw std::invalid_argument("apply expects a unitary gate");
    if (g.kind == GateKind::Cx) {
        apply_cx(g.qubits[0], g.qubits[1]);
        return;
    }
    cd m[2][2];
    gate_matrix_1q(g, m);
    apply_1q(m, g.qubits[0]);
}

void Statevector::apply_1q(const cd m[2][2], int q) {
    const std::size_t stride = std::size_t{1} << q;
    const std::size_t size = amp_.size();
    for (std::size_t base = 0; base < size; base += 2 * stride) {
        for (std::size_t offset = 0; offset < stride; ++offset) {
            std::size_t i0 = base + offset;
            std::size_t i1 = i0 + stride;
            cd a0 = amp_[i0], a1 = amp_[i1];
            amp_[i0] = m[0][0] * a0 + m[0][1] * a1;
            amp_[i1] = m[1][0] * a0 + m[1][1] * a1;
        }
    }
}

void Statevector::apply_cx(int control, int target) {
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    const std::size_t size = amp_.size();
    for (std::size_t i = 0; i < size; ++i) {
        if ((i & cbit) && !(i & tbit)) std::swap(amp_[i], amp_[i | tbit]);
    }
}

void Statevector::apply_pauli(int q, int which) {
    const std::size_t bit = std::size_t{1} << q;
    const std::size_t size = amp_.size();
    switch (which) {
        case 1:  // X
            for (std::size_t i = 0; i < size; ++i)
                if (!(i & bit)) std::swap(amp_[i], amp_[i | bit]);
            return;
        case 2:  // Y
            for (std::size_t i = 0; i < size; ++i) {
                if (i & bit) continue;
                cd lo = amp_[i], hi = amp_[i | bit];
                amp_[i] = cd{0.0, -1.0} * hi;
                amp_[i | bit] = cd{0.0, 1.0} * lo;
            }
            return;
        case 3:  // Z
            for (std::size_t i = 0; i < size; ++i)
                if (i & bit) amp_[i] = -amp_[i];
            return;
        default:
            throw std::invalid_argument("pauli index must be 1..3");
    }
}

double Statevector::prob_one(int q) const {
    const std::size_t bit = std::size_t{1} << q;
    double p = 0.0;
    for (std::size_t i = 0; i < amp_.size(); ++i)
        if (i & bit) p += std::norm(amp_[i]);
    return p;
}

int Statevector::measure(int q, double u) {
    double p1 = prob_one(q);
    int outcome = u < p1 ? 1 : 0;
    const std::size_t bit = std::size_t{1} << q;
    double keep = outcome == 1 ? p1 : 1.0 - p1;
    if (keep <= 0.0) keep = 1e-300;  // degenerate draw on a zero branch
    double scale = 1.0 / std::sqrt(keep);
    for (std::size_t i = 0; i < amp_.size(); ++i) {
        bool one = (i & bit) != 0;
        if (one == (outcome == 1))
            amp_[i] *= scale;
        else
            amp_[i] = cd{0.0, 0.0};
    }
    return outcome;
}

double Statevector::norm() const {
    double total = 0.0;
    for (const cd& a : amp_) total += std::norm(a);
    return std::sqrt(total);
}

}  // namespace qmpack
