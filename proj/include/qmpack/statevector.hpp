#pragma once

#include <complex>
#include <vector>

#include "qmpack/circuit.hpp"

namespace qmpack {

/// Dense statevector over a small qubit count (qubit 0 is the least
/// significant bit of the basis index).
class Statevector {
public:
    explicit Statevector(int n_qubits);

    int n_qubits() const { return n_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amp_; }

    /// Applies a unitary gate (barrier/measure are rejected).
    void apply(const GateOp& g);

    /// which: 1 = X, 2 = Y, 3 = Z
    void apply_pauli(int q, int which);

    double prob_one(int q) const;

    /// Projective measurement given a uniform draw u in [0,1); collapses and
    /// renormalizes.
    int measure(int q, double u);

    double norm() const;

private:
    void apply_1q(const std::complex<double> m[2][2], int q);
    void apply_cx(int control, int target);

    int n_;
    std::vector<std::complex<double>> amp_;
};

/// 2x2 matrix of a one-qubit gate kind (throws for cx/barrier/measure).
void gate_matrix_1q(const GateOp& g, std::complex<double> out[2][2]);

}  // namespace qmpack
