#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "qmpack/circuit.hpp"

namespace qmpack {

/// Symplectic representation of an n-qubit Clifford (n in {1, 2}): rows hold
/// the images of X_i and Z_i as sign-tracked Paulis. Global phase is not
/// represented, so the group sizes are 24 and 11520.
struct CliffordTableau {
    int n = 1;
    // rows 0..n-1: image of X_i; rows n..2n-1: image of Z_i
    std::array<std::uint8_t, 4> row_x{};
    std::array<std::uint8_t, 4> row_z{};
    std::array<std::uint8_t, 4> row_sign{};

    static CliffordTableau identity(int n);

    bool is_identity() const;
    bool operator==(const CliffordTableau& other) const;

    /// Packed canonical encoding (fits 32 bits for n <= 2).
    std::uint32_t key() const;

    /// In-place conjugation of all rows by a generator gate.
    void conjugate_h(int q);
    void conjugate_s(int q);
    void conjugate_sdg(int q);
    void conjugate_cx(int control, int target);
};

/// apply_second ∘ apply_first
CliffordTableau compose(const CliffordTableau& apply_second,
                        const CliffordTableau& apply_first);

CliffordTableau inverse(const CliffordTableau& t);

/// The full n-qubit Clifford group, enumerated once per process by closure
/// from {h, s, sdg, cx}; every element carries a shortest gate decomposition.
class CliffordGroup {
public:
    static const CliffordGroup& instance(int n);

    int n_qubits() const { return n_; }
    std::size_t size() const { return elements_.size(); }
    const CliffordTableau& element(std::size_t index) const { return elements_[index]; }
    const std::vector<GateOp>& decomposition(std::size_t index) const {
        return decompositions_[index];
    }
    std::size_t index_of(const CliffordTableau& t) const;
    double average_cx_count() const { return average_cx_; }

    /// Mean depolarizing factor of one uniformly drawn Clifford when every cx
    /// carries factor `per_cx` (exact over the enumerated decompositions).
    double mean_decay_factor(double per_cx) const;

private:
    explicit CliffordGroup(int n);

    int n_;
    std::vector<CliffordTableau> elements_;
    std::vector<std::vector<GateOp>> decompositions_;
    std::vector<std::uint32_t> keys_;  // sorted copy for index lookup
    std::vector<std::size_t> key_to_index_;
    double average_cx_ = 0.0;
};

struct SampledClifford {
    std::size_t index = 0;
    CliffordTableau tableau;
    std::vector<GateOp> gates;
};

/// Uniform draw over the n-qubit Clifford group.
SampledClifford random_clifford(int n, std::mt19937_64& rng);

}  // namespace qmpack
