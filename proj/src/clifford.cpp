#include "qmpack/clifford.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <queue>
#include <stdexcept>

namespace qmpack {

namespace {

int popcount8(std::uint8_t v) { return std::popcount(static_cast<unsigned>(v)); }

/// Pauli in i^phase * X^x Z^z form (phase mod 4).
struct XZForm {
    int phase = 0;
    std::uint8_t x = 0;
    std::uint8_t z = 0;
};

XZForm to_xz(std::uint8_t x, std::uint8_t z, std::uint8_t sign) {
    return {(2 * sign + popcount8(static_cast<std::uint8_t>(x & z))) & 3, x, z};
}

void multiply(XZForm& acc, const XZForm& rhs) {
    acc.phase = (acc.phase + rhs.phase + 2 * popcount8(static_cast<std::uint8_t>(acc.z & rhs.x))) & 3;
    acc.x ^= rhs.x;
    acc.z ^= rhs.z;
}

/// Conjugates the sign-tracked Pauli (x, z, sign) by the Clifford t.
void conjugate_pauli(const CliffordTableau& t, std::uint8_t x, std::uint8_t z,
                     std::uint8_t sign, std::uint8_t& out_x, std::uint8_t& out_z,
                     std::uint8_t& out_sign) {
    XZForm acc{(2 * sign + popcount8(static_cast<std::uint8_t>(x & z))) & 3, 0, 0};
    for (int q = 0; q < t.n; ++q) {
        std::uint8_t bit = static_cast<std::uint8_t>(1u << q);
        if (x & bit)
            multiply(acc, to_xz(t.row_x[static_cast<std::size_t>(q)],
                                t.row_z[static_cast<std::size_t>(q)],
                                t.row_sign[static_cast<std::size_t>(q)]));
        if (z & bit)
            multiply(acc, to_xz(t.row_x[static_cast<std::size_t>(t.n + q)],
                                t.row_z[static_cast<std::size_t>(t.n + q)],
                                t.row_sign[static_cast<std::size_t>(t.n + q)]));
    }
    int w = popcount8(static_cast<std::uint8_t>(acc.x & acc.z));
    int residue = (acc.phase - w) & 3;
    if (residue & 1) throw std::logic_error("clifford conjugation produced phase i");
    out_x = acc.x;
    out_z = acc.z;
    out_sign = static_cast<std::uint8_t>(residue >> 1);
}

}  // namespace

CliffordTableau CliffordTableau::identity(int n) {
    if (n < 1 || n > 2) throw std::invalid_argument("tableau supports 1 or 2 qubits");
    CliffordTableau t;
    t.n = n;
    for (int q = 0; q < n; ++q) {
        t.row_x[static_cast<std::size_t>(q)] = static_cast<std::uint8_t>(1u << q);
        t.row_z[static_cast<std::size_t>(n + q)] = static_cast<std::uint8_t>(1u << q);
    }
    return t;
}

bool CliffordTableau::is_identity() const { return *this == identity(n); }

bool CliffordTableau::operator==(const CliffordTableau& other) const {
    if (n != other.n) return false;
    for (int r = 0; r < 2 * n; ++r) {
        std::size_t i = static_cast<std::size_t>(r);
        if (row_x[i] != other.row_x[i] || row_z[i] != other.row_z[i] ||
            row_sign[i] != other.row_sign[i])
            return false;
    }
    return true;
}

std::uint32_t CliffordTableau::key() const {
    std::uint32_t k = 0;
    for (int r = 0; r < 2 * n; ++r) {
        std::size_t i = static_cast<std::size_t>(r);
        std::uint32_t row = static_cast<std::uint32_t>(row_x[i]) |
                            (static_cast<std::uint32_t>(row_z[i]) << n) |
                            (static_cast<std::uint32_t>(row_sign[i]) << (2 * n));
        k = (k << (2 * n + 1)) | row;
    }
    return k;
}

void CliffordTableau::conjugate_h(int q) {
    std::uint8_t bit = static_cast<std::uint8_t>(1u << q);
    for (int r = 0; r < 2 * n; ++r) {
        std::size_t i = static_cast<std::size_t>(r);
        std::uint8_t xq = row_x[i] & bit;
        std::uint8_t zq = row_z[i] & bit;
        if (xq && zq) row_sign[i] ^= 1;
        row_x[i] = static_cast<std::uint8_t>((row_x[i] & ~bit) | (zq ? bit : 0));
        row_z[i] = static_cast<std::uint8_t>((row_z[i] & ~bit) | (xq ? bit : 0));
    }
}

void CliffordTableau::conjugate_s(int q) {
    std::uint8_t bit = static_cast<std::uint8_t>(1u << q);
    for (int r = 0; r < 2 * n; ++r) {
        std::size_t i = static_cast<std::size_t>(r);
        if ((row_x[i] & bit) && (row_z[i] & bit)) row_sign[i] ^= 1;
        if (row_x[i] & bit) row_z[i] ^= bit;
    }
}

void CliffordTableau::conjugate_sdg(int q) {
    std::uint8_t bit = static_cast<std::uint8_t>(1u << q);
    for (int r = 0; r < 2 * n; ++r) {
        std::size_t i = static_cast<std::size_t>(r);
        if ((row_x[i] & bit) && !(row_z[i] & bit)) row_sign[i] ^= 1;
        if (row_x[i] & bit) row_z[i] ^= bit;
    }
}

void CliffordTableau::conjugate_cx(int control, int target) {
    std::uint8_t cbit = static_cast<std::uint8_t>(1u << control);
    std::uint8_t tbit = static_cast<std::uint8_t>(1u << target);
    for (int r = 0; r < 2 * n; ++r) {
        std::size_t i = static_cast<std::size_t>(r);
        bool xc = row_x[i] & cbit, xt = row_x[i] & tbit;
        bool zc = row_z[i] & cbit, zt = row_z[i] & tbit;
        if (xc && zt && (xt == zc)) row_sign[i] ^= 1;
        if (xc) row_x[i] ^= tbit;
        if (zt) row_z[i] ^= cbit;
    }
}

CliffordTableau compose(const CliffordTableau& apply_second,
                        const CliffordTableau& apply_first) {
    if (apply_second.n != apply_first.n) throw std::invalid_argument("tableau size mismatch");
    CliffordTableau out;
    out.n = apply_first.n;
    for (int r = 0; r < 2 * out.n; ++r) {
        std::size_t i = static_cast<std::size_t>(r);
        conjugate_pauli(apply_second, apply_first.row_x[i], apply_first.row_z[i],
                        apply_first.row_sign[i], out.row_x[i], out.row_z[i], out.row_sign[i]);
    }
    return out;
}

CliffordTableau inverse(const CliffordTableau& t) {
    const int dim = 2 * t.n;
    // binary matrix rows: (x bits | z bits) per tableau row
    auto row_bits = [&](int r) {
        return static_cast<unsigned>(t.row_x[static_cast<std::size_t>(r)]) |
               (static_cast<unsigned>(t.row_z[static_cast<std::size_t>(r)]) << t.n);
    };
    // invert over GF(2) with Gauss-Jordan on [M | I]
    std::array<unsigned, 4> m{};
    std::array<unsigned, 4> inv{};
    for (int r = 0; r < dim; ++r) {
        m[static_cast<std::size_t>(r)] = row_bits(r);
        inv[static_cast<std::size_t>(r)] = 1u << r;
    }
    for (int col = 0; col < dim; ++col) {
        int pivot = -1;
        for (int r = col; r < dim; ++r)
            if (m[static_cast<std::size_t>(r)] & (1u << col)) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw std::logic_error("singular tableau matrix");
        std::swap(m[static_cast<std::size_t>(col)], m[static_cast<std::size_t>(pivot)]);
        std::swap(inv[static_cast<std::size_t>(col)], inv[static_cast<std::size_t>(pivot)]);
        for (int r = 0; r < dim; ++r) {
            if (r == col) continue;
            if (m[static_cast<std::size_t>(r)] & (1u << col)) {
                m[static_cast<std::size_t>(r)] ^= m[static_cast<std::size_t>(col)];
                inv[static_cast<std::size_t>(r)] ^= inv[static_cast<std::size_t>(col)];
            }
        }
    }
    // inv rows express source generators in terms of target generators; read
    // back as a candidate tableau with zero signs, then repair signs so that
    // t ∘ candidate is the identity
    CliffordTableau cand;
    cand.n = t.n;
    for (int r = 0; r < dim; ++r) {
        std::size_t i = static_cast<std::size_t>(r);
        unsigned bits = inv[i];
        cand.row_x[i] = static_cast<std::uint8_t>(bits & ((1u << t.n) - 1));
        cand.row_z[i] = static_cast<std::uint8_t>((bits >> t.n) & ((1u << t.n) - 1));
        cand.row_sign[i] = 0;
    }
    CliffordTableau check = compose(t, cand);
    for (int r = 0; r < dim; ++r) {
        std::size_t i = static_cast<std::size_t>(r);
        cand.row_sign[i] ^= check.row_sign[i];
    }
    return cand;
}

CliffordGroup::CliffordGroup(int n) : n_(n) {
    std::vector<GateOp> gens;
    auto g1 = [](GateKind k, int q) {
        GateOp g;
        g.kind = k;
        g.qubits = {q};
        return g;
    };
    for (int q = 0; q < n; ++q) {
        gens.push_back(g1(GateKind::H, q));
        gens.push_back(g1(GateKind::S, q));
        gens.push_back(g1(GateKind::Sdg, q));
    }
    if (n == 2) {
        GateOp cx01;
        cx01.kind = GateKind::Cx;
        cx01.qubits = {0, 1};
        gens.push_back(cx01);
        GateOp cx10;
        cx10.kind = GateKind::Cx;
        cx10.qubits = {1, 0};
        gens.push_back(cx10);
    }

    auto apply_gen = [](CliffordTableau t, const GateOp& g) {
        switch (g.kind) {
            case GateKind::H: t.conjugate_h(g.qubits[0]); break;
            case GateKind::S: t.conjugate_s(g.qubits[0]); break;
            case GateKind::Sdg: t.conjugate_sdg(g.qubits[0]); break;
            case GateKind::Cx: t.conjugate_cx(g.qubits[0], g.qubits[1]); break;
            default: throw std::logic_error("unexpected generator");
        }
        return t;
    };

    // closure by least (cx count, gate count): decompositions come out
    // cx-optimal, the convention RB circuit generation wants
    using Cost = std::pair<std::size_t, std::size_t>;
    auto cost_of = [](const std::vector<GateOp>& decomp) {
        std::size_t cx = 0;
        for (const GateOp& g : decomp)
            if (g.kind == GateKind::Cx) ++cx;
        return Cost{cx, decomp.size()};
    };
    std::map<std::uint32_t, std::size_t> seen;
    CliffordTableau id = CliffordTableau::identity(n);
    elements_.push_back(id);
    decompositions_.push_back({});
    seen[id.key()] = 0;
    std::priority_queue<std::pair<Cost, std::size_t>, std::vector<std::pair<Cost, std::size_t>>,
                        std::greater<>>
        frontier;
    frontier.push({Cost{0, 0}, 0});
    while (!frontier.empty()) {
        auto [cost, cur] = frontier.top();
        frontier.pop();
        if (cost != cost_of(decompositions_[cur])) continue;  // stale entry
        for (const GateOp& g : gens) {
            CliffordTableau next = apply_gen(elements_[cur], g);
            std::uint32_t key = next.key();
            std::vector<GateOp> decomp = decompositions_[cur];
            decomp.push_back(g);
            Cost next_cost = cost_of(decomp);
            auto it = seen.find(key);
            if (it == seen.end()) {
                seen[key] = elements_.size();
                elements_.push_back(next);
                decompositions_.push_back(std::move(decomp));
                frontier.push({next_cost, elements_.size() - 1});
            } else if (next_cost < cost_of(decompositions_[it->second])) {
                decompositions_[it->second] = std::move(decomp);
                frontier.push({next_cost, it->second});
            }
        }
    }

    key_to_index_.resize(elements_.size());
    keys_.resize(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) keys_[i] = elements_[i].key();
    std::vector<std::size_t> order(elements_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [this](std::size_t a, std::size_t b) { return keys_[a] < keys_[b]; });
    key_to_index_ = order;
    std::sort(keys_.begin(), keys_.end());

    std::size_t total_cx = 0;
    for (const auto& decomp : decompositions_)
        total_cx += static_cast<std::size_t>(
            std::count_if(decomp.begin(), decomp.end(),
                          [](const GateOp& g) { return g.kind == GateKind::Cx; }));
    average_cx_ = static_cast<double>(total_cx) / static_cast<double>(elements_.size());
}

const CliffordGroup& CliffordGroup::instance(int n) {
    if (n == 1) {
        static const CliffordGroup group1(1);
        return group1;
    }
    if (n == 2) {
        static const CliffordGroup group2(2);
        return group2;
    }
    throw std::invalid_argument("clifford group supports 1 or 2 qubits");
}

std::size_t CliffordGroup::index_of(const CliffordTableau& t) const {
    std::uint32_t key = t.key();
    auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
    if (it == keys_.end() || *it != key) throw std::invalid_argument("unknown tableau");
    return key_to_index_[static_cast<std::size_t>(it - keys_.begin())];
}

double CliffordGroup::mean_decay_factor(double per_cx) const {
    double sum = 0.0;
    for (const auto& decomp : decompositions_) {
        double f = 1.0;
        for (const GateOp& g : decomp)
            if (g.kind == GateKind::Cx) f *= per_cx;
        sum += f;
    }
    return sum / static_cast<double>(decompositions_.size());
}

SampledClifford random_clifford(int n, std::mt19937_64& rng) {
    const CliffordGroup& group = CliffordGroup::instance(n);
    std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
    SampledClifford sample;
    sample.index = pick(rng);
    sample.tableau = group.element(sample.index);
    sample.gates = group.decomposition(sample.index);
    return sample;
}

}  // namespace qmpack
