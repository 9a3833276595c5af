#include "qmpack/rb.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "qmpack/clifford.hpp"
#include "qmpack/compose.hpp"

namespace qmpack {

std::string RBTarget::label() const {
    std::string s;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (i) s += '-';
        s += std::to_string(qubits[i]);
    }
    return s;
}

void RBConfig::validate() const {
    std::set<int> distinct(lengths.begin(), lengths.end());
    if (distinct.size() < 3) throw std::invalid_argument("rb needs >= 3 distinct lengths");
    for (int m : lengths)
        if (m < 1) throw std::invalid_argument("rb lengths must be >= 1");
    if (samples < 1) throw std::invalid_argument("rb needs samples >= 1");
    if (shots < 1) throw std::invalid_argument("rb needs shots >= 1");
}

DecayFit fit_decay(const std::vector<double>& lengths, const std::vector<double>& survival) {
    if (lengths.size() != survival.size() || lengths.size() < 3)
        throw std::invalid_argument("fit needs >= 3 points");
    const std::size_t n = lengths.size();

    DecayFit fit;
    double lo = *std::min_element(survival.begin(), survival.end());
    double hi = *std::max_element(survival.begin(), survival.end());
    if (hi - lo < 1e-9) {
        // flat data: no decay to fit
        fit.amplitude = 0.0;
        fit.alpha = 1.0;
        fit.baseline = (hi + lo) / 2.0;
        fit.residual = 0.0;
        fit.ok = true;
        return fit;
    }

    // log-linear initialization on (P - B0)
    double b0 = std::max(lo - 1e-6, 0.0);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double y = std::log(std::max(survival[i] - b0, 1e-9));
        sx += lengths[i];
        sy += y;
        sxx += lengths[i] * lengths[i];
        sxy += lengths[i] * y;
    }
    double denom = n * sxx - sx * sx;
    double slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
    bool decreasing = slope < 0.0;

    double a = std::clamp(hi - lo, 1e-6, 1.0);
    double alpha = std::clamp(std::exp(slope), 1e-6, 1.0);
    double b = b0;

    auto sse = [&](double pa, double palpha, double pb) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double r = pa * std::pow(palpha, lengths[i]) + pb - survival[i];
            total += r * r;
        }
        return total;
    };

    double lambda = 1e-3;
    double current = sse(a, alpha, b);
    for (int iter = 0; iter < 200; ++iter) {
        // Jacobian and normal equations for (A, alpha, B)
        double jtj[3][3] = {};
        double jtr[3] = {};
        for (std::size_t i = 0; i < n; ++i) {
            double am = std::pow(alpha, lengths[i]);
            double r = a * am + b - survival[i];
            double j0 = am;
            double j1 = lengths[i] > 0 ? a * lengths[i] * std::pow(alpha, lengths[i] - 1) : 0.0;
            double j2 = 1.0;
            double j[3] = {j0, j1, j2};
            for (int p = 0; p < 3; ++p) {
                for (int q = 0; q < 3; ++q) jtj[p][q] += j[p] * j[q];
                jtr[p] += j[p] * r;
            }
        }
        double m[3][4];
        for (int p = 0; p < 3; ++p) {
            for (int q = 0; q < 3; ++q) m[p][q] = jtj[p][q];
            m[p][p] += lambda * (jtj[p][p] > 1e-12 ? jtj[p][p] : 1.0);
            m[p][3] = -jtr[p];
        }
        // 3x3 Gaussian elimination with partial pivoting
        bool singular = false;
        for (int col = 0; col < 3 && !singular; ++col) {
            int pivot = col;
            for (int r = col + 1; r < 3; ++r)
                if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
            if (std::abs(m[pivot][col]) < 1e-14) {
                singular = true;
                break;
            }
            std::swap(m[col], m[pivot]);
            for (int r = 0; r < 3; ++r) {
                if (r == col) continue;
                double f = m[r][col] / m[col][col];
                for (int q = col; q < 4; ++q) m[r][q] -= f * m[col][q];
            }
        }
        if (singular) break;
        double da = m[0][3] / m[0][0];
        double dalpha = m[1][3] / m[1][1];
        double db = m[2][3] / m[2][2];
        double na = std::clamp(a + da, 0.0, 1.0);
        double nalpha = std::clamp(alpha + dalpha, 1e-6, 1.0);
        double nb = std::clamp(b + db, 0.0, 1.0);
        double next = sse(na, nalpha, nb);
        if (next < current) {
            double improvement = current - next;
            a = na;
            alpha = nalpha;
            b = nb;
            current = next;
            lambda = std::max(lambda / 3.0, 1e-12);
            if (improvement < 1e-15) break;
        } else {
            lambda *= 4.0;
            if (lambda > 1e12) break;
        }
    }

    fit.amplitude = a;
    fit.alpha = alpha;
    fit.baseline = b;
    fit.residual = std::sqrt(current / static_cast<double>(n));
    fit.ok = decreasing;
    return fit;
}

CircuitIR gen_rb_circuit(int n_qubits, int length, std::uint64_t seed) {
    if (length < 1) throw std::invalid_argument("rb length must be >= 1");
    std::mt19937_64 rng(seed);
    CircuitIR c;
    c.n_qubits = n_qubits;
    c.n_clbits = n_qubits;
    c.name = "rb" + std::to_string(n_qubits) + "q_m" + std::to_string(length);

    std::vector<int> all_qubits(static_cast<std::size_t>(n_qubits));
    for (int q = 0; q < n_qubits; ++q) all_qubits[static_cast<std::size_t>(q)] = q;
    GateOp barrier;
    barrier.kind = GateKind::Barrier;
    barrier.qubits = all_qubits;

    CliffordTableau total = CliffordTableau::identity(n_qubits);
    for (int layer = 0; layer < length; ++layer) {
        SampledClifford sample = random_clifford(n_qubits, rng);
        for (const GateOp& g : sample.gates) c.gates.push_back(g);
        c.gates.push_back(barrier);
        total = compose(sample.tableau, total);
    }
    const CliffordGroup& group = CliffordGroup::instance(n_qubits);
    CliffordTableau inv = inverse(total);
    for (const GateOp& g : group.decomposition(group.index_of(inv))) c.gates.push_back(g);
    c.gates.push_back(barrier);
    for (int q = 0; q < n_qubits; ++q) {
        GateOp meas;
        meas.kind = GateKind::Measure;
        meas.qubits = {q};
        meas.clbit = q;
        c.gates.push_back(meas);
    }
    return c;
}

namespace {

LayoutMap target_layout(const RBTarget& target) {
    LayoutMap layout;
    for (std::size_t i = 0; i < target.qubits.size(); ++i)
        layout.to_physical[static_cast<int>(i)] = target.qubits[i];
    return layout;
}

double survival_from_counts(const MemberCounts& counts, int n_qubits) {
    std::string zeros(static_cast<std::size_t>(n_qubits), '0');
    auto it = counts.counts.find(zeros);
    std::int64_t hit = it == counts.counts.end() ? 0 : it->second;
    return static_cast<double>(hit) / static_cast<double>(counts.shots);
}

}  // namespace

std::vector<RBResult> run_rb(const std::vector<RBTarget>& targets, bool simultaneous,
                             const RBConfig& cfg, const NoiseModel& nm,
                             const HardwareModel& h) {
    cfg.validate();
    if (targets.empty()) throw std::invalid_argument("rb needs at least one target");
    std::set<int> used;
    for (const RBTarget& t : targets) {
        if (t.qubits.empty() || t.qubits.size() > 2)
            throw std::invalid_argument("rb targets hold 1 or 2 qubits");
        for (int q : t.qubits) {
            if (q < 0 || q >= h.n_qubits)
                throw std::invalid_argument("rb target qubit out of range");
            if (!used.insert(q).second)
                throw std::invalid_argument("rb targets overlap on qubit " + std::to_string(q));
        }
    }

    std::vector<RBResult> results(targets.size());
    for (std::size_t ti = 0; ti < targets.size(); ++ti) {
        results[ti].target = targets[ti];
        results[ti].lengths = cfg.lengths;
        results[ti].survival_samples.assign(cfg.lengths.size(), {});
    }

    for (std::size_t li = 0; li < cfg.lengths.size(); ++li) {
        int length = cfg.lengths[li];
        for (int si = 0; si < cfg.samples; ++si) {
            std::vector<CircuitIR> circuits(targets.size());
            std::vector<LayoutMap> layouts(targets.size());
            for (std::size_t ti = 0; ti < targets.size(); ++ti) {
                std::uint64_t seq_seed =
                    mix_seed({cfg.seed, 0x5242ULL, ti, li, static_cast<std::uint64_t>(si)});
                circuits[ti] = gen_rb_circuit(static_cast<int>(targets[ti].qubits.size()),
                                              length, seq_seed);
                layouts[ti] = target_layout(targets[ti]);
            }
            if (simultaneous) {
                ComposedRound round = compose_members(circuits, layouts, h, true);
                std::uint64_t sim_seed =
                    mix_seed({cfg.seed, 0x53494DULL, 2, li, static_cast<std::uint64_t>(si)});
                ShotCounts counts = simulate_round(round, h, nm, cfg.shots, sim_seed);
                for (std::size_t ti = 0; ti < targets.size(); ++ti)
                    results[ti].survival_samples[li].push_back(survival_from_counts(
                        counts.members[ti], static_cast<int>(targets[ti].qubits.size())));
            } else {
                for (std::size_t ti = 0; ti < targets.size(); ++ti) {
                    ComposedRound round =
                        compose_members({circuits[ti]}, {layouts[ti]}, h, true);
                    std::uint64_t sim_seed = mix_seed(
                        {cfg.seed, 0x53494DULL, 1, ti, li, static_cast<std::uint64_t>(si)});
                    ShotCounts counts = simulate_round(round, h, nm, cfg.shots, sim_seed);
                    results[ti].survival_samples[li].push_back(survival_from_counts(
                        counts.members[0], static_cast<int>(targets[ti].qubits.size())));
                }
            }
        }
    }

    for (RBResult& res : results) {
        std::vector<double> lengths_d, means;
        for (std::size_t li = 0; li < res.lengths.size(); ++li) {
            double sum = 0.0;
            for (double s : res.survival_samples[li]) sum += s;
            double mean = sum / static_cast<double>(res.survival_samples[li].size());
            res.survival_mean.push_back(mean);
            lengths_d.push_back(static_cast<double>(res.lengths[li]));
            means.push_back(mean);
        }
        res.fit = fit_decay(lengths_d, means);
        double dim = std::pow(2.0, static_cast<double>(res.target.qubits.size()));
        res.error_per_clifford = (dim - 1.0) / dim * (1.0 - res.fit.alpha);
    }
    return results;
}

namespace {

struct Stats {
    double mu = 0.0, sigma = 0.0, cv = 0.0;
};

Stats stats_of(const std::vector<double>& values) {
    Stats s;
    if (values.empty()) throw std::invalid_argument("empty distribution");
    for (double v : values) s.mu += v;
    s.mu /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - s.mu) * (v - s.mu);
    var /= static_cast<double>(values.size());  // population variance
    s.sigma = std::sqrt(var);
    if (s.mu == 0.0) throw std::invalid_argument("CV undefined: mean error rate is zero");
    s.cv = s.sigma / s.mu;
    return s;
}

}  // namespace

CharacterizationReport crosstalk_presence_from_eps(const std::vector<std::string>& targets,
                                                   const std::vector<double>& isolated,
                                                   const std::vector<double>& simultaneous) {
    if (targets.empty() || isolated.size() != targets.size() ||
        simultaneous.size() != targets.size())
        throw std::invalid_argument("crosstalk_presence needs aligned non-empty lists");
    CharacterizationReport report;
    report.targets = targets;
    report.isolated_eps = isolated;
    report.simultaneous_eps = simultaneous;
    Stats rb = stats_of(isolated);
    Stats sim = stats_of(simultaneous);
    report.mu_rb = rb.mu;
    report.sigma_rb = rb.sigma;
    report.cv_rb = rb.cv;
    report.mu_simrb = sim.mu;
    report.sigma_simrb = sim.sigma;
    report.cv_simrb = sim.cv;
    report.ct = sim.cv - rb.cv;
    return report;
}

CharacterizationReport crosstalk_presence(const std::vector<RBResult>& isolated,
                                          const std::vector<RBResult>& simultaneous) {
    if (isolated.size() != simultaneous.size() || isolated.empty())
        throw std::invalid_argument("crosstalk_presence needs aligned non-empty results");
    std::vector<std::string> targets;
    std::vector<double> iso, sim;
    for (std::size_t i = 0; i < isolated.size(); ++i) {
        if (isolated[i].target.label() != simultaneous[i].target.label())
            throw std::invalid_argument("crosstalk_presence target mismatch");
        targets.push_back(isolated[i].target.label());
        iso.push_back(isolated[i].error_per_clifford);
        sim.push_back(simultaneous[i].error_per_clifford);
    }
    return crosstalk_presence_from_eps(targets, iso, sim);
}

double gain(const std::map<int, std::vector<double>>& pst_by_buffer) {
    auto mean_of = [](const std::vector<double>& values) {
        if (values.empty()) throw std::invalid_argument("gain: empty PST list");
        double sum = 0.0;
        for (double v : values) sum += v;
        return sum / static_cast<double>(values.size());
    };
    auto base = pst_by_buffer.find(0);
    if (base == pst_by_buffer.end())
        throw std::invalid_argument("gain needs the dense d = 0 level");
    double dense = mean_of(base->second);
    bool any = false;
    double best = 0.0;
    for (int d : {2, 3}) {
        auto it = pst_by_buffer.find(d);
        if (it == pst_by_buffer.end()) continue;
        double g = mean_of(it->second) - dense;
        if (!any || g > best) best = g;
        any = true;
    }
    if (!any) throw std::invalid_argument("gain needs a buffered level d in {2, 3}");
    return best;
}

}  // namespace qmpack
