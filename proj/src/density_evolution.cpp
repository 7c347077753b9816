#include "nbcc/density_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "nbcc/errors.hpp"

namespace nbcc {

namespace {

constexpr int kMaxP = 16;

// [n k]_2 exact in 128-bit, converted to long double on read-out.
struct GaussianTable {
    unsigned __int128 v[kMaxP + 1][kMaxP + 1] = {};
    GaussianTable() {
        for (int n = 0; n <= kMaxP; ++n) {
            v[n][0] = 1;
            for (int k = 1; k <= n; ++k) {
                unsigned __int128 pow2k = static_cast<unsigned __int128>(1) << k;
                v[n][k] = v[n - 1][k - 1] + pow2k * v[n - 1][k];
            }
        }
    }
};

const GaussianTable& gauss_table() {
    static const GaussianTable t;
    return t;
}

long double to_ld(unsigned __int128 x) {
    const auto hi = static_cast<unsigned long long>(x >> 64);
    const auto lo = static_cast<unsigned long long>(x);
    return std::ldexp(static_cast<long double>(hi), 64) + static_cast<long double>(lo);
}

} // namespace

long double gaussian_binomial(int n, int k) {
    if (n < 0 || n > kMaxP) throw std::out_of_range("gaussian_binomial: n out of range");
    if (k < 0 || k > n) return 0.0L;
    return to_ld(gauss_table().v[n][k]);
}

DimensionDistribution channel_distribution(int p, double eps) {
    if (p < 1 || p > kMaxP) throw std::invalid_argument("field exponent out of range");
    if (eps < 0.0 || eps > 1.0) throw std::invalid_argument("erasure probability out of [0,1]");
    DimensionDistribution d;
    d.p = p;
    d.probs.assign(static_cast<size_t>(p) + 1, 0.0);
    // each of the p bits erased independently
    for (int k = 0; k <= p; ++k) {
        double binom = 1.0;
        for (int i = 0; i < k; ++i) binom = binom * (p - i) / (i + 1);
        d.probs[k] = binom * std::pow(eps, k) * std::pow(1.0 - eps, p - k);
    }
    return d;
}

DimensionDistribution known_distribution(int p) {
    DimensionDistribution d;
    d.p = p;
    d.probs.assign(static_cast<size_t>(p) + 1, 0.0);
    d.probs[0] = 1.0;
    return d;
}

bool is_valid_distribution(const DimensionDistribution& d, double tol) {
    if (static_cast<int>(d.probs.size()) != d.p + 1) return false;
    double sum = 0.0;
    for (double x : d.probs) {
        if (x < -tol) return false;
        sum += x;
    }
    return std::abs(sum - 1.0) <= tol;
}

DeKernels::DeKernels(int p) : p_(p) {
    if (p < 1 || p > kMaxP) throw std::invalid_argument("field exponent out of range");
    const int n = p + 1;
    var_.assign(static_cast<size_t>(n) * n * n, 0.0);
    chk_.assign(static_cast<size_t>(n) * n * n, 0.0);
    // For V1, V2 independent uniform subspaces of GF(2)^p with dim d1, d2:
    //   P(dim(V1 cap V2) = d) =
    //     [d1 d]_2 [p-d1 d2-d]_2 2^((d1-d)(d2-d)) / [p d2]_2
    // and dim(V1 + V2) = d1 + d2 - dim(V1 cap V2).
    for (int d1 = 0; d1 <= p; ++d1) {
        for (int d2 = 0; d2 <= p; ++d2) {
            const long double denom = gaussian_binomial(p, d2);
            const int lo = std::max(0, d1 + d2 - p);
            const int hi = std::min(d1, d2);
            for (int d = lo; d <= hi; ++d) {
                long double num = gaussian_binomial(d1, d) * gaussian_binomial(p - d1, d2 - d);
                num = std::ldexp(num, (d1 - d) * (d2 - d));
                const double pr = static_cast<double>(num / denom);
                var_[(static_cast<size_t>(d1) * n + d2) * n + d] = pr;
                chk_[(static_cast<size_t>(d1) * n + d2) * n + (d1 + d2 - d)] = pr;
            }
        }
    }
}

namespace {

// Combining drifts the total mass multiplicatively, so iterated steps need a
// renormalization to stay on the probability simplex.
void renormalize(DimensionDistribution& d) {
    double sum = 0.0;
    for (const double x : d.probs) sum += x;
    if (sum > 0.0)
        for (double& x : d.probs) x /= sum;
}

DimensionDistribution combine_with(const std::vector<double>& table, int p,
                                   const DimensionDistribution& a,
                                   const DimensionDistribution& b) {
    const int n = p + 1;
    DimensionDistribution out;
    out.p = p;
    out.probs.assign(static_cast<size_t>(n), 0.0);
    for (int d1 = 0; d1 < n; ++d1) {
        const double pa = a.probs[d1];
        if (pa == 0.0) continue;
        for (int d2 = 0; d2 < n; ++d2) {
            const double w = pa * b.probs[d2];
            if (w == 0.0) continue;
            const double* row = &table[(static_cast<size_t>(d1) * n + d2) * n];
            for (int d = 0; d < n; ++d) out.probs[d] += w * row[d];
        }
    }
    renormalize(out);
    return out;
}

} // namespace

DimensionDistribution DeKernels::var_combine(const DimensionDistribution& a,
                                             const DimensionDistribution& b) const {
    return combine_with(var_, p_, a, b);
}

DimensionDistribution DeKernels::check_combine(const DimensionDistribution& a,
                                               const DimensionDistribution& b) const {
    return combine_with(chk_, p_, a, b);
}

double de_step_binary(double x, double eps, int J, int K) {
    if (x < 0.0 || x > 1.0 || eps < 0.0 || eps > 1.0)
        throw std::invalid_argument("probabilities out of [0,1]");
    const double y = 1.0 - std::pow(1.0 - x, K - 1);
    return eps * std::pow(y, J - 1);
}

DimensionDistribution de_step_gl(const DimensionDistribution& state, double eps, int J, int K,
                                 const DeKernels& kernels) {
    DimensionDistribution m = state;
    for (int i = 0; i < K - 2; ++i) m = kernels.check_combine(m, state);
    DimensionDistribution v = channel_distribution(state.p, eps);
    for (int i = 0; i < J - 1; ++i) v = kernels.var_combine(v, m);
    return v;
}

DimensionDistribution de_step_gl(const DimensionDistribution& state, double eps, int J, int K) {
    DeKernels kernels(state.p);
    return de_step_gl(state, eps, J, K, kernels);
}

namespace {

bool mass_stalled(double prev, double cur, int& plateau) {
    if (cur >= prev * (1.0 - 1e-12)) {
        ++plateau;
    } else {
        plateau = 0;
    }
    return plateau >= 64;
}

} // namespace

bool de_converges_uncoupled(int J, int K, double eps, const DeKernels& kernels,
                            const ThresholdOptions& opts) {
    DimensionDistribution v = channel_distribution(kernels.p(), eps);
    double mass = v.undetermined_mass();
    if (mass < opts.target_mass) return true;
    int plateau = 0;
    for (int it = 0; it < opts.max_iters; ++it) {
        DimensionDistribution next = de_step_gl(v, eps, J, K, kernels);
        const double next_mass = next.undetermined_mass();
        if (next_mass < opts.target_mass) return true;
        if (next.probs == v.probs) return false;
        if (mass_stalled(mass, next_mass, plateau)) return false;
        v = std::move(next);
        mass = next_mass;
    }
    return false;
}

bool de_converges_coupled(const CoupledEnsemble& ens, double eps, const DeKernels& kernels,
                          const ThresholdOptions& opts) {
    const int L = ens.L;
    const int w = ens.w;
    if (L < 1 || w < 1) throw std::invalid_argument("coupled ensemble needs L >= 1, w >= 1");
    const int p = kernels.p();
    const int n = p + 1;
    const DimensionDistribution chan = channel_distribution(p, eps);
    const DimensionDistribution zero = known_distribution(p);

    std::vector<DimensionDistribution> v(static_cast<size_t>(L), chan);
    // check positions u = 0 .. L+w-2 see variables u-w+1 .. u
    const int U = L + w - 1;
    std::vector<DimensionDistribution> m(static_cast<size_t>(U));

    auto total_mass = [&]() {
        double s = 0.0;
        for (const auto& vi : v) s += vi.undetermined_mass();
        return s;
    };

    double mass = total_mass();
    if (mass < opts.target_mass) return true;
    int plateau = 0;
    std::vector<DimensionDistribution> next(static_cast<size_t>(L));
    for (int it = 0; it < opts.max_iters; ++it) {
        for (int u = 0; u < U; ++u) {
            DimensionDistribution avg;
            avg.p = p;
            avg.probs.assign(static_cast<size_t>(n), 0.0);
            for (int k = 0; k < w; ++k) {
                const int j = u - k;
                const auto& src = (j >= 0 && j < L) ? v[j] : zero;
                for (int d = 0; d < n; ++d) avg.probs[d] += src.probs[d];
            }
            for (int d = 0; d < n; ++d) avg.probs[d] /= w;
            DimensionDistribution mu = avg;
            for (int i = 0; i < ens.K - 2; ++i) mu = kernels.check_combine(mu, avg);
            m[u] = std::move(mu);
        }
        for (int i = 0; i < L; ++i) {
            DimensionDistribution avg;
            avg.p = p;
            avg.probs.assign(static_cast<size_t>(n), 0.0);
            for (int j = 0; j < w; ++j)
                for (int d = 0; d < n; ++d) avg.probs[d] += m[i + j].probs[d];
            for (int d = 0; d < n; ++d) avg.probs[d] /= w;
            DimensionDistribution vi = chan;
            for (int j = 0; j < ens.J - 1; ++j) vi = kernels.var_combine(vi, avg);
            next[i] = std::move(vi);
        }
        bool same = true;
        double next_mass = 0.0;
        for (int i = 0; i < L; ++i) {
            next_mass += next[i].undetermined_mass();
            if (same && next[i].probs != v[i].probs) same = false;
        }
        if (next_mass < opts.target_mass) return true;
        if (same) return false;
        if (mass_stalled(mass, next_mass, plateau)) return false;
        v.swap(next);
        mass = next_mass;
    }
    return false;
}

namespace {

double bisect_threshold(const std::function<bool(double)>& converges, double tol) {
    double lo = 0.0;
    double hi = 1.0;
    if (!converges(lo)) throw NonConvergence("density evolution fails at zero erasure rate");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (converges(mid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double threshold_uncoupled(int J, int K, int p, const ThresholdOptions& opts) {
    if (opts.tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
    DeKernels kernels(p);
    return bisect_threshold(
        [&](double eps) { return de_converges_uncoupled(J, K, eps, kernels, opts); }, opts.tol);
}

double threshold_coupled(int J, int K, int p, int L, const ThresholdOptions& opts) {
    if (opts.tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
    DeKernels kernels(p);
    CoupledEnsemble ens{J, K, p, L, J};
    return bisect_threshold(
        [&](double eps) { return de_converges_coupled(ens, eps, kernels, opts); }, opts.tol);
}

} // namespace nbcc
