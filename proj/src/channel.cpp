#include "nbcc/channel.hpp"

#include <algorithm>
#include <cmath>

#include "nbcc/errors.hpp"

namespace nbcc {

double awgn_sigma2(double ebn0_db, double rate) {
    if (rate <= 0.0) throw ZeroLength("rate must be positive");
    const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
    return 1.0 / (2.0 * rate * ebn0);
}

ChannelObservation bpsk_awgn(const std::vector<FieldElement>& symbols, int p, double ebn0_db,
                             double rate, Rng& rng) {
    ChannelObservation obs;
    obs.kind = ChannelObservation::Kind::awgn;
    obs.p = p;
    obs.sigma2 = awgn_sigma2(ebn0_db, rate);
    const double sigma = std::sqrt(obs.sigma2);
    Gaussian gauss(rng);
    obs.values.reserve(symbols.size() * p);
    for (FieldElement s : symbols) {
        for (int j = 0; j < p; ++j) {
            const double x = ((s >> j) & 1) ? -1.0 : 1.0;
            obs.values.push_back(x + sigma * gauss());
        }
    }
    return obs;
}

ChannelObservation bec(const std::vector<FieldElement>& symbols, int p, double epsilon, Rng& rng) {
    ChannelObservation obs;
    obs.kind = ChannelObservation::Kind::bec;
    obs.p = p;
    obs.bits.reserve(symbols.size() * p);
    obs.erased.reserve(symbols.size() * p);
    for (FieldElement s : symbols) {
        for (int j = 0; j < p; ++j) {
            obs.bits.push_back((s >> j) & 1);
            const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
            obs.erased.push_back(u < epsilon ? 1 : 0);
        }
    }
    return obs;
}

std::vector<MessageVector> symbol_likelihoods(const ChannelObservation& obs) {
    const int p = obs.p;
    const int q = 1 << p;
    const int n = obs.num_symbols();
    std::vector<MessageVector> out(n);

    if (obs.kind == ChannelObservation::Kind::awgn) {
        const double inv2s = 1.0 / (2.0 * obs.sigma2);
        std::vector<double> logp(q);
        for (int sym = 0; sym < n; ++sym) {
            double best = -1e300;
            for (int s = 0; s < q; ++s) {
                double acc = 0.0;
                for (int j = 0; j < p; ++j) {
                    const double x = ((s >> j) & 1) ? -1.0 : 1.0;
                    const double d = obs.values[static_cast<size_t>(sym) * p + j] - x;
                    acc -= d * d * inv2s;
                }
                logp[s] = acc;
                best = std::max(best, acc);
            }
            MessageVector m(q);
            for (int s = 0; s < q; ++s) m[s] = std::exp(logp[s] - best);
            normalize(m);
            out[sym] = std::move(m);
        }
    } else {
        for (int sym = 0; sym < n; ++sym) {
            MessageVector m(q, 1.0);
            for (int s = 0; s < q; ++s) {
                for (int j = 0; j < p; ++j) {
                    const size_t idx = static_cast<size_t>(sym) * p + j;
                    if (!obs.erased[idx] && ((s >> j) & 1) != obs.bits[idx]) {
                        m[s] = 0.0;
                        break;
                    }
                }
            }
            normalize(m);
            out[sym] = std::move(m);
        }
    }
    return out;
}

namespace {

// Capacity of binary-input AWGN with noise deviation sigma:
// 1 - E[log2(1 + exp(-2y/sigma^2))], y ~ N(1, sigma^2).
double biawgn_capacity(double sigma) {
    const double s2 = sigma * sigma;
    const int steps = 4000;
    const double lo = 1.0 - 12.0 * sigma;
    const double hi = 1.0 + 12.0 * sigma;
    const double h = (hi - lo) / steps;
    const double ln2 = std::log(2.0);
    auto integrand = [&](double y) {
        const double u = -2.0 * y / s2;
        // log(1+e^u), stable on both tails
        const double softplus = u > 35.0 ? u : std::log1p(std::exp(u));
        const double g = std::exp(-(y - 1.0) * (y - 1.0) / (2.0 * s2)) /
                         std::sqrt(2.0 * M_PI * s2);
        return g * softplus / ln2;
    };
    // Simpson rule
    double acc = integrand(lo) + integrand(hi);
    for (int k = 1; k < steps; ++k) acc += integrand(lo + k * h) * (k % 2 ? 4.0 : 2.0);
    return 1.0 - acc * h / 3.0;
}

} // namespace

double shannon_limit_biawgn(double rate, double tol_db) {
    if (rate <= 0.0 || rate >= 1.0) throw NonConvergence("rate must lie in (0,1)");
    double lo = -3.0, hi = 20.0;
    auto achievable = [&](double ebn0_db) {
        return biawgn_capacity(std::sqrt(awgn_sigma2(ebn0_db, rate))) >= rate;
    };
    if (achievable(lo)) return lo;
    if (!achievable(hi)) throw NonConvergence("no achievable Eb/N0 below 20 dB");
    while (hi - lo > tol_db) {
        const double mid = 0.5 * (lo + hi);
        (achievable(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace nbcc
