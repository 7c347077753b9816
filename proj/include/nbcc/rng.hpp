#ifndef NBCC_RNG_HPP
#define NBCC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace nbcc {

// splitmix64: used to derive independent stream seeds from (master, index)
// pairs so that per-frame streams do not depend on scheduling order.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    return splitmix64(splitmix64(master ^ splitmix64(a)) ^ splitmix64(~b));
}

using Rng = std::mt19937_64;

// Gaussian via Box-Muller so samples are identical across standard library
// implementations (std::normal_distribution is implementation-defined).
class Gaussian {
  public:
    explicit Gaussian(Rng& rng) : rng_(rng) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

  private:
    double uniform() {
        // 53-bit uniform in [0,1)
        return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }

    Rng& rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace nbcc

#endif
