#ifndef NBCC_DENSITY_EVOLUTION_HPP
#define NBCC_DENSITY_EVOLUTION_HPP

#include <vector>

namespace nbcc {

// Probability vector over the dimension 0..p of the undetermined subspace of
// a symbol (erasure-channel state of a GF(2)^p symbol).
struct DimensionDistribution {
    int p = 0;
    std::vector<double> probs; // p+1 entries

    double undetermined_mass() const {
        double m = 0.0;
        for (size_t d = 1; d < probs.size(); ++d) m += probs[d];
        return m;
    }
};

DimensionDistribution channel_distribution(int p, double eps);
DimensionDistribution known_distribution(int p);
bool is_valid_distribution(const DimensionDistribution& d, double tol = 1e-12);

// Number of k-dimensional subspaces of GF(2)^n (2-analog binomial).
long double gaussian_binomial(int n, int k);

// Transition tables for combining independent uniformly random subspaces of
// given dimensions: intersection at variable nodes, sum at check nodes.
class DeKernels {
  public:
    explicit DeKernels(int p);

    int p() const { return p_; }
    // dim(V1 cap V2)
    DimensionDistribution var_combine(const DimensionDistribution& a,
                                      const DimensionDistribution& b) const;
    // dim(V1 + V2)
    DimensionDistribution check_combine(const DimensionDistribution& a,
                                        const DimensionDistribution& b) const;

  private:
    int p_;
    std::vector<double> var_, chk_; // (p+1)^3, [d1][d2][d]
};

// x' = eps * (1 - (1 - x)^(K-1))^(J-1)
double de_step_binary(double x, double eps, int J, int K);

// One check-then-variable round of the subspace-dimension recursion; the
// returned state is the next variable-to-check message distribution.
DimensionDistribution de_step_gl(const DimensionDistribution& state, double eps, int J, int K,
                                 const DeKernels& kernels);
DimensionDistribution de_step_gl(const DimensionDistribution& state, double eps, int J, int K);

struct CoupledEnsemble {
    int J = 0;
    int K = 0;
    int p = 0;
    int L = 0;
    int w = 0; // smoothing width; positions outside [0, L) are known
};

struct ThresholdOptions {
    double tol = 1e-6;
    int max_iters = 100000;
    double target_mass = 1e-10;
};

// Single-trajectory runners: true if the undetermined mass falls below
// target_mass within the iteration cap.
bool de_converges_uncoupled(int J, int K, double eps, const DeKernels& kernels,
                            const ThresholdOptions& opts = {});
bool de_converges_coupled(const CoupledEnsemble& ens, double eps, const DeKernels& kernels,
                          const ThresholdOptions& opts = {});

double threshold_uncoupled(int J, int K, int p, const ThresholdOptions& opts = {});
double threshold_coupled(int J, int K, int p, int L, const ThresholdOptions& opts = {});

} // namespace nbcc

#endif
