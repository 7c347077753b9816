#ifndef NBCC_CODE_HPP
#define NBCC_CODE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "nbcc/galois.hpp"

namespace nbcc {

// Binary placement matrix for one period of the syndrome former, prior to the
// diagonal cut.  Rows index code symbols (c per block row), columns index
// checks (c-b per block column); both wrap modulo ms+1.
struct BaseMatrix {
    int ms = 0;
    int J = 0;
    int K = 0;
    int c = 2;
    int b = 1;
    std::uint64_t seed = 0;
    std::vector<std::uint8_t> bits; // row-major, rows() x cols()

    int blocks() const { return ms + 1; }
    int rows() const { return c * (ms + 1); }
    int cols() const { return (c - b) * (ms + 1); }
    std::uint8_t at(int r, int col) const { return bits[static_cast<size_t>(r) * cols() + col]; }
    std::uint8_t& at(int r, int col) { return bits[static_cast<size_t>(r) * cols() + col]; }
};

// Base matrix with field coefficients on the nonzero support (pre-cut form).
struct PreCutCode {
    BaseMatrix base;
    int p = 0;
    std::uint64_t coeff_seed = 0;
    FieldTables field;
    std::vector<FieldElement> coeffs; // same layout as base.bits

    FieldElement at(int r, int col) const {
        return coeffs[static_cast<size_t>(r) * base.cols() + col];
    }
};

// Time-varying convolutional code with syndrome-former memory ms and period
// T = ms + 1.  Submatrix i at time t is the c x (c-b) block multiplying
// v_{t-i} in the check equations at time t.
struct ConvCode {
    int p = 0;
    int ms = 0;
    int J = 0;
    int K = 0;
    int b = 1;
    int c = 2;
    int T = 0;
    std::uint32_t primitive_poly = 0;
    std::uint64_t seed = 0;
    FieldTables field;
    std::vector<FieldElement> subs; // [T][ms+1][c][c-b]

    FieldElement h(int i, int t, int row, int col) const {
        const int tt = t % T;
        return subs[((static_cast<size_t>(tt) * (ms + 1) + i) * c + row) * (c - b) + col];
    }
    int symbols_per_unit() const { return c; }
    int checks_per_unit() const { return c - b; }
    // constraint length in symbols and bits
    int nu_s() const { return (ms + 1) * c; }
    int nu_b() const { return (ms + 1) * c * p; }
};

struct ValidationReport {
    bool girth_gt4_ok = false;
    bool row_weights_ok = false;
    bool col_weights_ok = false;
    bool h0_systematic_ok = false;
    bool hms_nonzero_ok = false;
    bool coeff_distinct_ok = false;
    std::string details;

    bool all_ok() const {
        return girth_gt4_ok && row_weights_ok && col_weights_ok && h0_systematic_ok &&
               hms_nonzero_ok && coeff_distinct_ok;
    }
};

// Construction.  Restarts the random completion up to max_restarts times
// before giving up; throws ConstructionFailure when no 4-cycle-free placement
// is found (some small ms admit none).
BaseMatrix build_base_matrix(int ms, int J, int K, std::uint64_t seed, int max_restarts = 10000);

PreCutCode assign_coefficients(const BaseMatrix& base, int p, std::uint64_t seed);
PreCutCode assign_coefficients(const BaseMatrix& base, int p, std::uint32_t primitive_poly,
                               std::uint64_t seed);

ConvCode diagonal_cut(const PreCutCode& pre);

// One-call convenience wrapper: base matrix + coefficients + cut.
ConvCode build_code(int ms, int J, int K, int p, std::uint64_t seed);
ConvCode build_code(int ms, int J, int K, int p, std::uint32_t primitive_poly, std::uint64_t seed);

// Block H_i^T(t); throws IndexOutOfRange for i outside [0, ms].
std::vector<FieldElement> submatrix_at(const ConvCode& code, int i, int t);

// Structural checks over the expanded window of N+Z time units.
ValidationReport validate(const ConvCode& code, int N, int Z);

// Number of distinct binary completions the placement step draws from
// ((ms+1)! candidate assignments); only representable for ms <= 19.
std::uint64_t nominal_placements(int ms);

// log2 of the full ensemble size (ms+1)! * (2^p - 1)^{J*K/2... placement count
// times per-edge coefficient choices, 4(ms+1) edges for the (2,4) family}.
double ensemble_size_log2(int ms, int p);

// True if the binary support of the matrix (columns as check neighborhoods)
// contains two columns sharing two rows.
bool has_four_cycle(const BaseMatrix& base);

} // namespace nbcc

#endif
