#include "nbcc/code.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "nbcc/errors.hpp"
#include "nbcc/rng.hpp"

namespace nbcc {

namespace {

int column_overlap(const BaseMatrix& m, int col_a, int col_b) {
    int shared = 0;
    for (int r = 0; r < m.rows(); ++r)
        if (m.at(r, col_a) && m.at(r, col_b)) ++shared;
    return shared;
}

// Placing a 1 at (row, col) closes a 4-cycle iff col already shares a row
// with some other column present in this row.
bool placement_closes_cycle(const BaseMatrix& m, int row, int col) {
    for (int other = 0; other < m.cols(); ++other) {
        if (other == col || !m.at(row, other)) continue;
        if (column_overlap(m, col, other) >= 1) return true;
    }
    return false;
}

} // namespace

bool has_four_cycle(const BaseMatrix& base) {
    for (int a = 0; a < base.cols(); ++a)
        for (int b = a + 1; b < base.cols(); ++b)
            if (column_overlap(base, a, b) >= 2) return true;
    return false;
}

BaseMatrix build_base_matrix(int ms, int J, int K, std::uint64_t seed, int max_restarts) {
    if (ms < 1) throw ConstructionFailure("syndrome former memory must be at least 1");
    if (J < 2 || K != 2 * J)
        throw ConstructionFailure("(c,b)=(2,1) regularity requires J >= 2 and K = 2J, got J=" +
                                  std::to_string(J) + " K=" + std::to_string(K));
    const int n = ms + 1;

    Rng rng(derive_seed(seed, 0xba5e));
    for (int attempt = 0; attempt < max_restarts; ++attempt) {
        BaseMatrix m;
        m.ms = ms;
        m.J = J;
        m.K = K;
        m.seed = seed;
        m.bits.assign(static_cast<size_t>(m.rows()) * m.cols(), 0);

        // Fixed part: [1 1]^T on the block diagonal, [0 1]^T wrapped one
        // block to the left.  The wrapped block keeps the highest-memory
        // submatrix nonzero at every time after the cut.
        for (int l = 0; l < n; ++l) {
            m.at(2 * l, l) = 1;
            m.at(2 * l + 1, l) = 1;
            m.at(2 * l + 1, (l - 1 + n) % n) = 1;
        }

        std::vector<int> row_need(m.rows());
        std::vector<int> col_need(m.cols(), K - 3);
        for (int l = 0; l < n; ++l) {
            row_need[2 * l] = J - 1;
            row_need[2 * l + 1] = J - 2;
        }

        bool dead_end = false;
        int remaining = std::accumulate(col_need.begin(), col_need.end(), 0);
        while (remaining > 0) {
            std::vector<int> rows;
            for (int r = 0; r < m.rows(); ++r)
                if (row_need[r] > 0) rows.push_back(r);
            const int row = rows[rng() % rows.size()];

            std::vector<int> cols;
            for (int col = 0; col < m.cols(); ++col) {
                if (col_need[col] <= 0 || m.at(row, col)) continue;
                if (placement_closes_cycle(m, row, col)) continue;
                cols.push_back(col);
            }
            if (cols.empty()) {
                dead_end = true;
                break;
            }
            const int col = cols[rng() % cols.size()];
            m.at(row, col) = 1;
            --row_need[row];
            --col_need[col];
            --remaining;
        }
        if (dead_end) continue;
        return m;
    }
    throw ConstructionFailure("no 4-cycle-free (" + std::to_string(ms) + "," + std::to_string(J) +
                              "," + std::to_string(K) + ") placement found after " +
                              std::to_string(max_restarts) + " restarts");
}

PreCutCode assign_coefficients(const BaseMatrix& base, int p, std::uint32_t primitive_poly,
                               std::uint64_t seed) {
    PreCutCode pre;
    pre.base = base;
    pre.p = p;
    pre.coeff_seed = seed;
    pre.field = build_tables(p, primitive_poly);
    pre.coeffs.assign(base.bits.size(), 0);

    const int q = pre.field.q();
    Rng rng(derive_seed(seed, 0xc0ef));

    // Per check column, draw nonzero coefficients until no value repeats more
    // than ceil(degree / (q-1)) times.  For q-1 >= degree this is the
    // pairwise-distinct rule; smaller fields get the tightest multiplicity
    // the alphabet allows (p=1 degenerates to all-ones).
    for (int col = 0; col < base.cols(); ++col) {
        std::vector<int> support;
        for (int r = 0; r < base.rows(); ++r)
            if (base.at(r, col)) support.push_back(r);
        const int d = static_cast<int>(support.size());
        const int cap = (d + q - 2) / (q - 1);

        for (int tries = 0;; ++tries) {
            if (tries > 100000)
                throw ConstructionFailure("coefficient sampling failed to satisfy multiplicity cap");
            std::vector<int> count(q, 0);
            bool ok = true;
            for (int r : support) {
                const FieldElement v = static_cast<FieldElement>(1 + rng() % (q - 1));
                pre.coeffs[static_cast<size_t>(r) * base.cols() + col] = v;
                if (++count[v] > cap) ok = false;
            }
            if (ok) break;
        }
    }
    return pre;
}

PreCutCode assign_coefficients(const BaseMatrix& base, int p, std::uint64_t seed) {
    return assign_coefficients(base, p, default_primitive_poly(p), seed);
}

ConvCode diagonal_cut(const PreCutCode& pre) {
    ConvCode code;
    code.p = pre.p;
    code.ms = pre.base.ms;
    code.J = pre.base.J;
    code.K = pre.base.K;
    code.b = pre.base.b;
    code.c = pre.base.c;
    code.T = pre.base.ms + 1;
    code.primitive_poly = pre.field.primitive_poly();
    code.seed = pre.base.seed;
    code.field = pre.field;

    const int n = code.T;
    const int cb = code.c - code.b;
    code.subs.assign(static_cast<size_t>(code.T) * (code.ms + 1) * code.c * cb, 0);
    for (int t = 0; t < code.T; ++t) {
        for (int i = 0; i <= code.ms; ++i) {
            const int l = ((t - i) % n + n) % n; // block row feeding H_i^T(t)
            for (int g = 0; g < code.c; ++g)
                for (int e = 0; e < cb; ++e)
                    code.subs[((static_cast<size_t>(t) * (code.ms + 1) + i) * code.c + g) * cb + e] =
                        pre.at(l * code.c + g, t * cb + e);
        }
    }
    return code;
}

ConvCode build_code(int ms, int J, int K, int p, std::uint32_t primitive_poly, std::uint64_t seed) {
    BaseMatrix base = build_base_matrix(ms, J, K, derive_seed(seed, 1));
    base.seed = seed;
    PreCutCode pre = assign_coefficients(base, p, primitive_poly, derive_seed(seed, 2));
    ConvCode code = diagonal_cut(pre);
    code.seed = seed;
    return code;
}

ConvCode build_code(int ms, int J, int K, int p, std::uint64_t seed) {
    return build_code(ms, J, K, p, default_primitive_poly(p), seed);
}

std::vector<FieldElement> submatrix_at(const ConvCode& code, int i, int t) {
    if (i < 0 || i > code.ms)
        throw IndexOutOfRange("submatrix index i=" + std::to_string(i) + " outside [0," +
                              std::to_string(code.ms) + "]");
    if (t < 0) throw IndexOutOfRange("negative time unit");
    const int cb = code.c - code.b;
    std::vector<FieldElement> block(static_cast<size_t>(code.c) * cb);
    for (int g = 0; g < code.c; ++g)
        for (int e = 0; e < cb; ++e) block[static_cast<size_t>(g) * cb + e] = code.h(i, t, g, e);
    return block;
}

ValidationReport validate(const ConvCode& code, int N, int Z) {
    if (N < 1) throw ZeroLength("validation window needs N >= 1");
    ValidationReport rep;
    const int W = N + Z;
    const int cb = code.c - code.b;
    const int num_checks = W * cb;
    std::string details;

    // expanded support: per check, list of incident symbols
    std::vector<std::vector<int>> check_syms(num_checks);
    std::vector<int> sym_deg(static_cast<size_t>(W) * code.c, 0);
    for (int s = 0; s < W; ++s) {
        for (int i = 0; i <= code.ms && i <= s; ++i) {
            for (int g = 0; g < code.c; ++g) {
                for (int e = 0; e < cb; ++e) {
                    if (code.h(i, s, g, e) == 0) continue;
                    const int sym = (s - i) * code.c + g;
                    check_syms[s * cb + e].push_back(sym);
                    ++sym_deg[sym];
                }
            }
        }
    }

    // 4-cycles: a pair of symbols appearing together in two checks
    rep.girth_gt4_ok = true;
    {
        std::map<std::pair<int, int>, int> pair_seen;
        for (int chk = 0; chk < num_checks && rep.girth_gt4_ok; ++chk) {
            const auto& syms = check_syms[chk];
            for (size_t a = 0; a < syms.size() && rep.girth_gt4_ok; ++a) {
                for (size_t b = a + 1; b < syms.size(); ++b) {
                    auto key = std::minmax(syms[a], syms[b]);
                    if (++pair_seen[key] >= 2) {
                        rep.girth_gt4_ok = false;
                        details += "4-cycle through symbols " + std::to_string(key.first) + "," +
                                   std::to_string(key.second) + "; ";
                        break;
                    }
                }
            }
        }
    }

    // weight regularity away from the window boundary
    rep.row_weights_ok = true;
    for (int tau = 0; tau + code.ms < W; ++tau) {
        for (int g = 0; g < code.c; ++g) {
            if (sym_deg[tau * code.c + g] != code.J) {
                rep.row_weights_ok = false;
                details += "symbol (" + std::to_string(tau) + "," + std::to_string(g) +
                           ") has degree " + std::to_string(sym_deg[tau * code.c + g]) + "; ";
            }
        }
    }
    rep.col_weights_ok = true;
    for (int s = code.ms; s < W; ++s) {
        for (int e = 0; e < cb; ++e) {
            const int deg = static_cast<int>(check_syms[s * cb + e].size());
            if (deg != code.K) {
                rep.col_weights_ok = false;
                details += "check (" + std::to_string(s) + "," + std::to_string(e) +
                           ") has degree " + std::to_string(deg) + "; ";
            }
        }
    }

    // H_0 must keep the parity rows diagonal and invertible
    rep.h0_systematic_ok = true;
    for (int t = 0; t < code.T; ++t) {
        for (int e = 0; e < cb; ++e) {
            for (int g = code.b; g < code.c; ++g) {
                const FieldElement v = code.h(0, t, g, e);
                const bool diag = (g - code.b) == e;
                if ((diag && v == 0) || (!diag && v != 0)) {
                    rep.h0_systematic_ok = false;
                    details += "H_0(" + std::to_string(t) + ") parity rows not diagonal; ";
                }
            }
        }
    }

    rep.hms_nonzero_ok = true;
    for (int t = 0; t < code.T; ++t) {
        bool nonzero = false;
        for (int g = 0; g < code.c; ++g)
            for (int e = 0; e < cb; ++e)
                if (code.h(code.ms, t, g, e) != 0) nonzero = true;
        if (!nonzero) {
            rep.hms_nonzero_ok = false;
            details += "H_ms(" + std::to_string(t) + ") is all-zero; ";
        }
    }

    // coefficient spread per check column of one period
    rep.coeff_distinct_ok = true;
    const int qm1 = code.field.q() - 1;
    for (int t = 0; t < code.T; ++t) {
        for (int e = 0; e < cb; ++e) {
            std::vector<int> count(code.field.q(), 0);
            int deg = 0;
            for (int i = 0; i <= code.ms; ++i)
                for (int g = 0; g < code.c; ++g)
                    if (code.h(i, t, g, e) != 0) {
                        ++count[code.h(i, t, g, e)];
                        ++deg;
                    }
            const int cap = (deg + qm1 - 1) / qm1;
            for (int v = 1; v < code.field.q(); ++v) {
                if (count[v] > cap) {
                    rep.coeff_distinct_ok = false;
                    details += "check column (" + std::to_string(t) + "," + std::to_string(e) +
                               ") repeats coefficient " + std::to_string(v) + "; ";
                }
            }
        }
    }

    rep.details = details;
    return rep;
}

std::uint64_t nominal_placements(int ms) {
    if (ms < 0 || ms > 19) throw IndexOutOfRange("placement count only representable for ms <= 19");
    std::uint64_t f = 1;
    for (int k = 2; k <= ms + 1; ++k) f *= static_cast<std::uint64_t>(k);
    return f;
}

double ensemble_size_log2(int ms, int p) {
    double placements = std::lgamma(static_cast<double>(ms + 2)) / std::log(2.0);
    const double edges = 2.0 * (ms + 1) * 2.0; // nonzero entries for the (ms,2,4) family
    return placements + edges * std::log2(std::pow(2.0, p) - 1.0);
}

} // namespace nbcc
