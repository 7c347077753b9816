#ifndef NBCC_GALOIS_HPP
#define NBCC_GALOIS_HPP

#include <cstdint>
#include <vector>

#include "nbcc/errors.hpp"

namespace nbcc {

using FieldElement = std::uint16_t;

uint32_t default_primitive_poly(int p);

// Log/antilog tables for GF(2^p), 1 <= p <= 16, generated by the primitive
// element x (integer value 2).  Addition is XOR; multiplication and inversion
// go through the tables.
class FieldTables {
  public:
    FieldTables() = default;
    FieldTables(int p, uint32_t primitive_poly);

    int p() const { return p_; }
    int q() const { return q_; }
    uint32_t primitive_poly() const { return poly_; }

    static FieldElement add(FieldElement a, FieldElement b) {
        return static_cast<FieldElement>(a ^ b);
    }

    FieldElement mul(FieldElement a, FieldElement b) const {
        if (a == 0 || b == 0) return 0;
        int s = log_[a] + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return alog_[s];
    }

    FieldElement inv(FieldElement a) const {
        if (a == 0) throw DivisionByZero("inverse of zero field element");
        return alog_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }

    FieldElement div(FieldElement a, FieldElement b) const {
        return mul(a, inv(b));
    }

    int log(FieldElement a) const {
        if (a == 0) throw DivisionByZero("log of zero field element");
        return log_[a];
    }

    FieldElement alog(int e) const { return alog_[((e % (q_ - 1)) + (q_ - 1)) % (q_ - 1)]; }

  private:
    int p_ = 0;
    int q_ = 0;
    uint32_t poly_ = 0;
    std::vector<int> log_;
    std::vector<FieldElement> alog_;
};

inline FieldTables build_tables(int p, uint32_t primitive_poly) {
    return FieldTables(p, primitive_poly);
}

inline FieldTables build_tables(int p) {
    return FieldTables(p, default_primitive_poly(p));
}

} // namespace nbcc

#endif
