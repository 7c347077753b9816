#include "nbcc/galois.hpp"

#include <string>

namespace nbcc {

uint32_t default_primitive_poly(int p) {
    // Conventional primitive polynomials, LSB-first bit encoding
    // (0x11D = x^8 + x^4 + x^3 + x^2 + 1).
    static const uint32_t table[17] = {
        0,
        0x3,     // x + 1
        0x7,     // x^2 + x + 1
        0xB,     // x^3 + x + 1
        0x13,    // x^4 + x + 1
        0x25,    // x^5 + x^2 + 1
        0x43,    // x^6 + x + 1
        0x89,    // x^7 + x^3 + 1
        0x11D,   // x^8 + x^4 + x^3 + x^2 + 1
        0x211,   // x^9 + x^4 + 1
        0x409,   // x^10 + x^3 + 1
        0x805,   // x^11 + x^2 + 1
        0x1053,  // x^12 + x^6 + x^4 + x + 1
        0x201B,  // x^13 + x^4 + x^3 + x + 1
        0x4443,  // x^14 + x^10 + x^6 + x + 1
        0x8003,  // x^15 + x + 1
        0x1100B, // x^16 + x^12 + x^3 + x + 1
    };
    if (p < 1 || p > 16) throw BadLength("field degree p must be in [1,16], got " + std::to_string(p));
    return table[p];
}

FieldTables::FieldTables(int p, uint32_t primitive_poly) : p_(p), poly_(primitive_poly) {
    if (p < 1 || p > 16) throw BadLength("field degree p must be in [1,16], got " + std::to_string(p));
    q_ = 1 << p;
    if (poly_ >> p != 1u || (poly_ & 1u) == 0u)
        throw NonPrimitivePolynomial("polynomial 0x" + std::to_string(poly_) +
                                     " does not have degree " + std::to_string(p) +
                                     " with nonzero constant term");

    log_.assign(q_, -1);
    alog_.assign(q_ - 1, 0);

    // Repeated multiplication by x with modular reduction.  The polynomial is
    // primitive exactly when x generates all q-1 nonzero elements.
    uint32_t cur = 1;
    for (int i = 0; i < q_ - 1; ++i) {
        if (log_[cur] != -1)
            throw NonPrimitivePolynomial("x is not a generator modulo the given polynomial");
        log_[cur] = i;
        alog_[i] = static_cast<FieldElement>(cur);
        cur <<= 1;
        if (cur & (1u << p)) cur ^= poly_;
    }
    if (cur != 1)
        throw NonPrimitivePolynomial("x does not have order 2^p - 1 modulo the given polynomial");
}

} // namespace nbcc
