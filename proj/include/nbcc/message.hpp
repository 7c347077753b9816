#ifndef NBCC_MESSAGE_HPP
#define NBCC_MESSAGE_HPP

#include <vector>

#include "nbcc/errors.hpp"

namespace nbcc {

// Probability vector over the q field values.
using MessageVector = std::vector<double>;

inline void normalize(MessageVector& m) {
    double s = 0.0;
    for (double v : m) s += v;
    if (s <= 0.0) {
        const double u = 1.0 / static_cast<double>(m.size());
        for (double& v : m) v = u;
        return;
    }
    const double inv = 1.0 / s;
    for (double& v : m) v *= inv;
}

inline MessageVector uniform_message(int q) {
    return MessageVector(q, 1.0 / static_cast<double>(q));
}

inline MessageVector delta_message(int q, int value) {
    if (value < 0 || value >= q) throw IndexOutOfRange("delta value outside field");
    MessageVector m(q, 0.0);
    m[value] = 1.0;
    return m;
}

} // namespace nbcc

#endif
