#ifndef NBCC_RATE_ADAPT_HPP
#define NBCC_RATE_ADAPT_HPP

#include <cstdint>
#include <vector>

#include "nbcc/encoder.hpp"
#include "nbcc/message.hpp"

namespace nbcc {

// Periodic keep/drop schedule per coded stream.  Only parity streams are ever
// dropped by the built-in schedules.
struct PuncturePattern {
    int period = 1;
    int c = 2;
    std::vector<std::uint8_t> keep; // period x c, row-major

    bool keeps(int t, int j) const { return keep[static_cast<size_t>(t % period) * c + j] != 0; }
    int kept_per_period() const {
        int n = 0;
        for (auto k : keep) n += k;
        return n;
    }
    // info symbols per period over transmitted symbols per period
    void nominal_rate(int b, int& num, int& den) const {
        num = b * period;
        den = kept_per_period();
    }
};

// Built-in schedules: identity keeps everything; the higher-rate patterns
// drop the parity stream on all but the last time unit of the period.
PuncturePattern pattern_identity(int c = 2);
PuncturePattern pattern_three_quarters();
PuncturePattern pattern_five_sixths();
PuncturePattern pattern_seven_eighths();

// Per-time-unit repetition coefficients drawn from GF(2^p) \ {0,1}.
struct RepetitionPlan {
    int p = 0;
    std::uint64_t seed = 0;
    std::vector<FieldElement> alpha; // time_units x c

    int time_units(int c) const { return static_cast<int>(alpha.size()) / c; }
};

RepetitionPlan make_repetition_plan(const FieldTables& field, int c, int time_units,
                                    std::uint64_t seed);

// Transmitted subsequence in time order.
std::vector<FieldElement> puncture(const SymbolSequence& coded, const PuncturePattern& pat);

// Mother-length likelihood array: received likelihoods at kept positions,
// uniform at punctured ones.
std::vector<MessageVector> depuncture_init(const std::vector<MessageVector>& kept,
                                           const PuncturePattern& pat, int time_units, int q);

// Per time unit emit the c mother symbols followed by their alpha-scaled
// repeats: (v1, v2, a1*v1, a2*v2).
std::vector<FieldElement> multiplicative_repeat(const SymbolSequence& coded,
                                                const RepetitionPlan& plan,
                                                const FieldTables& field);

// Fold the likelihood of a repeated observation back onto the mother symbol:
// base[s] *= repeat[alpha*s], renormalized.
MessageVector merge_repeat_likelihoods(const MessageVector& base, const MessageVector& repeat,
                                       FieldElement alpha, const FieldTables& field);

} // namespace nbcc

#endif
