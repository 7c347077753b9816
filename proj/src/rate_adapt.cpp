#include "nbcc/rate_adapt.hpp"

#include <stdexcept>

#include "nbcc/errors.hpp"
#include "nbcc/rng.hpp"

namespace nbcc {

namespace {

PuncturePattern parity_drop_pattern(int period) {
    PuncturePattern pat;
    pat.period = period;
    pat.c = 2;
    pat.keep.assign(static_cast<size_t>(period) * 2, 1);
    // drop the parity stream everywhere except the last slot of the period
    for (int t = 0; t + 1 < period; ++t) pat.keep[static_cast<size_t>(t) * 2 + 1] = 0;
    return pat;
}

} // namespace

PuncturePattern pattern_identity(int c) {
    PuncturePattern pat;
    pat.period = 1;
    pat.c = c;
    pat.keep.assign(static_cast<size_t>(c), 1);
    return pat;
}

PuncturePattern pattern_three_quarters() { return parity_drop_pattern(3); }
PuncturePattern pattern_five_sixths() { return parity_drop_pattern(5); }
PuncturePattern pattern_seven_eighths() { return parity_drop_pattern(7); }

RepetitionPlan make_repetition_plan(const FieldTables& field, int c, int time_units,
                                    std::uint64_t seed) {
    if (field.q() < 4)
        throw std::invalid_argument("repetition needs a field with at least 4 elements");
    if (time_units < 1) throw ZeroLength("repetition plan needs at least one time unit");
    RepetitionPlan plan;
    plan.p = field.p();
    plan.seed = seed;
    plan.alpha.resize(static_cast<size_t>(time_units) * c);
    Rng rng(derive_seed(seed, 0x72657065)); // stream tag for repeat coefficients
    const std::uint64_t mask = static_cast<std::uint64_t>(field.q() - 1);
    for (auto& a : plan.alpha) {
        std::uint64_t r;
        do {
            r = rng() & mask;
        } while (r < 2);
        a = static_cast<FieldElement>(r);
    }
    return plan;
}

std::vector<FieldElement> puncture(const SymbolSequence& coded, const PuncturePattern& pat) {
    if (coded.width != pat.c) throw LengthMismatch("pattern width does not match sequence");
    std::vector<FieldElement> out;
    out.reserve(coded.symbols.size());
    const int T = coded.time_units();
    for (int t = 0; t < T; ++t)
        for (int j = 0; j < pat.c; ++j)
            if (pat.keeps(t, j)) out.push_back(coded.at(t, j));
    return out;
}

std::vector<MessageVector> depuncture_init(const std::vector<MessageVector>& kept,
                                           const PuncturePattern& pat, int time_units, int q) {
    std::vector<MessageVector> out;
    out.reserve(static_cast<size_t>(time_units) * pat.c);
    size_t next = 0;
    for (int t = 0; t < time_units; ++t) {
        for (int j = 0; j < pat.c; ++j) {
            if (pat.keeps(t, j)) {
                if (next >= kept.size()) throw LengthMismatch("too few received likelihoods");
                out.push_back(kept[next++]);
            } else {
                out.push_back(uniform_message(q));
            }
        }
    }
    if (next != kept.size()) throw LengthMismatch("too many received likelihoods");
    return out;
}

std::vector<FieldElement> multiplicative_repeat(const SymbolSequence& coded,
                                                const RepetitionPlan& plan,
                                                const FieldTables& field) {
    const int c = coded.width;
    if (plan.time_units(c) < coded.time_units())
        throw LengthMismatch("repetition plan shorter than sequence");
    std::vector<FieldElement> out;
    out.reserve(coded.symbols.size() * 2);
    const int T = coded.time_units();
    for (int t = 0; t < T; ++t) {
        for (int j = 0; j < c; ++j) out.push_back(coded.at(t, j));
        for (int j = 0; j < c; ++j) {
            const FieldElement a = plan.alpha[static_cast<size_t>(t) * c + j];
            out.push_back(field.mul(a, coded.at(t, j)));
        }
    }
    return out;
}

MessageVector merge_repeat_likelihoods(const MessageVector& base, const MessageVector& repeat,
                                       FieldElement alpha, const FieldTables& field) {
    if (alpha == 0) throw DivisionByZero("repetition coefficient must be nonzero");
    const int q = field.q();
    if (static_cast<int>(base.size()) != q || static_cast<int>(repeat.size()) != q)
        throw LengthMismatch("likelihood vector length must equal field size");
    MessageVector out(static_cast<size_t>(q));
    for (int s = 0; s < q; ++s) out[s] = base[s] * repeat[field.mul(alpha, static_cast<FieldElement>(s))];
    normalize(out);
    return out;
}

} // namespace nbcc
