#include "nbcc/encoder.hpp"

#include <string>

#include "nbcc/errors.hpp"

namespace nbcc {

EncoderState::EncoderState(const ConvCode& code) : code_(&code) {
    history_.assign(static_cast<size_t>(code.ms) * code.c, 0);
    for (int t = 0; t < code.T; ++t)
        for (int e = 0; e < code.c - code.b; ++e)
            if (code.h(0, t, code.b + e, e) == 0)
                throw SingularH0("H_0^T(" + std::to_string(t) + ") has a zero parity diagonal");
}

std::vector<FieldElement> EncoderState::step(const std::vector<FieldElement>& info_slice) {
    const ConvCode& code = *code_;
    const int cb = code.c - code.b;
    if (static_cast<int>(info_slice.size()) != code.b)
        throw LengthMismatch("info slice must hold b symbols");

    std::vector<FieldElement> v(code.c, 0);
    for (int j = 0; j < code.b; ++j) v[j] = info_slice[j];

    const int t = t_;
    for (int e = 0; e < cb; ++e) {
        FieldElement acc = 0;
        for (int k = 0; k < code.b; ++k) {
            const FieldElement hk = code.h(0, t, k, e);
            if (hk != 0 && v[k] != 0) {
                acc = FieldTables::add(acc, code.field.mul(v[k], hk));
                ++stats_.field_mults;
            }
        }
        for (int i = 1; i <= code.ms && i <= t; ++i) {
            const int slot = ((t - i) % code.ms) * code.c;
            for (int g = 0; g < code.c; ++g) {
                const FieldElement hi = code.h(i, t, g, e);
                const FieldElement vs = history_[slot + g];
                if (hi != 0 && vs != 0) {
                    acc = FieldTables::add(acc, code.field.mul(vs, hi));
                    ++stats_.field_mults;
                }
            }
        }
        v[code.b + e] = code.field.mul(acc, code.field.inv(code.h(0, t, code.b + e, e)));
    }

    if (code.ms > 0) {
        const int slot = (t % code.ms) * code.c;
        for (int g = 0; g < code.c; ++g) history_[slot + g] = v[g];
    }
    ++t_;
    return v;
}

std::vector<FieldElement> EncoderState::terminate(int Z) {
    std::vector<FieldElement> out;
    const std::vector<FieldElement> zero(code_->b, 0);
    for (int z = 0; z < Z; ++z) {
        auto slice = step(zero);
        out.insert(out.end(), slice.begin(), slice.end());
    }
    return out;
}

SymbolSequence encode(const ConvCode& code, const SymbolSequence& info, int N, int Z,
                      EncodeStats* stats) {
    if (N < 1) throw ZeroLength("encode needs N >= 1 information time units");
    if (static_cast<int>(info.symbols.size()) != code.b * N)
        throw LengthMismatch("info holds " + std::to_string(info.symbols.size()) +
                             " symbols, expected " + std::to_string(code.b * N));

    EncoderState enc(code);
    SymbolSequence coded;
    coded.p = code.p;
    coded.width = code.c;
    coded.symbols.reserve(static_cast<size_t>(code.c) * (N + Z));
    std::vector<FieldElement> slice(code.b);
    for (int t = 0; t < N; ++t) {
        for (int j = 0; j < code.b; ++j) slice[j] = info.at(t, j);
        auto out = enc.step(slice);
        coded.symbols.insert(coded.symbols.end(), out.begin(), out.end());
    }
    auto tail = enc.terminate(Z);
    coded.symbols.insert(coded.symbols.end(), tail.begin(), tail.end());
    if (stats) *stats = enc.stats();
    return coded;
}

bool syndrome_check(const ConvCode& code, const SymbolSequence& coded) {
    const int W = coded.time_units();
    const int cb = code.c - code.b;
    for (int t = 0; t < W; ++t) {
        for (int e = 0; e < cb; ++e) {
            FieldElement acc = 0;
            for (int i = 0; i <= code.ms && i <= t; ++i) {
                for (int g = 0; g < code.c; ++g) {
                    const FieldElement hi = code.h(i, t, g, e);
                    if (hi != 0)
                        acc = FieldTables::add(acc, code.field.mul(coded.at(t - i, g), hi));
                }
            }
            if (acc != 0) return false;
        }
    }
    return true;
}

double rate(int b, int c, int N, int Z) {
    if (N < 1) throw ZeroLength("rate undefined for N < 1");
    return static_cast<double>(b) / (c * (1.0 + static_cast<double>(Z) / N));
}

double rate(const ConvCode& code, int N, int Z) { return rate(code.b, code.c, N, Z); }

int termination_bit_length(const ConvCode& code, int Z) { return Z * code.c * code.p; }

} // namespace nbcc
