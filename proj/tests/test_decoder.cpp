#include "doctest.h"

#include <cmath>
#include <vector>

#include "nbcc/channel.hpp"
#include "nbcc/code.hpp"
#include "nbcc/decoder.hpp"
#include "nbcc/encoder.hpp"
#include "nbcc/rng.hpp"

using nbcc::ConvCode;
using nbcc::FieldElement;
using nbcc::FieldTables;
using nbcc::MessageVector;
using nbcc::SymbolSequence;

namespace {

MessageVector random_message(int q, nbcc::Rng& rng) {
    MessageVector m(q);
    for (auto& v : m) v = 0.05 + (rng() >> 11) * 0x1.0p-53;
    nbcc::normalize(m);
    return m;
}

// Marginalize the check constraint by enumerating the other symbols.
MessageVector brute_force_check(const std::vector<MessageVector>& incoming,
                                const std::vector<FieldElement>& labels, FieldElement out_label,
                                const FieldTables& field) {
    const int q = field.q();
    const int deg = static_cast<int>(incoming.size());
    MessageVector out(q, 0.0);
    std::vector<int> v(deg, 0);
    for (;;) {
        FieldElement acc = 0;
        double pr = 1.0;
        for (int k = 0; k < deg; ++k) {
            acc = FieldTables::add(acc, field.mul(labels[k], FieldElement(v[k])));
            pr *= incoming[k][v[k]];
        }
        out[field.div(acc, out_label)] += pr;
        int k = 0;
        while (k < deg && ++v[k] == q) v[k++] = 0;
        if (k == deg) break;
    }
    nbcc::normalize(out);
    return out;
}

SymbolSequence random_info(const ConvCode& code, int N, std::uint64_t seed) {
    SymbolSequence info;
    info.p = code.p;
    info.width = code.b;
    nbcc::Rng rng(seed);
    for (int t = 0; t < N; ++t)
        info.symbols.push_back(static_cast<FieldElement>(rng() & (code.field.q() - 1)));
    return info;
}

std::vector<MessageVector> delta_likelihoods(const SymbolSequence& coded, int q) {
    std::vector<MessageVector> like;
    for (FieldElement s : coded.symbols) like.push_back(nbcc::delta_message(q, s));
    return like;
}

} // namespace

TEST_CASE("walsh-hadamard transform is a scaled involution") {
    nbcc::Rng rng(2);
    for (int q : {2, 4, 8, 16}) {
        std::vector<double> v(q);
        for (auto& x : v) x = (rng() >> 11) * 0x1.0p-53;
        std::vector<double> twice = v;
        nbcc::wht(twice);
        nbcc::wht(twice);
        for (int s = 0; s < q; ++s) CHECK(twice[s] == doctest::Approx(q * v[s]).epsilon(1e-12));
    }
    std::vector<double> d(8, 0.0);
    d[0] = 1.0;
    nbcc::wht(d);
    for (double x : d) CHECK(x == doctest::Approx(1.0));
    std::vector<double> bad(6, 0.0);
    CHECK_THROWS_AS(nbcc::wht(bad), nbcc::BadLength);
}

TEST_CASE("check update equals brute-force marginalization") {
    for (int p : {1, 2, 3}) {
        const FieldTables field = nbcc::build_tables(p);
        const int q = field.q();
        nbcc::Rng rng(100 + p);
        for (int deg = 1; deg <= 3; ++deg) {
            for (int trial = 0; trial < 40; ++trial) {
                std::vector<MessageVector> incoming;
                std::vector<FieldElement> labels;
                for (int k = 0; k < deg; ++k) {
                    incoming.push_back(random_message(q, rng));
                    labels.push_back(static_cast<FieldElement>(1 + rng() % (q - 1)));
                }
                const auto out_label = static_cast<FieldElement>(1 + rng() % (q - 1));
                const MessageVector fast = nbcc::check_update(incoming, labels, out_label, field);
                const MessageVector slow = brute_force_check(incoming, labels, out_label, field);
                for (int s = 0; s < q; ++s) CHECK(std::abs(fast[s] - slow[s]) < 1e-10);
            }
        }
    }
}

TEST_CASE("check update handles delta inputs exactly") {
    const FieldTables field = nbcc::build_tables(3);
    // v1 = 3 with label 2, v2 = 5 with label 1; out edge label 4:
    // x = inv(4) * (2*3 + 5)
    const FieldElement expect =
        field.div(FieldTables::add(field.mul(2, 3), field.mul(1, 5)), 4);
    bool underflow = true;
    const MessageVector out = nbcc::check_update(
        {nbcc::delta_message(8, 3), nbcc::delta_message(8, 5)}, {2, 1}, 4, field, &underflow);
    CHECK_FALSE(underflow);
    for (int s = 0; s < 8; ++s)
        CHECK(out[s] == doctest::Approx(s == expect ? 1.0 : 0.0).epsilon(1e-12));
}

TEST_CASE("variable update multiplies and renormalizes") {
    const int q = 4;
    nbcc::Rng rng(5);
    const MessageVector ch = random_message(q, rng);
    const MessageVector a = random_message(q, rng);
    const MessageVector b = random_message(q, rng);
    const MessageVector out = nbcc::variable_update(ch, {a, b});
    double norm = 0.0;
    for (int s = 0; s < q; ++s) norm += ch[s] * a[s] * b[s];
    for (int s = 0; s < q; ++s)
        CHECK(out[s] == doctest::Approx(ch[s] * a[s] * b[s] / norm).epsilon(1e-12));
    // contradictory deltas collapse to uniform rather than NaN
    const MessageVector u =
        nbcc::variable_update(nbcc::delta_message(q, 0), {nbcc::delta_message(q, 1)});
    for (int s = 0; s < q; ++s) CHECK(u[s] == doctest::Approx(0.25));
}

TEST_CASE("noiseless blocks decode exactly in one sweep") {
    const ConvCode code = nbcc::build_code(5, 2, 4, 3, 8);
    const int N = 30;
    const SymbolSequence info = random_info(code, N, 3);
    const SymbolSequence coded = nbcc::encode(code, info, N, code.ms);
    const nbcc::DecoderGraph graph = nbcc::build_decoder_graph(code, N, code.ms);
    const auto like = delta_likelihoods(coded, code.field.q());
    const nbcc::DecodeResult res = nbcc::decode_block(code, graph, like);
    CHECK(res.converged);
    CHECK(res.iters == 1);
    CHECK(res.symbols.symbols == coded.symbols);
}

TEST_CASE("decoder graph connects each check to at most K symbols") {
    const ConvCode code = nbcc::build_code(6, 2, 4, 2, 4);
    const nbcc::DecoderGraph g = nbcc::build_decoder_graph(code, 40, code.ms);
    CHECK(g.num_checks() == 46);
    CHECK(g.num_symbols() == 92);
    for (int chk = 0; chk < g.num_checks(); ++chk) {
        const int deg = g.check_ptr[chk + 1] - g.check_ptr[chk];
        CHECK(deg <= code.K);
        CHECK(deg >= 1);
    }
    // interior symbols have degree J
    for (int sym = code.ms * code.c; sym < (g.W - code.ms) * code.c; ++sym)
        CHECK(g.sym_ptr[sym + 1] - g.sym_ptr[sym] == code.J);
}

TEST_CASE("decoding corrects moderate awgn noise") {
    const ConvCode code = nbcc::build_code(8, 2, 4, 4, 5);
    const int N = 100;
    const SymbolSequence info = random_info(code, N, 21);
    const SymbolSequence coded = nbcc::encode(code, info, N, code.ms);
    const double rate = nbcc::rate(code, N, code.ms);
    nbcc::Rng rng(777);
    const auto obs = nbcc::bpsk_awgn(coded.symbols, code.p, 4.0, rate, rng);
    const auto like = nbcc::symbol_likelihoods(obs);
    const nbcc::DecoderGraph graph = nbcc::build_decoder_graph(code, N, code.ms);
    const nbcc::DecodeResult res = nbcc::decode_block(code, graph, like, {100, true});
    CHECK(res.converged);
    CHECK(res.symbols.symbols == coded.symbols);
}

TEST_CASE("all-uniform likelihoods settle on the zero codeword") {
    const ConvCode code = nbcc::build_code(4, 2, 4, 2, 2);
    const int N = 10;
    const nbcc::DecoderGraph graph = nbcc::build_decoder_graph(code, N, code.ms);
    std::vector<MessageVector> like(graph.num_symbols(), nbcc::uniform_message(graph.q));
    const nbcc::DecodeResult res = nbcc::decode_block(code, graph, like);
    CHECK(res.converged);
    for (FieldElement s : res.symbols.symbols) CHECK(s == 0);
}

TEST_CASE("block decoding matches exhaustive symbol-map decisions on a toy code") {
    const ConvCode code = nbcc::build_code(4, 2, 4, 2, 6);
    const int N = 4;
    const int q = code.field.q();
    const nbcc::DecoderGraph graph = nbcc::build_decoder_graph(code, N, code.ms);

    int agreements = 0;
    const int trials = 25;
    for (int trial = 0; trial < trials; ++trial) {
        const SymbolSequence info = random_info(code, N, 300 + trial);
        const SymbolSequence coded = nbcc::encode(code, info, N, code.ms);
        const double rate = nbcc::rate(code, N, code.ms);
        nbcc::Rng rng(nbcc::derive_seed(55, trial));
        const auto obs = nbcc::bpsk_awgn(coded.symbols, code.p, 10.0, rate, rng);
        const auto like = nbcc::symbol_likelihoods(obs);

        // exhaustive posterior over the 256 information words
        const int n_sym = graph.num_symbols();
        std::vector<double> marg(static_cast<size_t>(n_sym) * q, 0.0);
        std::vector<int> word(N, 0);
        for (;;) {
            SymbolSequence w;
            w.p = code.p;
            w.width = 1;
            for (int t = 0; t < N; ++t) w.symbols.push_back(FieldElement(word[t]));
            const SymbolSequence cw = nbcc::encode(code, w, N, code.ms);
            double pr = 1.0;
            for (int sym = 0; sym < n_sym; ++sym) pr *= like[sym][cw.symbols[sym]];
            for (int sym = 0; sym < n_sym; ++sym)
                marg[static_cast<size_t>(sym) * q + cw.symbols[sym]] += pr;
            int k = 0;
            while (k < N && ++word[k] == q) word[k++] = 0;
            if (k == N) break;
        }
        SymbolSequence map_seq;
        map_seq.p = code.p;
        map_seq.width = code.c;
        for (int sym = 0; sym < n_sym; ++sym) {
            int best = 0;
            for (int s = 1; s < q; ++s)
                if (marg[static_cast<size_t>(sym) * q + s] >
                    marg[static_cast<size_t>(sym) * q + best])
                    best = s;
            map_seq.symbols.push_back(FieldElement(best));
        }

        const nbcc::DecodeResult res = nbcc::decode_block(code, graph, like, {100, true});
        agreements += res.symbols.symbols == map_seq.symbols;
    }
    CHECK(agreements == trials);
}

TEST_CASE("full-span window reproduces block decoding exactly") {
    const ConvCode code = nbcc::build_code(5, 2, 4, 3, 12);
    const int N = 40;
    const int stages = 4;
    const nbcc::DecoderGraph graph = nbcc::build_decoder_graph(code, N, code.ms);
    for (int trial = 0; trial < 10; ++trial) {
        const SymbolSequence info = random_info(code, N, 900 + trial);
        const SymbolSequence coded = nbcc::encode(code, info, N, code.ms);
        const double rate = nbcc::rate(code, N, code.ms);
        nbcc::Rng rng(nbcc::derive_seed(42, trial));
        const auto obs = nbcc::bpsk_awgn(coded.symbols, code.p, 2.0, rate, rng);
        const auto like = nbcc::symbol_likelihoods(obs);

        const nbcc::DecodeResult block =
            nbcc::decode_block(code, graph, like, {stages, false});
        const nbcc::WindowResult win = nbcc::decode_sliding_window(code, graph, like, stages);
        CHECK(win.symbols.symbols == block.symbols.symbols);

        // emission trails ingestion by exactly I*(ms+1) steps
        for (int t = 0; t < graph.W; ++t)
            CHECK(win.emit_step[t] - win.ingest_step[t] == stages * (code.ms + 1));
        CHECK(win.window_span == stages * (code.ms + 1));
    }
}

TEST_CASE("iterations per stage multiply the refresh work") {
    const ConvCode code = nbcc::build_code(4, 2, 4, 2, 3);
    const int N = 20;
    const nbcc::DecoderGraph graph = nbcc::build_decoder_graph(code, N, code.ms);
    const SymbolSequence info = random_info(code, N, 61);
    const SymbolSequence coded = nbcc::encode(code, info, N, code.ms);
    const auto like = delta_likelihoods(coded, code.field.q());

    const nbcc::WindowResult one = nbcc::decode_sliding_window(code, graph, like, 3, 1);
    const nbcc::WindowResult two = nbcc::decode_sliding_window(code, graph, like, 3, 2);
    CHECK(two.check_updates == 2 * one.check_updates);
    CHECK(two.var_updates == 2 * one.var_updates);

    // deeper pipelines match longer block runs
    const nbcc::DecodeResult block = nbcc::decode_block(code, graph, like, {6, false});
    CHECK(two.symbols.symbols == block.symbols.symbols);
}

TEST_CASE("window decoder rejects degenerate configurations") {
    const ConvCode code = nbcc::build_code(4, 2, 4, 2, 3);
    const nbcc::DecoderGraph graph = nbcc::build_decoder_graph(code, 10, code.ms);
    std::vector<MessageVector> like(graph.num_symbols(), nbcc::uniform_message(graph.q));
    CHECK_THROWS_AS(nbcc::decode_sliding_window(code, graph, like, 0), nbcc::BadLength);
    like.pop_back();
    CHECK_THROWS_AS(nbcc::decode_sliding_window(code, graph, like, 2), nbcc::LengthMismatch);
}
