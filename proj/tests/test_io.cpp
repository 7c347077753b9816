#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "nbcc/code.hpp"
#include "nbcc/encoder.hpp"
#include "nbcc/io.hpp"
#include "nbcc/rng.hpp"

using nbcc::ConvCode;
using nbcc::FieldElement;
using nbcc::SymbolSequence;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("io_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("code files round-trip byte for byte") {
    const ConvCode code = nbcc::build_code(6, 2, 4, 8, 42);
    TempFile a("code_a.txt"), b("code_b.txt");
    nbcc::save_code(code, a.path);
    const ConvCode loaded = nbcc::load_code(a.path);
    nbcc::save_code(loaded, b.path);
    CHECK(slurp(a.path) == slurp(b.path));
    CHECK(loaded.subs == code.subs);
    CHECK(loaded.p == code.p);
    CHECK(loaded.ms == code.ms);
    CHECK(loaded.T == code.T);
    CHECK(loaded.primitive_poly == code.primitive_poly);
    CHECK(loaded.seed == code.seed);
    CHECK(loaded.field.q() == code.field.q());
}

TEST_CASE("symbol files round-trip byte for byte") {
    SymbolSequence seq;
    seq.p = 4;
    seq.width = 2;
    nbcc::Rng rng(3);
    for (int k = 0; k < 30; ++k) seq.symbols.push_back(FieldElement(rng() & 15));
    TempFile a("sym_a.txt"), b("sym_b.txt");
    nbcc::save_symbols(seq, a.path);
    const SymbolSequence loaded = nbcc::load_symbols(a.path, 2);
    nbcc::save_symbols(loaded, b.path);
    CHECK(slurp(a.path) == slurp(b.path));
    CHECK(loaded.symbols == seq.symbols);
    CHECK(loaded.width == 2);
}

TEST_CASE("pattern and plan files round-trip byte for byte") {
    TempFile a("pat_a.txt"), b("pat_b.txt");
    nbcc::save_pattern(nbcc::pattern_seven_eighths(), a.path);
    const nbcc::PuncturePattern pat = nbcc::load_pattern(a.path);
    nbcc::save_pattern(pat, b.path);
    CHECK(slurp(a.path) == slurp(b.path));
    CHECK(pat.period == 7);
    CHECK(pat.c == 2);
    CHECK(pat.kept_per_period() == 8);

    const auto field = nbcc::build_tables(8);
    const nbcc::RepetitionPlan plan = nbcc::make_repetition_plan(field, 2, 12, 5);
    TempFile c("plan_a.txt"), d("plan_b.txt");
    nbcc::save_plan(plan, 2, c.path);
    int c_streams = 0;
    const nbcc::RepetitionPlan lp = nbcc::load_plan(c.path, &c_streams);
    nbcc::save_plan(lp, c_streams, d.path);
    CHECK(slurp(c.path) == slurp(d.path));
    CHECK(c_streams == 2);
    CHECK(lp.alpha == plan.alpha);
    CHECK(lp.seed == plan.seed);
}

TEST_CASE("loaded codes encode and decode like the originals") {
    const ConvCode code = nbcc::build_code(5, 2, 4, 4, 77);
    TempFile f("code_roundtrip.txt");
    nbcc::save_code(code, f.path);
    const ConvCode loaded = nbcc::load_code(f.path);

    SymbolSequence info;
    info.p = code.p;
    info.width = 1;
    nbcc::Rng rng(6);
    const int N = 18;
    for (int t = 0; t < N; ++t) info.symbols.push_back(FieldElement(rng() & 15));
    const SymbolSequence x = nbcc::encode(code, info, N, code.ms);
    const SymbolSequence y = nbcc::encode(loaded, info, N, loaded.ms);
    CHECK(x.symbols == y.symbols);
}

TEST_CASE("parse errors carry line numbers") {
    TempFile f("bad.txt");

    spit(f.path, "4 oops\n1\n2\n");
    try {
        nbcc::load_symbols(f.path);
        FAIL("expected a parse error");
    } catch (const nbcc::ParseError& e) {
        CHECK(e.line_number == 1);
    }

    spit(f.path, "4 3\n1\nbad\n2\n");
    try {
        nbcc::load_symbols(f.path);
        FAIL("expected a parse error");
    } catch (const nbcc::ParseError& e) {
        CHECK(e.line_number == 3);
    }

    // truncated file: error reported at the last line seen
    spit(f.path, "4 5\n1\n2\n");
    try {
        nbcc::load_symbols(f.path);
        FAIL("expected a parse error");
    } catch (const nbcc::ParseError& e) {
        CHECK(e.line_number == 3);
    }

    // trailing data
    spit(f.path, "4 1\n2\n7\n");
    try {
        nbcc::load_symbols(f.path);
        FAIL("expected a parse error");
    } catch (const nbcc::ParseError& e) {
        CHECK(e.line_number == 3);
    }
}

TEST_CASE("symbol loading validates values against the field") {
    TempFile f("bad_sym.txt");
    spit(f.path, "2 2\n3\n4\n");
    CHECK_THROWS(nbcc::load_symbols(f.path));
    spit(f.path, "2 3\n1\n2\n3\n");
    CHECK_THROWS_AS(nbcc::load_symbols(f.path, 2), nbcc::LengthMismatch);
}
