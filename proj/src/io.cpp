#include "nbcc/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nbcc/errors.hpp"

namespace nbcc {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

// Line-tracking integer tokenizer for the text formats.
class Reader {
  public:
    explicit Reader(const std::string& path) : in_(path), path_(path) {
        if (!in_) throw std::runtime_error("cannot open for reading: " + path);
    }

    long long next_int(const char* what) {
        while (pos_ >= tokens_.size())
            if (!advance_line())
                throw ParseError("unexpected end of file, expected " + std::string(what), line_);
        return parse(tokens_[pos_++], what);
    }

    // all integers on the next non-empty line; current line must be exhausted
    std::vector<long long> next_line(const char* what) {
        if (pos_ < tokens_.size()) throw ParseError("unexpected trailing tokens", line_);
        if (!advance_line())
            throw ParseError("unexpected end of file, expected " + std::string(what), line_);
        std::vector<long long> vals;
        vals.reserve(tokens_.size());
        for (; pos_ < tokens_.size(); ++pos_) vals.push_back(parse(tokens_[pos_], what));
        return vals;
    }

    void expect_eof() {
        if (pos_ < tokens_.size() || advance_line())
            throw ParseError("trailing data after expected end of file", line_);
    }

  private:
    bool advance_line() {
        std::string s;
        while (std::getline(in_, s)) {
            ++line_;
            tokens_.clear();
            pos_ = 0;
            std::istringstream iss(s);
            std::string tok;
            while (iss >> tok) tokens_.push_back(tok);
            if (!tokens_.empty()) return true;
        }
        return false;
    }

    long long parse(const std::string& tok, const char* what) {
        try {
            size_t used = 0;
            const long long v = std::stoll(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const ParseError&) {
            throw;
        } catch (...) {
            throw ParseError("expected integer for " + std::string(what) + ", got '" + tok + "'",
                             line_);
        }
    }

    std::ifstream in_;
    std::string path_;
    int line_ = 0;
    std::vector<std::string> tokens_;
    size_t pos_ = 0;
};

int checked_int(long long v, long long lo, long long hi, const char* what) {
    if (v < lo || v > hi)
        throw std::runtime_error(std::string(what) + " out of range: " + std::to_string(v));
    return static_cast<int>(v);
}

} // namespace

void save_code(const ConvCode& code, const std::string& path) {
    auto out = open_out(path);
    out << code.p << ' ' << code.ms << ' ' << code.J << ' ' << code.K << ' ' << code.b << ' '
        << code.c << ' ' << code.T << ' ' << code.primitive_poly << ' ' << code.seed << '\n';
    const int cb = code.c - code.b;
    for (int t = 0; t < code.T; ++t)
        for (int i = 0; i <= code.ms; ++i) {
            for (int row = 0; row < code.c; ++row)
                for (int col = 0; col < cb; ++col) {
                    if (row || col) out << ' ';
                    out << code.h(i, t, row, col);
                }
            out << '\n';
        }
    if (!out) throw std::runtime_error("write failed: " + path);
}

ConvCode load_code(const std::string& path) {
    Reader r(path);
    ConvCode code;
    code.p = checked_int(r.next_int("p"), 1, 16, "p");
    code.ms = checked_int(r.next_int("m_s"), 1, 1 << 20, "m_s");
    code.J = checked_int(r.next_int("J"), 1, 64, "J");
    code.K = checked_int(r.next_int("K"), 1, 64, "K");
    code.b = checked_int(r.next_int("b"), 1, 64, "b");
    code.c = checked_int(r.next_int("c"), code.b + 1, 64, "c");
    code.T = checked_int(r.next_int("T"), code.ms + 1, code.ms + 1, "T");
    code.primitive_poly = static_cast<std::uint32_t>(
        checked_int(r.next_int("primitive_poly"), 2, (1 << 17) - 1, "primitive_poly"));
    code.seed = static_cast<std::uint64_t>(r.next_int("seed"));
    code.field = build_tables(code.p, code.primitive_poly);
    const int cb = code.c - code.b;
    code.subs.assign(static_cast<size_t>(code.T) * (code.ms + 1) * code.c * cb, 0);
    size_t idx = 0;
    for (int t = 0; t < code.T; ++t)
        for (int i = 0; i <= code.ms; ++i)
            for (int row = 0; row < code.c; ++row)
                for (int col = 0; col < cb; ++col)
                    code.subs[idx++] = static_cast<FieldElement>(
                        checked_int(r.next_int("coefficient"), 0, code.field.q() - 1,
                                    "coefficient"));
    r.expect_eof();
    return code;
}

void save_symbols(const SymbolSequence& seq, const std::string& path) {
    auto out = open_out(path);
    out << seq.p << ' ' << seq.symbols.size() << '\n';
    for (const auto s : seq.symbols) out << s << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

SymbolSequence load_symbols(const std::string& path, int width) {
    Reader r(path);
    SymbolSequence seq;
    seq.p = checked_int(r.next_int("p"), 1, 16, "p");
    const auto count = r.next_int("count");
    if (count < 0) throw std::runtime_error("negative symbol count");
    const int q = 1 << seq.p;
    seq.width = width;
    seq.symbols.resize(static_cast<size_t>(count));
    for (auto& s : seq.symbols)
        s = static_cast<FieldElement>(checked_int(r.next_int("symbol"), 0, q - 1, "symbol"));
    r.expect_eof();
    if (width > 0 && count % width != 0)
        throw LengthMismatch("symbol count not a multiple of stream width");
    return seq;
}

void save_pattern(const PuncturePattern& pat, const std::string& path) {
    auto out = open_out(path);
    out << pat.period << '\n';
    for (int t = 0; t < pat.period; ++t) {
        for (int j = 0; j < pat.c; ++j) {
            if (j) out << ' ';
            out << static_cast<int>(pat.keep[static_cast<size_t>(t) * pat.c + j]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

PuncturePattern load_pattern(const std::string& path) {
    Reader r(path);
    PuncturePattern pat;
    pat.period = checked_int(r.next_int("period"), 1, 1 << 20, "period");
    pat.c = 0;
    for (int t = 0; t < pat.period; ++t) {
        const auto flags = r.next_line("keep flags");
        if (t == 0) {
            pat.c = static_cast<int>(flags.size());
            if (pat.c < 1) throw std::runtime_error("pattern needs at least one stream");
        } else if (static_cast<int>(flags.size()) != pat.c) {
            throw std::runtime_error("inconsistent stream count in pattern file");
        }
        for (const auto f : flags)
            pat.keep.push_back(static_cast<std::uint8_t>(checked_int(f, 0, 1, "keep flag")));
    }
    r.expect_eof();
    return pat;
}

void save_plan(const RepetitionPlan& plan, int c, const std::string& path) {
    auto out = open_out(path);
    const int T = plan.time_units(c);
    out << plan.p << ' ' << c << ' ' << T << ' ' << plan.seed << '\n';
    for (int t = 0; t < T; ++t) {
        for (int j = 0; j < c; ++j) {
            if (j) out << ' ';
            out << plan.alpha[static_cast<size_t>(t) * c + j];
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

RepetitionPlan load_plan(const std::string& path, int* c_out) {
    Reader r(path);
    RepetitionPlan plan;
    plan.p = checked_int(r.next_int("p"), 1, 16, "p");
    const int c = checked_int(r.next_int("c"), 1, 64, "c");
    const int T = checked_int(r.next_int("time_units"), 1, 1 << 24, "time_units");
    plan.seed = static_cast<std::uint64_t>(r.next_int("seed"));
    const int q = 1 << plan.p;
    plan.alpha.resize(static_cast<size_t>(T) * c);
    for (auto& a : plan.alpha)
        a = static_cast<FieldElement>(checked_int(r.next_int("coefficient"), 2, q - 1,
                                                  "coefficient"));
    r.expect_eof();
    if (c_out) *c_out = c;
    return plan;
}

} // namespace nbcc
