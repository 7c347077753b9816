#include "nbcc/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nbcc/errors.hpp"

namespace nbcc {

namespace {
constexpr double kFloor = 1e-300;
}

DecoderGraph build_decoder_graph(const ConvCode& code, int N, int Z) {
    if (N < 1) throw ZeroLength("decoder graph needs N >= 1");
    DecoderGraph g;
    g.p = code.p;
    g.q = code.field.q();
    g.c = code.c;
    g.b = code.b;
    g.ms = code.ms;
    g.W = N + Z;

    const int cb = code.c - code.b;
    std::vector<std::vector<std::pair<int, FieldElement>>> per_check(g.num_checks());
    for (int s = 0; s < g.W; ++s)
        for (int i = 0; i <= code.ms && i <= s; ++i)
            for (int grp = 0; grp < code.c; ++grp)
                for (int e = 0; e < cb; ++e) {
                    const FieldElement h = code.h(i, s, grp, e);
                    if (h != 0) per_check[s * cb + e].push_back({(s - i) * code.c + grp, h});
                }

    g.check_ptr.assign(g.num_checks() + 1, 0);
    for (int chk = 0; chk < g.num_checks(); ++chk)
        g.check_ptr[chk + 1] = g.check_ptr[chk] + static_cast<int>(per_check[chk].size());
    g.edge_sym.resize(g.check_ptr.back());
    g.edge_coeff.resize(g.check_ptr.back());
    for (int chk = 0; chk < g.num_checks(); ++chk)
        for (size_t k = 0; k < per_check[chk].size(); ++k) {
            g.edge_sym[g.check_ptr[chk] + k] = per_check[chk][k].first;
            g.edge_coeff[g.check_ptr[chk] + k] = per_check[chk][k].second;
        }

    g.sym_ptr.assign(g.num_symbols() + 1, 0);
    for (int sym : g.edge_sym) ++g.sym_ptr[sym + 1];
    for (int s = 0; s < g.num_symbols(); ++s) g.sym_ptr[s + 1] += g.sym_ptr[s];
    g.sym_edge.resize(g.edge_sym.size());
    std::vector<int> fill(g.num_symbols(), 0);
    for (int edge = 0; edge < g.num_edges(); ++edge) {
        const int sym = g.edge_sym[edge];
        g.sym_edge[g.sym_ptr[sym] + fill[sym]++] = edge;
    }
    return g;
}

void wht(std::vector<double>& v) {
    const size_t n = v.size();
    if (n == 0 || (n & (n - 1)) != 0) throw BadLength("transform length must be a power of two");
    for (size_t h = 1; h < n; h <<= 1)
        for (size_t i = 0; i < n; i += h << 1)
            for (size_t j = i; j < i + h; ++j) {
                const double x = v[j];
                const double y = v[j + h];
                v[j] = x + y;
                v[j + h] = x - y;
            }
}

namespace {

// Shared buffers for one check-node update; sized once per decode call.
struct CheckScratch {
    std::vector<std::vector<double>> transformed; // per incident edge
    std::vector<std::vector<double>> prefix;
    std::vector<std::vector<double>> suffix;
    std::vector<double> prod;
    std::vector<double> work;

    void ensure(int deg, int q) {
        if (static_cast<int>(transformed.size()) < deg) {
            transformed.resize(deg, std::vector<double>(q));
            prefix.resize(deg + 1, std::vector<double>(q));
            suffix.resize(deg + 1, std::vector<double>(q));
        }
        for (auto& t : transformed) t.resize(q);
        for (auto& t : prefix) t.resize(q);
        for (auto& t : suffix) t.resize(q);
        prod.resize(q);
        work.resize(q);
    }
};

void wht_raw(double* v, int n) {
    for (int h = 1; h < n; h <<= 1)
        for (int i = 0; i < n; i += h << 1)
            for (int j = i; j < i + h; ++j) {
                const double x = v[j];
                const double y = v[j + h];
                v[j] = x + y;
                v[j + h] = x - y;
            }
}

// Finalize one outgoing check message from the transform-domain product:
// inverse transform, clamp FFT noise, floor, inverse permutation by the edge
// label, then renormalize.
bool finish_check_message(const std::vector<double>& prod, const FieldTables& field,
                          FieldElement out_label, double* out, std::vector<double>& work) {
    const int q = static_cast<int>(prod.size());
    std::copy(prod.begin(), prod.end(), work.begin());
    wht_raw(work.data(), q);
    bool underflow = true;
    for (int w = 0; w < q; ++w) {
        if (work[w] < kFloor) work[w] = kFloor;
        if (work[w] > kFloor) underflow = false;
    }
    double sum = 0.0;
    for (int s = 0; s < q; ++s) {
        out[s] = work[field.mul(out_label, static_cast<FieldElement>(s))];
        sum += out[s];
    }
    const double inv = 1.0 / sum;
    for (int s = 0; s < q; ++s) out[s] *= inv;
    return underflow;
}

// One check node: all outgoing messages from all incoming ones.
void update_check_node(const DecoderGraph& g, const FieldTables& field, int chk,
                       const std::vector<double>& nu, std::vector<double>& mu,
                       CheckScratch& scratch) {
    const int q = g.q;
    const int begin = g.check_ptr[chk];
    const int deg = g.check_ptr[chk + 1] - begin;
    scratch.ensure(deg, q);

    for (int k = 0; k < deg; ++k) {
        const FieldElement h = g.edge_coeff[begin + k];
        const double* in = &nu[static_cast<size_t>(begin + k) * q];
        auto& t = scratch.transformed[k];
        for (int s = 0; s < q; ++s) t[field.mul(h, static_cast<FieldElement>(s))] = in[s];
        wht_raw(t.data(), q);
    }
    std::fill(scratch.prefix[0].begin(), scratch.prefix[0].end(), 1.0);
    for (int k = 0; k < deg; ++k)
        for (int w = 0; w < q; ++w)
            scratch.prefix[k + 1][w] = scratch.prefix[k][w] * scratch.transformed[k][w];
    std::fill(scratch.suffix[deg].begin(), scratch.suffix[deg].end(), 1.0);
    for (int k = deg - 1; k >= 0; --k)
        for (int w = 0; w < q; ++w)
            scratch.suffix[k][w] = scratch.suffix[k + 1][w] * scratch.transformed[k][w];

    for (int k = 0; k < deg; ++k) {
        for (int w = 0; w < q; ++w) scratch.prod[w] = scratch.prefix[k][w] * scratch.suffix[k + 1][w];
        finish_check_message(scratch.prod, field, g.edge_coeff[begin + k],
                             &mu[static_cast<size_t>(begin + k) * q], scratch.work);
    }
}

// One variable node: refresh outgoing messages and the belief.
void update_variable_node(const DecoderGraph& g, int sym,
                          const std::vector<MessageVector>& likelihoods,
                          const std::vector<double>& mu, std::vector<double>& nu,
                          std::vector<double>& beliefs) {
    const int q = g.q;
    const int begin = g.sym_ptr[sym];
    const int deg = g.sym_ptr[sym + 1] - begin;
    const MessageVector& ch = likelihoods[sym];

    static thread_local std::vector<double> prefix, suffix;
    prefix.assign(static_cast<size_t>(deg + 1) * q, 0.0);
    suffix.assign(static_cast<size_t>(deg + 1) * q, 0.0);
    for (int s = 0; s < q; ++s) prefix[s] = ch[s];
    for (int k = 0; k < deg; ++k) {
        const double* m = &mu[static_cast<size_t>(g.sym_edge[begin + k]) * q];
        for (int s = 0; s < q; ++s)
            prefix[static_cast<size_t>(k + 1) * q + s] = prefix[static_cast<size_t>(k) * q + s] * m[s];
    }
    for (int s = 0; s < q; ++s) suffix[static_cast<size_t>(deg) * q + s] = 1.0;
    for (int k = deg - 1; k >= 0; --k) {
        const double* m = &mu[static_cast<size_t>(g.sym_edge[begin + k]) * q];
        for (int s = 0; s < q; ++s)
            suffix[static_cast<size_t>(k) * q + s] = suffix[static_cast<size_t>(k + 1) * q + s] * m[s];
    }

    for (int k = 0; k < deg; ++k) {
        double* out = &nu[static_cast<size_t>(g.sym_edge[begin + k]) * q];
        double sum = 0.0;
        for (int s = 0; s < q; ++s) {
            out[s] = prefix[static_cast<size_t>(k) * q + s] * suffix[static_cast<size_t>(k + 1) * q + s];
            sum += out[s];
        }
        if (sum <= 0.0) {
            for (int s = 0; s < q; ++s) out[s] = 1.0 / q;
        } else {
            const double inv = 1.0 / sum;
            for (int s = 0; s < q; ++s) out[s] *= inv;
        }
    }
    double* bel = &beliefs[static_cast<size_t>(sym) * q];
    double sum = 0.0;
    for (int s = 0; s < q; ++s) {
        bel[s] = prefix[static_cast<size_t>(deg) * q + s];
        sum += bel[s];
    }
    if (sum <= 0.0) {
        for (int s = 0; s < q; ++s) bel[s] = 1.0 / q;
    } else {
        const double inv = 1.0 / sum;
        for (int s = 0; s < q; ++s) bel[s] *= inv;
    }
}

FieldElement argmax_symbol(const double* bel, int q) {
    int best = 0;
    for (int s = 1; s < q; ++s)
        if (bel[s] > bel[best]) best = s;
    return static_cast<FieldElement>(best);
}

} // namespace

MessageVector check_update(const std::vector<MessageVector>& incoming,
                           const std::vector<FieldElement>& labels, FieldElement out_label,
                           const FieldTables& field, bool* underflow) {
    if (incoming.size() != labels.size())
        throw LengthMismatch("one label per incoming message required");
    const int q = field.q();
    std::vector<double> prod(q, 1.0);
    std::vector<double> t(q);
    for (size_t k = 0; k < incoming.size(); ++k) {
        if (static_cast<int>(incoming[k].size()) != q)
            throw BadLength("message length must equal field size");
        for (int s = 0; s < q; ++s) t[field.mul(labels[k], static_cast<FieldElement>(s))] =
            incoming[k][s];
        wht(t);
        for (int w = 0; w < q; ++w) prod[w] *= t[w];
    }
    MessageVector out(q);
    std::vector<double> work(q);
    const bool uf = finish_check_message(prod, field, out_label, out.data(), work);
    if (underflow) *underflow = uf;
    return out;
}

MessageVector variable_update(const MessageVector& channel,
                              const std::vector<MessageVector>& incoming) {
    MessageVector out = channel;
    for (const auto& m : incoming) {
        if (m.size() != out.size()) throw LengthMismatch("message lengths disagree");
        for (size_t s = 0; s < out.size(); ++s) out[s] *= m[s];
    }
    normalize(out);
    return out;
}

namespace {

SymbolSequence harden(const DecoderGraph& g, const std::vector<double>& beliefs) {
    SymbolSequence seq;
    seq.p = g.p;
    seq.width = g.c;
    seq.symbols.resize(g.num_symbols());
    for (int sym = 0; sym < g.num_symbols(); ++sym)
        seq.symbols[sym] = argmax_symbol(&beliefs[static_cast<size_t>(sym) * g.q], g.q);
    return seq;
}

} // namespace

DecodeResult decode_block(const ConvCode& code, const DecoderGraph& graph,
                          const std::vector<MessageVector>& likelihoods,
                          const DecodeOptions& opts) {
    if (static_cast<int>(likelihoods.size()) != graph.num_symbols())
        throw LengthMismatch("need one likelihood vector per code symbol");
    const int q = graph.q;
    const int E = graph.num_edges();
    std::vector<double> nu(static_cast<size_t>(E) * q);
    std::vector<double> mu(static_cast<size_t>(E) * q, 1.0 / q);
    std::vector<double> beliefs(static_cast<size_t>(graph.num_symbols()) * q);

    for (int edge = 0; edge < E; ++edge) {
        const MessageVector& ch = likelihoods[graph.edge_sym[edge]];
        std::copy(ch.begin(), ch.end(), nu.begin() + static_cast<size_t>(edge) * q);
    }

    DecodeResult res;
    CheckScratch scratch;
    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        for (int chk = 0; chk < graph.num_checks(); ++chk) {
            update_check_node(graph, code.field, chk, nu, mu, scratch);
            ++res.check_updates;
        }
        for (int sym = 0; sym < graph.num_symbols(); ++sym) {
            update_variable_node(graph, sym, likelihoods, mu, nu, beliefs);
            ++res.var_updates;
        }
        res.iters = iter;
        if (opts.early_stop) {
            SymbolSequence hard = harden(graph, beliefs);
            if (syndrome_check(code, hard)) {
                res.symbols = std::move(hard);
                res.converged = true;
                return res;
            }
        }
    }
    res.symbols = harden(graph, beliefs);
    res.converged = syndrome_check(code, res.symbols);
    return res;
}

WindowResult decode_sliding_window(const ConvCode& code, const DecoderGraph& graph,
                                   const std::vector<MessageVector>& likelihoods, int stages,
                                   int iters_per_stage) {
    if (stages < 1 || iters_per_stage < 1) throw BadLength("need at least one pipeline stage");
    if (static_cast<int>(likelihoods.size()) != graph.num_symbols())
        throw LengthMismatch("need one likelihood vector per code symbol");
    const int q = graph.q;
    const int W = graph.W;
    const int span_units = graph.ms + 1;
    const int I = stages * iters_per_stage;
    const int latency = I * span_units;

    const int E = graph.num_edges();
    std::vector<double> nu(static_cast<size_t>(E) * q);
    std::vector<double> mu(static_cast<size_t>(E) * q, 1.0 / q);
    std::vector<double> beliefs(static_cast<size_t>(graph.num_symbols()) * q);
    std::vector<char> ingested(W, 0);

    WindowResult res;
    res.window_span = latency;
    res.ingest_step.assign(W, -1);
    res.emit_step.assign(W, -1);
    res.symbols.p = graph.p;
    res.symbols.width = graph.c;
    res.symbols.symbols.assign(graph.num_symbols(), 0);

    CheckScratch scratch;
    const int last_step = W - 1 + latency;
    for (int s = 0; s <= last_step; ++s) {
        if (s < W) {
            // new slice: channel likelihoods seed the belief and all
            // variable-to-check messages of its symbols
            for (int g = 0; g < graph.c; ++g) {
                const int sym = s * graph.c + g;
                const MessageVector& ch = likelihoods[sym];
                std::copy(ch.begin(), ch.end(), beliefs.begin() + static_cast<size_t>(sym) * q);
                for (int k = graph.sym_ptr[sym]; k < graph.sym_ptr[sym + 1]; ++k) {
                    const int edge = graph.sym_edge[k];
                    std::copy(ch.begin(), ch.end(), nu.begin() + static_cast<size_t>(edge) * q);
                }
            }
            ingested[s] = 1;
            res.ingest_step[s] = s;
        }

        for (int k = 1; k <= I; ++k) {
            const int t = s - (k - 1) * span_units;
            if (t >= 0 && t < W) {
                for (int e = 0; e < graph.c - graph.b; ++e) {
                    update_check_node(graph, code.field, t * (graph.c - graph.b) + e, nu, mu,
                                      scratch);
                    ++res.check_updates;
                }
            }
            const int tau = t - graph.ms;
            if (tau >= 0 && tau < W) {
                for (int g = 0; g < graph.c; ++g) {
                    update_variable_node(graph, tau * graph.c + g, likelihoods, mu, nu, beliefs);
                    ++res.var_updates;
                }
            }
        }

        const int tau_out = s - latency;
        if (tau_out >= 0 && tau_out < W) {
            for (int g = 0; g < graph.c; ++g) {
                const int sym = tau_out * graph.c + g;
                res.symbols.symbols[sym] = argmax_symbol(&beliefs[static_cast<size_t>(sym) * q], q);
            }
            res.emit_step[tau_out] = s;
        }
    }
    res.syndrome_ok = syndrome_check(code, res.symbols);
    return res;
}

} // namespace nbcc
