#ifndef NBCC_DECODER_HPP
#define NBCC_DECODER_HPP

#include <cstdint>
#include <vector>

#include "nbcc/code.hpp"
#include "nbcc/encoder.hpp"
#include "nbcc/message.hpp"

namespace nbcc {

// Expanded Tanner graph of the terminated code over N+Z time units.
// Edges are stored check-major; per-symbol views index into the same arrays.
struct DecoderGraph {
    int p = 0;
    int q = 0;
    int c = 0;
    int b = 0;
    int ms = 0;
    int W = 0; // time units

    std::vector<int> check_ptr;          // size num_checks()+1
    std::vector<int> edge_sym;           // per edge, symbol index
    std::vector<FieldElement> edge_coeff;
    std::vector<int> sym_ptr;            // size num_symbols()+1
    std::vector<int> sym_edge;           // edge ids grouped by symbol

    int num_symbols() const { return W * c; }
    int num_checks() const { return W * (c - b); }
    int num_edges() const { return static_cast<int>(edge_sym.size()); }
};

DecoderGraph build_decoder_graph(const ConvCode& code, int N, int Z);

// In-place unnormalized Walsh-Hadamard transform; applying it twice scales by
// the length.  Length must be a power of two.
void wht(std::vector<double>& v);

struct DecodeOptions {
    int max_iter = 50;
    bool early_stop = true;
};

struct DecodeResult {
    SymbolSequence symbols;
    bool converged = false;
    int iters = 0;
    std::uint64_t check_updates = 0;
    std::uint64_t var_updates = 0;
};

// Message-level node updates (used directly by tests and tools).
// check_update: belief about the target edge's symbol given the other K-1
// incoming messages and all edge labels; transform-domain convolution.
MessageVector check_update(const std::vector<MessageVector>& incoming,
                           const std::vector<FieldElement>& labels, FieldElement out_label,
                           const FieldTables& field, bool* underflow = nullptr);

MessageVector variable_update(const MessageVector& channel,
                              const std::vector<MessageVector>& incoming);

// Flooding-schedule decoding of a full terminated block.
DecodeResult decode_block(const ConvCode& code, const DecoderGraph& graph,
                          const std::vector<MessageVector>& likelihoods,
                          const DecodeOptions& opts = {});

struct WindowResult {
    SymbolSequence symbols;
    bool syndrome_ok = false;
    int window_span = 0;             // time units
    std::vector<int> ingest_step;    // per time unit
    std::vector<int> emit_step;      // per time unit
    std::uint64_t check_updates = 0;
    std::uint64_t var_updates = 0;
};

// Pipeline sliding-window decoder with I stages spaced ms+1 time units apart.
// Stage k refreshes check time s - (k-1)(ms+1) at global step s, so a slice
// is emitted exactly I*(ms+1) steps after ingestion having received I
// iterations; with the window covering the whole block the emitted sequence
// equals decode_block run for I iterations without early stopping.
WindowResult decode_sliding_window(const ConvCode& code, const DecoderGraph& graph,
                                   const std::vector<MessageVector>& likelihoods, int stages,
                                   int iters_per_stage = 1);

} // namespace nbcc

#endif
