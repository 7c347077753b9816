#ifndef NBCC_ENCODER_HPP
#define NBCC_ENCODER_HPP

#include <cstdint>
#include <vector>

#include "nbcc/code.hpp"

namespace nbcc {

// Fixed-width stream of field symbols: width symbols per time unit
// (width = b for information, width = c for code sequences).
struct SymbolSequence {
    int p = 0;
    int width = 1;
    std::vector<FieldElement> symbols;

    int time_units() const { return static_cast<int>(symbols.size()) / width; }
    FieldElement at(int t, int j) const { return symbols[static_cast<size_t>(t) * width + j]; }
    FieldElement& at(int t, int j) { return symbols[static_cast<size_t>(t) * width + j]; }
};

struct EncodeStats {
    std::uint64_t field_mults = 0;
};

// Streaming systematic encoder.  Holds the last ms coded slices; parity
// symbols are solved from the diagonal parity rows of H_0^T(t).
class EncoderState {
  public:
    explicit EncoderState(const ConvCode& code);

    // Encode one time unit of information symbols (b of them) into c coded
    // symbols and advance the register.
    std::vector<FieldElement> step(const std::vector<FieldElement>& info_slice);

    // Z all-zero information slices that return the encoder to the zero state.
    std::vector<FieldElement> terminate(int Z);

    int time() const { return t_; }
    // register contents: ms coded slices plus the current info slice
    int memory_bits() const { return (code_->ms * code_->c + code_->b) * code_->p; }
    const EncodeStats& stats() const { return stats_; }

  private:
    const ConvCode* code_;
    std::vector<FieldElement> history_; // ring of ms slices, c symbols each
    int t_ = 0;
    EncodeStats stats_;
};

// Terminated block encoding: N information time units followed by Z zero
// units.  info must hold exactly b*N symbols.
SymbolSequence encode(const ConvCode& code, const SymbolSequence& info, int N, int Z,
                      EncodeStats* stats = nullptr);

// True if every parity-check equation over the sequence is satisfied.
bool syndrome_check(const ConvCode& code, const SymbolSequence& coded);

// Design rate of the terminated code, b/(c*(1+Z/N)).
double rate(const ConvCode& code, int N, int Z);
double rate(int b, int c, int N, int Z);

// Tail overhead in bits when terminating with Z zero-information units.
int termination_bit_length(const ConvCode& code, int Z);

} // namespace nbcc

#endif
