#ifndef NBCC_CHANNEL_HPP
#define NBCC_CHANNEL_HPP

#include <cstdint>
#include <vector>

#include "nbcc/encoder.hpp"
#include "nbcc/message.hpp"
#include "nbcc/rng.hpp"

namespace nbcc {

// Per-bit channel output.  AWGN carries one real value per transmitted bit;
// the erasure channel carries the bit values plus erasure flags.
struct ChannelObservation {
    enum class Kind { awgn, bec };
    Kind kind = Kind::awgn;
    int p = 0;
    double sigma2 = 0.0;
    std::vector<double> values;        // awgn
    std::vector<std::uint8_t> bits;    // bec
    std::vector<std::uint8_t> erased;  // bec

    int num_symbols() const {
        const auto n = kind == Kind::awgn ? values.size() : bits.size();
        return static_cast<int>(n) / p;
    }
};

// Noise variance for BPSK at the given Eb/N0 and overall transmitted rate.
double awgn_sigma2(double ebn0_db, double rate);

// BPSK over AWGN.  Bits are taken LSB-first from each symbol; bit 0 maps to
// +1 and bit 1 to -1.
ChannelObservation bpsk_awgn(const std::vector<FieldElement>& symbols, int p, double ebn0_db,
                             double rate, Rng& rng);

// Binary erasure channel applied per bit.
ChannelObservation bec(const std::vector<FieldElement>& symbols, int p, double epsilon, Rng& rng);

// Per-symbol likelihood vectors over all q field values, normalized to sum 1.
std::vector<MessageVector> symbol_likelihoods(const ChannelObservation& obs);

// Smallest Eb/N0 (dB) at which binary-input AWGN capacity reaches the rate.
double shannon_limit_biawgn(double rate, double tol_db = 1e-4);

} // namespace nbcc

#endif
