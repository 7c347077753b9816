#ifndef NBCC_IO_HPP
#define NBCC_IO_HPP

#include <string>

#include "nbcc/code.hpp"
#include "nbcc/encoder.hpp"
#include "nbcc/rate_adapt.hpp"

namespace nbcc {

// Text formats, all round-trip bit-exactly.
//
// code:    header "p m_s J K b c T primitive_poly seed", then for each t and
//          each i in 0..m_s the c x (c-b) coefficient block (0 = no edge)
// symbols: header "p count", then one integer per symbol
// pattern: "period c", then one line of keep flags per time unit
// plan:    "p c time_units seed", then one line of coefficients per time unit

void save_code(const ConvCode& code, const std::string& path);
ConvCode load_code(const std::string& path);

void save_symbols(const SymbolSequence& seq, const std::string& path);
SymbolSequence load_symbols(const std::string& path, int width = 1);

void save_pattern(const PuncturePattern& pat, const std::string& path);
PuncturePattern load_pattern(const std::string& path);

void save_plan(const RepetitionPlan& plan, int c, const std::string& path);
RepetitionPlan load_plan(const std::string& path, int* c_out = nullptr);

} // namespace nbcc

#endif
