#pragma once

#include <string>

#include "margulis/thermo.hpp"

namespace margulis {

// CSV with header "class,word_length,alpha,ell", 17 significant digits,
// rows in table order (alpha ascending).
std::string spectrum_to_csv(const SpectrumTable& table);

std::string spectrum_to_json(const SpectrumTable& table, int indent = 2);

std::string entropy_to_json(const EntropyEstimate& est, int indent = 2);

}  // namespace margulis
