#pragma once

#include <string>

#include "tim/generalized.hpp"

namespace tim {

// JSON spec document:
//   {"k": K, "alliances": [{"suballiances": [{"messages": [..],
//                                             "interferers": [..]}]}]}
// Message and alliance indices are 1-based in the file, 0-based in memory.
// Single-partner specs are the special case where every "interferers" list
// has exactly one element.  Malformed documents throw SpecError.
GeneralizedAllianceSpec parse_spec_json(const std::string& text);

// Inverse of parse_spec_json; 2-space indentation, trailing newline.
std::string write_spec_json(const GeneralizedAllianceSpec& s);

}  // namespace tim
