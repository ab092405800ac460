#pragma once

#include "poisenv/presentation.hpp"

#include <string>

namespace poisenv {

// Reads the JSON presentation format:
//   {"vars": [...], "relations": [expr...],
//    "bracket": [{"i": name, "j": name, "value": expr}],
//    "flags": {"prime_ideal": bool, "cohen_macaulay": bool, "serre_s_m": int|null}}
// Unlisted bracket pairs are zero. Throws ParseError or DomainError.
PoissonPresentation presentation_from_json(const std::string& text);
PoissonPresentation load_presentation(const std::string& path);

std::string presentation_to_json(const PoissonPresentation& p);

}  // namespace poisenv
