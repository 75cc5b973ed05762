#pragma once

// JSON forms of slide parameters and slide logs. Symbols and generators are
// written by name ("0", "s2").

#include <vector>

#include "mcoe/chainspec_io.hpp"
#include "mcoe/edgeslide.hpp"

namespace mcoe {

std::size_t generator_index(const std::string& name, std::size_t rank);
std::string generator_name(std::size_t index);

/// {"u": "s1", "t": "s2", "E": [["0", "1"], ...]}; branch data are recomputed
/// from the spec.
SlideParams slide_params_from_json(const Json& json, const MarkovSpec& spec);

/// Full record including branch data, replayable without the spec.
Json slide_to_json(const SlideParams& params, const MarkovSpec& spec);
SlideParams slide_from_json(const Json& json, const MarkovSpec& spec);

/// {"generators": [...], "alphabet": [...], "slides": [...]}.
Json slide_log_to_json(const std::vector<SlideParams>& slides, const MarkovSpec& spec);
std::vector<SlideParams> slide_log_from_json(const Json& json, const MarkovSpec& spec);

}  // namespace mcoe
