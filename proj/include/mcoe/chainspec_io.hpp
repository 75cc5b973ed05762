#pragma once

// Chain-spec files:
//   {"generators": ["s1", "s2"], "alphabet": ["0", "1"],
//    "pi": {"0": "1/2", "1": "1/2"},
//    "kernels": {"s1": [["1/2", "1/2"], ["1/2", "1/2"]], "s2": [...]}}
// Rationals are lowest-terms "p/q" strings. serialize() is canonical, so
// serialize(parse_spec(text)) == text for any text it produced.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "mcoe/chainspec.hpp"

namespace mcoe {

using Json = nlohmann::ordered_json;

Json spec_to_json(const MarkovSpec& spec);
/// Structural checks only (shape, names, rational syntax, no negative
/// entries); stochasticity and stationarity are left to validate().
MarkovSpec spec_from_json(const Json& json);

std::string serialize(const MarkovSpec& spec);
MarkovSpec parse_spec(const std::string& text);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& json, std::size_t n);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace mcoe
