#include "mcoe/chainspec_io.hpp"

#include <fstream>
#include <sstream>

#include "mcoe/error.hpp"

namespace mcoe {

namespace {

Rational entry_from_json(const Json& value) {
  if (!value.is_string()) throw InvalidInput("rational entries must be \"p/q\" strings");
  Rational r = parse_rational(value.get<std::string>());
  if (r < 0) throw InvalidInput("negative probability " + value.get<std::string>());
  return r;
}

const Json& member(const Json& json, const char* key) {
  if (!json.is_object() || !json.contains(key)) throw InvalidInput(std::string("missing key '") + key + "'");
  return json.at(key);
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t a = 0; a < m.size(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < m.size(); ++b) row.push_back(to_string(m(a, b)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& json, std::size_t n) {
  if (!json.is_array() || json.size() != n) throw InvalidInput("kernel must have one row per symbol");
  Matrix m(n);
  for (std::size_t a = 0; a < n; ++a) {
    const Json& row = json[a];
    if (!row.is_array() || row.size() != n) throw InvalidInput("kernel row has wrong length");
    for (std::size_t b = 0; b < n; ++b) m(a, b) = entry_from_json(row[b]);
  }
  return m;
}

Json spec_to_json(const MarkovSpec& spec) {
  Json out = Json::object();
  Json generators = Json::array();
  for (std::size_t s = 0; s < spec.rank(); ++s) generators.push_back("s" + std::to_string(s + 1));
  out["generators"] = std::move(generators);
  out["alphabet"] = spec.alphabet;
  Json pi = Json::object();
  for (std::size_t a = 0; a < spec.alphabet_size(); ++a) pi[spec.alphabet[a]] = to_string(spec.pi[a]);
  out["pi"] = std::move(pi);
  Json kernels = Json::object();
  for (std::size_t s = 0; s < spec.rank(); ++s) kernels["s" + std::to_string(s + 1)] = matrix_to_json(spec.kernels[s]);
  out["kernels"] = std::move(kernels);
  return out;
}

MarkovSpec spec_from_json(const Json& json) {
  MarkovSpec spec;
  const Json& generators = member(json, "generators");
  if (!generators.is_array()) throw InvalidInput("'generators' must be an array");
  for (std::size_t s = 0; s < generators.size(); ++s) {
    if (generators[s] != "s" + std::to_string(s + 1)) {
      throw InvalidInput("generators must be listed as s1, s2, ... in order");
    }
  }
  const Json& alphabet = member(json, "alphabet");
  if (!alphabet.is_array()) throw InvalidInput("'alphabet' must be an array");
  for (const auto& a : alphabet) {
    if (!a.is_string()) throw InvalidInput("alphabet symbols must be strings");
    spec.alphabet.push_back(a.get<std::string>());
  }
  const std::size_t n = spec.alphabet.size();

  const Json& pi = member(json, "pi");
  if (!pi.is_object() || pi.size() != n) throw InvalidInput("'pi' must map every symbol to a rational");
  for (const auto& a : spec.alphabet) {
    if (!pi.contains(a)) throw InvalidInput("'pi' has no entry for symbol '" + a + "'");
    spec.pi.push_back(entry_from_json(pi.at(a)));
  }

  const Json& kernels = member(json, "kernels");
  if (!kernels.is_object() || kernels.size() != generators.size()) {
    throw InvalidInput("'kernels' must have one matrix per generator");
  }
  for (std::size_t s = 0; s < generators.size(); ++s) {
    spec.kernels.push_back(matrix_from_json(member(kernels, ("s" + std::to_string(s + 1)).c_str()), n));
  }
  return spec;
}

std::string serialize(const MarkovSpec& spec) { return spec_to_json(spec).dump(2) + "\n"; }

MarkovSpec parse_spec(const std::string& text) {
  Json json;
  try {
    json = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
  return spec_from_json(json);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << contents;
}

}  // namespace mcoe
