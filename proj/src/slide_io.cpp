#include "mcoe/slide_io.hpp"

#include "mcoe/error.hpp"

namespace mcoe {

std::size_t generator_index(const std::string& name, std::size_t rank) {
  for (std::size_t s = 0; s < rank; ++s) {
    if (name == generator_name(s)) return s;
  }
  throw InvalidInput("unknown generator '" + name + "'");
}

std::string generator_name(std::size_t index) { return "s" + std::to_string(index + 1); }

namespace {

const Json& field(const Json& json, const char* key) {
  if (!json.is_object() || !json.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return json.at(key);
}

std::string text(const Json& json) {
  if (!json.is_string()) throw InvalidInput("expected a string, got " + json.dump());
  return json.get<std::string>();
}

EdgeSet edges_from_json(const Json& json, const MarkovSpec& spec) {
  if (!json.is_array()) throw InvalidInput("'E' must be an array of pairs");
  EdgeSet edges;
  for (const auto& pair : json) {
    if (!pair.is_array() || pair.size() != 2) throw InvalidInput("'E' entries must be pairs");
    edges.emplace(spec.symbol(text(pair[0])), spec.symbol(text(pair[1])));
  }
  return edges;
}

}  // namespace

SlideParams slide_params_from_json(const Json& json, const MarkovSpec& spec) {
  const std::size_t u = generator_index(text(field(json, "u")), spec.rank());
  const std::size_t t = generator_index(text(field(json, "t")), spec.rank());
  return make_slide_params(spec, u, t, edges_from_json(field(json, "E"), spec));
}

Json slide_to_json(const SlideParams& params, const MarkovSpec& spec) {
  Json out = Json::object();
  out["u"] = generator_name(params.u);
  out["t"] = generator_name(params.t);
  out["E"] = Json::array();
  for (auto [a, b] : params.edges) out["E"].push_back({spec.alphabet[a], spec.alphabet[b]});
  out["branch"] = Json::object();
  for (const auto& [b, data] : params.branch) {
    Json path = Json::array();
    for (Symbol v : data.path) path.push_back(spec.alphabet[v]);
    out["branch"][spec.alphabet[b]] = {{"n", data.n}, {"path", path}, {"eta", spec.alphabet[data.eta]}};
  }
  return out;
}

SlideParams slide_from_json(const Json& json, const MarkovSpec& spec) {
  SlideParams params;
  params.u = generator_index(text(field(json, "u")), spec.rank());
  params.t = generator_index(text(field(json, "t")), spec.rank());
  if (params.u == params.t) throw InvalidInput("slide needs distinct generators u and t");
  params.edges = edges_from_json(field(json, "E"), spec);
  const Json& branch = field(json, "branch");
  if (!branch.is_object()) throw InvalidInput("'branch' must be an object");
  for (const auto& [name, data] : branch.items()) {
    BranchData bd;
    const Json& n = field(data, "n");
    if (!n.is_number_unsigned()) throw InvalidInput("branch 'n' must be a positive integer");
    bd.n = n.get<std::size_t>();
    for (const auto& v : field(data, "path")) bd.path.push_back(spec.symbol(text(v)));
    bd.eta = spec.symbol(text(field(data, "eta")));
    if (bd.n == 0 || bd.path.size() != bd.n + 1) throw InvalidInput("branch path must have n + 1 entries");
    params.branch.emplace(spec.symbol(name), std::move(bd));
  }
  for (auto [a, b] : params.edges) {
    if (!params.branch.contains(b)) throw InvalidInput("missing branch data for '" + spec.alphabet[b] + "'");
  }
  return params;
}

Json slide_log_to_json(const std::vector<SlideParams>& slides, const MarkovSpec& spec) {
  Json out = Json::object();
  out["generators"] = Json::array();
  for (std::size_t s = 0; s < spec.rank(); ++s) out["generators"].push_back(generator_name(s));
  out["alphabet"] = spec.alphabet;
  out["slides"] = Json::array();
  for (const auto& params : slides) out["slides"].push_back(slide_to_json(params, spec));
  return out;
}

std::vector<SlideParams> slide_log_from_json(const Json& json, const MarkovSpec& spec) {
  const Json& list = field(json, "slides");
  if (!list.is_array()) throw InvalidInput("'slides' must be an array");
  std::vector<SlideParams> slides;
  for (const auto& entry : list) slides.push_back(slide_from_json(entry, spec));
  return slides;
}

}  // namespace mcoe
