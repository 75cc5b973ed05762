#include "mcoe/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mcoe/cocycle.hpp"
#include "mcoe/edgeslide.hpp"
#include "mcoe/enumerate.hpp"
#include "mcoe/error.hpp"
#include "mcoe/fullgroup.hpp"
#include "mcoe/graphs.hpp"
#include "mcoe/slide_io.hpp"

namespace mcoe::cli {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(h));
  return buffer;
}

namespace {

class Checks {
 public:
  void add(const std::string& name, bool ok, const std::string& witness = {}) {
    Json item = {{"name", name}, {"ok", ok}};
    if (!ok && !witness.empty()) item["witness"] = witness;
    items_.push_back(std::move(item));
    ok_ = ok_ && ok;
  }
  void add(const std::string& name, const CheckResult& result) { add(name, result.ok, result.witness); }

  bool ok() const { return ok_; }
  const Json& json() const { return items_; }

 private:
  Json items_ = Json::array();
  bool ok_ = true;
};

std::string describe_violation(const Violation& v) {
  std::string text = to_string(v.kind);
  if (v.generator) text += " generator " + generator_name(*v.generator);
  if (v.row) text += " row " + std::to_string(*v.row);
  if (!v.detail.empty()) text += ": " + v.detail;
  return text;
}

Json violations_json(const ValidationReport& report) {
  Json list = Json::array();
  for (const auto& v : report.violations) {
    Json item = {{"kind", to_string(v.kind)}};
    if (v.generator) item["generator"] = generator_name(*v.generator);
    if (v.row) item["row"] = *v.row;
    item["detail"] = v.detail;
    list.push_back(std::move(item));
  }
  return list;
}

Json names(const MarkovSpec& spec, const std::vector<Symbol>& symbols) {
  Json list = Json::array();
  for (Symbol a : symbols) list.push_back(spec.alphabet[a]);
  return list;
}

Json classification_json(const MarkovSpec& spec, const Classification& c) {
  Json per = Json::object();
  for (std::size_t s = 0; s < c.per_generator.size(); ++s) {
    const auto& g = c.per_generator[s];
    Json classes_list = Json::array(), periodic = Json::array();
    for (const auto& cls : g.classes) classes_list.push_back(names(spec, cls));
    for (const auto& cls : g.periodic_classes) periodic.push_back(names(spec, cls));
    per[generator_name(s)] = {
        {"ergodic", g.ergodic}, {"free", g.free}, {"classes", classes_list}, {"periodic_classes", periodic}};
  }
  return {{"per_generator", per}, {"ergodic", c.ergodic}, {"properly_ergodic", c.properly_ergodic}};
}

std::string format_double(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

/// The slide the pipeline would start with: first generator with an
/// aperiodic class of at least two symbols, one half of its spanning tree.
std::optional<SlideParams> first_slide(const MarkovSpec& spec) {
  for (std::size_t u = 0; u < spec.rank(); ++u) {
    const auto graph = support_edges(spec, u);
    for (const auto& cls : classes(graph).classes) {
      if (cls.size() < 2 || is_periodic_class(graph, cls)) continue;
      const auto sets = special_sets(graph, cls.front());
      const EdgeSet& edges = sets.first.empty() ? sets.second : sets.first;
      return make_slide_params(spec, u, u == 0 ? 1 : 0, edges);
    }
  }
  return std::nullopt;
}

void exact_checks(const MarkovSpec& spec, std::size_t radius, bool extend, Checks& checks) {
  const LetterKernels kernels(spec);
  const auto all = letters(spec.rank());
  std::vector<std::pair<Configuration, Rational>> cylinders;
  Rational total = 0;
  for_each_configuration(kernels, ball(spec.rank(), radius), [&](const Configuration& phi, const Rational& m) {
    cylinders.emplace_back(phi, m);
    total += m;
  });
  checks.add("total_mass", total == 1, "sum over ball(" + std::to_string(radius) + ") is " + to_string(total));

  std::string witness;
  for (const auto& [phi, m] : cylinders) {
    for (Letter l : all) {
      const Word h = Word::letter(l);
      Configuration moved;
      for (const auto& [d, a] : phi.values()) moved.set(d * h, a);
      if (cylinder_measure(kernels, moved) != m) {
        witness = "shift by " + to_string(l) + " changes the measure of " + describe(phi);
        break;
      }
    }
    if (!witness.empty()) break;
  }
  checks.add("translation_invariance", witness.empty(), witness);
  if (!extend) return;

  // Every cylinder on ball(radius) is the sum of its one-coordinate extensions.
  std::vector<Word> frontier;
  for (const auto& g : ball_words(spec.rank(), radius + 1)) {
    if (g.length() == radius + 1) frontier.push_back(g);
  }
  witness.clear();
  for (const auto& [phi, m] : cylinders) {
    for (const auto& g : frontier) {
      Rational sum = 0;
      Configuration extended = phi;
      for (Symbol a = 0; a < spec.alphabet_size(); ++a) {
        extended.set(g, a);
        sum += cylinder_measure(kernels, extended);
      }
      if (sum != m) {
        witness = "extending " + describe(phi) + " at " + to_string(g) + " gives " + to_string(sum);
        break;
      }
    }
    if (!witness.empty()) break;
  }
  checks.add("additivity", witness.empty(), witness);
}

void monte_carlo_check(const MarkovSpec& spec, std::uint64_t seed, std::size_t samples, Checks& checks) {
  const LetterKernels kernels(spec);
  const auto all = letters(spec.rank());
  const std::size_t n = spec.alphabet_size();
  std::vector<std::vector<std::size_t>> counts(all.size(), std::vector<std::size_t>(n * n, 0));
  for (std::size_t i = 0; i < samples; ++i) {
    const auto x = sample_ball(spec, 1, derive_seed(seed, i));
    const Symbol root = x.at(Word::identity());
    for (std::size_t k = 0; k < all.size(); ++k) ++counts[k][root * n + x.at(Word::letter(all[k]))];
  }
  std::string witness;
  for (std::size_t k = 0; k < all.size() && witness.empty(); ++k) {
    for (Symbol a = 0; a < n && witness.empty(); ++a) {
      for (Symbol b = 0; b < n; ++b) {
        const double p = to_double(kernels.pi()[a] * kernels[all[k]](a, b));
        const double f = static_cast<double>(counts[k][a * n + b]) / static_cast<double>(samples);
        const double bound = 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
        if (std::abs(f - p) > bound || (p == 0.0 && f != 0.0)) {
          witness = "letter " + to_string(all[k]) + " pair (" + spec.alphabet[a] + "," + spec.alphabet[b] +
                    "): empirical " + format_double(f) + " vs " + format_double(p);
          break;
        }
      }
    }
  }
  checks.add("monte_carlo_pairs", witness.empty(), witness);
}

void slide_checks(const MarkovSpec& spec, const SlideParams& params, std::size_t level, std::uint64_t seed,
                  Checks& checks) {
  const TauSpec tau = build_tau(spec, params);
  checks.add("slide_involution", check_involution(tau, spec));

  const std::size_t count = 10 * level;
  const auto pairs_radius = level + 2;
  const auto words = ball_words(spec.rank(), pairs_radius);
  const auto inner = ball_words(spec.rank(), level + 1);
  std::string cocycle_witness, involution_witness, equivariance_witness;
  for (std::size_t i = 0; i < count; ++i) {
    const LazySample sample(spec, derive_seed(seed ^ 0x5eedull, i));
    const CoordinateReader x = sample.reader();
    CocycleTable table(tau, x);

    for (const auto& h : words) {
      if (!cocycle_witness.empty()) break;
      const auto hx = star_reader(tau, h, x);
      for (const auto& g : words) {
        if (g.length() + h.length() > pairs_radius) continue;
        if (table.omega(g * h) != omega(tau, g, hx) * table.omega(h)) {
          cocycle_witness = "g = " + to_string(g) + ", h = " + to_string(h) + ", sample " + std::to_string(i);
          break;
        }
      }
    }

    const auto y = omega_map_reader(tau, x);
    const auto z = omega_map_reader(tau, y);
    for (const auto& f : inner) {
      if (involution_witness.empty() && z(f) != x(f)) {
        involution_witness = "coordinate " + to_string(f) + ", sample " + std::to_string(i);
      }
    }

    for (const auto& g : ball_words(spec.rank(), level)) {
      if (!equivariance_witness.empty()) break;
      const auto moved = omega_map_reader(tau, star_reader(tau, g, x));
      for (const auto& f : ball_words(spec.rank(), level)) {
        if (moved(f) != y(f * g)) {
          equivariance_witness = "g = " + to_string(g) + ", f = " + to_string(f) + ", sample " + std::to_string(i);
          break;
        }
      }
    }
  }
  checks.add("slide_cocycle_identity", cocycle_witness.empty(), cocycle_witness);
  checks.add("slide_omega_involution", involution_witness.empty(), involution_witness);
  checks.add("slide_equivariance", equivariance_witness.empty(), equivariance_witness);

  const MarkovSpec rho = pushforward(spec, params);
  const auto rho_validation = validate(rho);
  checks.add("slide_rho_valid", rho_validation.ok(),
             rho_validation.ok() ? std::string() : describe_violation(rho_validation.violations.front()));
  std::string restriction_witness;
  for (std::size_t s = 0; s < spec.rank(); ++s) {
    if (s != params.t && !(restriction(rho, s) == restriction(spec, s))) {
      restriction_witness = "restriction along " + generator_name(s) + " changed";
    }
  }
  checks.add("slide_restrictions", restriction_witness.empty(), restriction_witness);
}

}  // namespace

Json verify_report(const MarkovSpec& spec, const VerifyOptions& options) {
  Checks checks;
  const auto validation = validate(spec);
  checks.add("valid", validation.ok(), validation.ok() ? std::string() : describe_violation(validation.violations.front()));
  Json report = Json::object();
  if (validation.ok()) {
    const std::size_t radius = std::max<std::size_t>(1, options.level > 0 ? options.level - 1 : 0);
    exact_checks(spec, radius, options.level >= 2, checks);
    monte_carlo_check(spec, options.seed, options.samples, checks);
    const auto slide = first_slide(spec);
    if (slide) {
      report["slide"] = slide_to_json(*slide, spec);
      slide_checks(spec, *slide, options.level, options.seed, checks);
    } else {
      report["slide"] = nullptr;
    }
  }
  report["checks"] = checks.json();
  report["status"] = checks.ok() ? "pass" : "fail";
  return report;
}

namespace {

struct Context {
  std::string command;
  std::string digest_input;
  std::ostream* out;

  std::string read(const std::string& path) {
    std::string text = read_file(path);
    digest_input += text;
    digest_input.push_back('\0');
    return text;
  }

  Json header() const {
    Json report = Json::object();
    report["command"] = command;
    report["inputs_digest"] = fnv1a_hex(digest_input);
    return report;
  }

  int emit(Json report, bool ok) const {
    *out << report.dump(2) << "\n";
    return ok ? kExitPass : kExitFail;
  }
};

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

void merge(Json& into, const Json& from) {
  for (const auto& [key, value] : from.items()) into[key] = value;
}

int cmd_validate(Context& ctx, const std::string& spec_path) {
  const MarkovSpec spec = parse_spec(ctx.read(spec_path));
  const auto validation = validate(spec);
  Json report = ctx.header();
  report["violations"] = violations_json(validation);
  report["status"] = validation.ok() ? "pass" : "fail";
  return ctx.emit(std::move(report), validation.ok());
}

int cmd_analyze(Context& ctx, const std::string& spec_path) {
  const MarkovSpec spec = parse_spec(ctx.read(spec_path));
  const auto validation = validate(spec);
  Json report = ctx.header();
  if (!validation.ok()) {
    report["violations"] = violations_json(validation);
    report["status"] = "fail";
    return ctx.emit(std::move(report), false);
  }
  merge(report, classification_json(spec, classify(spec)));
  report["status"] = "pass";
  return ctx.emit(std::move(report), true);
}

int cmd_slide(Context& ctx, const std::string& spec_path, const std::string& params_path, std::uint64_t seed,
              std::size_t samples, const std::string& out_path) {
  const MarkovSpec spec = parse_spec(ctx.read(spec_path));
  const Json params_json = parse_json_text(ctx.read(params_path));
  require_valid(spec);
  const SlideParams params = slide_params_from_json(params_json, spec);
  require_valid_params(spec, params);

  SlideVerifyOptions options;
  options.seed = seed;
  options.samples = samples;
  const SlideReport slide = verify_slide(spec, params, options);

  Json report = ctx.header();
  report["params"] = slide_to_json(params, spec);
  Checks checks;
  for (const auto& c : slide.checks) checks.add(c.name, c.ok, c.witness);
  report["checks"] = checks.json();
  report["markov_domain"] = slide.markov_domain;
  if (out_path.empty()) {
    report["rho"] = spec_to_json(slide.rho);
  } else {
    write_file(out_path, serialize(slide.rho));
  }
  report["status"] = checks.ok() ? "pass" : "fail";
  return ctx.emit(std::move(report), checks.ok());
}

int cmd_pipeline(Context& ctx, const std::string& spec_path, const std::string& out_path,
                 const std::string& slides_path) {
  const MarkovSpec spec = parse_spec(ctx.read(spec_path));
  const PipelineResult result = generator_ergodic_pipeline(spec);
  const Classification c = classify(result.spec);

  Checks checks;
  checks.add("output_valid", validate(result.spec).ok());
  checks.add("pi_unchanged", result.spec.pi == spec.pi);
  checks.add("generator_ergodic", c.generator_ergodic());

  Json report = ctx.header();
  report["slides"] = result.slides.size();
  report["stage2_passes"] = result.stage2_passes;
  report["classification"] = classification_json(result.spec, c);
  report["checks"] = checks.json();
  if (out_path.empty()) {
    report["spec"] = spec_to_json(result.spec);
  } else {
    write_file(out_path, serialize(result.spec));
  }
  const Json log = slide_log_to_json(result.slides, spec);
  if (slides_path.empty()) {
    report["slide_log"] = log;
  } else {
    write_file(slides_path, log.dump(2) + "\n");
  }
  report["status"] = checks.ok() ? "pass" : "fail";
  return ctx.emit(std::move(report), checks.ok());
}

int cmd_bernoullize(Context& ctx, const std::string& spec_path, const std::string& out_path) {
  const MarkovSpec spec = parse_spec(ctx.read(spec_path));
  const PipelineResult pipeline = generator_ergodic_pipeline(spec);
  const BernoullizationResult result = bernoullization_sequence(pipeline.spec);

  bool all_valid = true, pi_kept = true;
  for (const auto& step : result.sequence) {
    all_valid = all_valid && validate(step).ok();
    pi_kept = pi_kept && step.pi == spec.pi;
  }
  Checks checks;
  checks.add("steps_valid", all_valid);
  checks.add("pi_unchanged", pi_kept);
  checks.add("step_count", result.sequence.size() == spec.rank() + 1);
  checks.add("final_is_bernoulli", result.sequence.back() == bernoulli_spec(spec.alphabet, spec.pi, spec.rank()));

  Json sequence = Json::array();
  for (const auto& step : result.sequence) sequence.push_back(spec_to_json(step));
  Json report = ctx.header();
  report["pipeline_slides"] = pipeline.slides.size();
  report["steps"] = result.sequence.size();
  report["map_level"] = result.map_level;
  report["checks"] = checks.json();
  if (out_path.empty()) {
    report["sequence"] = sequence;
  } else {
    write_file(out_path, Json{{"map_level", result.map_level}, {"sequence", sequence}}.dump(2) + "\n");
  }
  report["status"] = checks.ok() ? "pass" : "fail";
  return ctx.emit(std::move(report), checks.ok());
}

int cmd_verify(Context& ctx, const std::string& spec_path, const VerifyOptions& options) {
  const MarkovSpec spec = parse_spec(ctx.read(spec_path));
  if (options.level == 0) throw InvalidInput("--level must be at least 1");
  if (options.samples == 0) throw InvalidInput("--samples must be positive");
  Json report = ctx.header();
  report["level"] = options.level;
  report["seed"] = options.seed;
  report["samples"] = options.samples;
  const Json body = verify_report(spec, options);
  merge(report, body);
  return ctx.emit(std::move(report), body["status"] == "pass");
}

std::vector<std::string> label_names(const Json& json, const char* flag) {
  if (!json.is_array()) throw InvalidInput(std::string(flag) + " must be a JSON array");
  std::vector<std::string> out;
  for (const auto& v : json) {
    if (v.is_string()) {
      out.push_back(v.get<std::string>());
    } else if (v.is_number_integer()) {
      out.push_back(v.dump());
    } else {
      throw InvalidInput(std::string(flag) + " entries must be strings or integers");
    }
  }
  return out;
}

int cmd_match(Context& ctx, const std::string& phi_text, const std::string& psi_text) {
  ctx.digest_input = phi_text + '\0' + psi_text + '\0';
  const auto phi_names = label_names(parse_json_text(phi_text), "--phi");
  const auto psi_names = label_names(parse_json_text(psi_text), "--psi");
  std::map<std::string, Symbol> index;
  for (const auto* list : {&phi_names, &psi_names}) {
    for (const auto& name : *list) index.emplace(name, 0);
  }
  Symbol next = 0;
  for (auto& [name, symbol] : index) symbol = next++;
  Labels phi, psi;
  for (const auto& name : phi_names) phi.push_back(index.at(name));
  for (const auto& name : psi_names) psi.push_back(index.at(name));
  if (phi.size() != psi.size()) throw InvalidInput("--phi and --psi have different lengths");

  const Permutation s = match_full_group(phi, psi);
  bool verified = true;
  for (std::size_t x = 0; x < psi.size(); ++x) verified = verified && psi[x] == phi[s(x)];

  Json report = ctx.header();
  report["permutation"] = s.image();
  report["cycles"] = s.cycles();
  report["verified"] = verified;
  report["status"] = verified ? "pass" : "fail";
  return ctx.emit(std::move(report), verified);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Markov measures on free groups: classification, edge slides and orbit-equivalence checks", "mcoe"};
  app.require_subcommand(1);

  std::string spec_path, params_path, out_path, slides_path, phi_text, psi_text;
  std::uint64_t seed = 0;
  std::size_t samples = 20, level = 1;
  std::optional<std::size_t> verify_samples;

  auto* validate_cmd = app.add_subcommand("validate", "Check stochasticity, stationarity and positivity");
  validate_cmd->add_option("--spec", spec_path, "Chain-spec JSON")->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "Ergodicity and freeness of every restriction");
  analyze_cmd->add_option("--spec", spec_path, "Chain-spec JSON")->required();

  auto* slide_cmd = app.add_subcommand("slide", "Apply one edge slide and verify it");
  slide_cmd->add_option("--spec", spec_path, "Chain-spec JSON")->required();
  slide_cmd->add_option("--params", params_path, "Slide parameters {u, t, E}")->required();
  slide_cmd->add_option("--seed", seed, "Sampling seed")->required();
  slide_cmd->add_option("--samples", samples, "Sampled configurations per check");
  slide_cmd->add_option("--out", out_path, "Where to write the pushforward spec");

  auto* pipeline_cmd = app.add_subcommand("pipeline", "Slide until every restriction is ergodic and free");
  pipeline_cmd->add_option("--spec", spec_path, "Chain-spec JSON")->required();
  pipeline_cmd->add_option("--out", out_path, "Where to write the final spec");
  pipeline_cmd->add_option("--slides-out", slides_path, "Where to write the replayable slide log");

  auto* bernoullize_cmd = app.add_subcommand("bernoullize", "Pipeline, then swap every kernel for the Bernoulli one");
  bernoullize_cmd->add_option("--spec", spec_path, "Chain-spec JSON")->required();
  bernoullize_cmd->add_option("--out", out_path, "Where to write the spec sequence");

  auto* verify_cmd = app.add_subcommand("verify", "Run the property suite");
  verify_cmd->add_option("--spec", spec_path, "Chain-spec JSON")->required();
  verify_cmd->add_option("--level", level, "Depth of the exact and sampled checks");
  verify_cmd->add_option("--seed", seed, "Sampling seed")->required();
  verify_cmd->add_option("--samples", verify_samples, "Monte Carlo sample count");

  auto* match_cmd = app.add_subcommand("match", "Greedy full-group matcher on a cycle");
  match_cmd->add_option("--phi", phi_text, "Labels as a JSON array")->required();
  match_cmd->add_option("--psi", psi_text, "Labels as a JSON array")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInput;
  }

  Context ctx{app.get_subcommands().front()->get_name(), {}, &out};
  try {
    if (*validate_cmd) return cmd_validate(ctx, spec_path);
    if (*analyze_cmd) return cmd_analyze(ctx, spec_path);
    if (*slide_cmd) return cmd_slide(ctx, spec_path, params_path, seed, samples, out_path);
    if (*pipeline_cmd) return cmd_pipeline(ctx, spec_path, out_path, slides_path);
    if (*bernoullize_cmd) return cmd_bernoullize(ctx, spec_path, out_path);
    if (*verify_cmd) {
      VerifyOptions options;
      options.level = level;
      options.seed = seed;
      if (verify_samples) options.samples = *verify_samples;
      return cmd_verify(ctx, spec_path, options);
    }
    return cmd_match(ctx, phi_text, psi_text);
  } catch (const PreconditionFailed& e) {
    Json report = ctx.header();
    report["status"] = "fail";
    report["error"] = e.what();
    err << e.what() << "\n";
    return ctx.emit(std::move(report), false);
  } catch (const InvalidInput& e) {
    err << "input error: " << e.what() << "\n";
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
  } catch (const Json::exception& e) {
    err << "input error: " << e.what() << "\n";
  }
  return kExitInput;
}

}  // namespace mcoe::cli
