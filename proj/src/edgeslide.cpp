#include "mcoe/edgeslide.hpp"

#include <algorithm>
#include <memory>

#include "mcoe/enumerate.hpp"
#include "mcoe/error.hpp"

namespace mcoe {

namespace {

std::string edge_text(Edge e) { return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")"; }

}  // namespace

std::set<Triple> SlideParams::f_set() const {
  std::set<Triple> out;
  for (auto [a, b] : edges) out.insert({a, b, branch.at(b).eta});
  return out;
}

std::size_t SlideParams::n_max() const {
  std::size_t n = 0;
  for (auto [a, b] : edges) n = std::max(n, branch.at(b).n);
  return n;
}

SlideParams make_slide_params(const MarkovSpec& spec, std::size_t u, std::size_t t, EdgeSet edges) {
  if (u >= spec.rank() || t >= spec.rank()) throw InvalidInput("slide generator outside the rank");
  if (u == t) throw InvalidInput("slide needs distinct generators u and t");
  const auto graph = support_edges(spec, u);
  SlideParams params{u, t, std::move(edges), {}};
  for (auto [a, b] : params.edges) {
    if (!graph.has_edge(a, b)) throw PreconditionFailed("edge " + edge_text({a, b}) + " is not a support edge");
    if (!params.branch.contains(b)) params.branch.emplace(b, branch_data(graph, b));
  }
  return params;
}

void require_valid_params(const MarkovSpec& spec, const SlideParams& params) {
  if (params.u >= spec.rank() || params.t >= spec.rank() || params.u == params.t) {
    throw InvalidInput("slide generators must be distinct and inside the rank");
  }
  const auto graph = support_edges(spec, params.u);
  if (auto why = specialness_violation(graph, params.edges)) throw PreconditionFailed(*why);
  for (auto [a, b] : params.edges) {
    auto it = params.branch.find(b);
    if (it == params.branch.end() || !(it->second == branch_data(graph, b))) {
      throw PreconditionFailed("branch data of " + std::to_string(b) + " do not match the u-graph");
    }
  }
}

std::optional<Triple> eval_F(const CoordinateReader& x, const SlideParams& params) {
  const Symbol before = x(Word::letter(gen_inv(params.u)));
  const Symbol here = x(Word::identity());
  if (!params.edges.contains({before, here})) return std::nullopt;
  const std::size_t n = params.branch.at(here).n;
  return Triple{before, here, x(Word::power(params.u, static_cast<long>(n)))};
}

bool flagged(const CoordinateReader& x, const Word& h, const SlideParams& params) {
  const auto f = eval_F(translate(x, h), params);
  return f && (*f)[2] == params.branch.at((*f)[1]).eta;
}

TauSpec build_tau_unchecked(std::size_t rank, const SlideParams& params) {
  TauSpec tau = TauSpec::identity(rank);
  if (params.edges.empty()) return tau;
  tau.window_radius = params.n_max() + 2;
  tau.max_output_length = 2;
  const Word t = Word::letter(gen(params.t));
  const Word ut = Word::letter(gen(params.u)) * t;
  const Word u_inv_t = Word::letter(gen_inv(params.u)) * t;
  const Word u = Word::letter(gen(params.u));
  tau.set_rule(gen(params.t), [=](const CoordinateReader& x) {
    const bool up = flagged(x, ut, params);
    const bool down = flagged(x, t, params);
    if (up && down) throw Error("slide rule is not well defined: F(ut.x) and F(t.x) are both flagged");
    return up ? ut : down ? u_inv_t : t;
  });
  tau.set_rule(gen_inv(params.t), [=](const CoordinateReader& x) {
    const bool here = flagged(x, Word::identity(), params);
    const bool there = flagged(x, u, params);
    if (here && there) throw Error("slide rule is not well defined: F(x) and F(u.x) are both flagged");
    return here ? inverse(ut) : there ? inverse(u_inv_t) : inverse(t);
  });
  return tau;
}

TauSpec build_tau(const MarkovSpec& spec, const SlideParams& params) {
  require_valid_params(spec, params);
  return build_tau_unchecked(spec.rank(), params);
}

LeftConnectedSet pushforward_window(const SlideParams& params) {
  std::set<Word> d{Word::identity(), Word::letter(gen(params.t))};
  const Word t = Word::letter(gen(params.t));
  const long top = static_cast<long>(params.n_max()) + 1;
  for (long k = -1; k <= top; ++k) d.insert(Word::power(params.u, k) * t);
  return LeftConnectedSet(std::move(d));
}

Matrix pushforward_joint(const MarkovSpec& spec, const SlideParams& params, std::size_t budget) {
  const TauSpec tau = build_tau(spec, params);
  const LetterKernels kernels(spec);
  Matrix joint(spec.alphabet_size());
  for_each_configuration(
      kernels, pushforward_window(params),
      [&](const Configuration& phi, const Rational& weight) {
        const auto x = phi.reader();
        joint(x(Word::identity()), x(tau.apply(gen(params.t), x))) += weight;
      },
      budget);
  return joint;
}

MarkovSpec pushforward(const MarkovSpec& spec, const SlideParams& params, std::size_t budget) {
  require_valid(spec);
  MarkovSpec rho = spec;
  if (params.edges.empty()) return rho;
  const Matrix joint = pushforward_joint(spec, params, budget);
  Matrix q(spec.alphabet_size());
  for (std::size_t a = 0; a < q.size(); ++a) {
    for (std::size_t b = 0; b < q.size(); ++b) q(a, b) = joint(a, b) / spec.pi[a];
  }
  rho.kernels[params.t] = std::move(q);
  return rho;
}

bool SlideReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const SlideCheck& c) { return c.ok; });
}

const SlideCheck& SlideReport::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw InvalidInput("no check named " + name);
}

SlideCheck check_markov_factorisation(const MarkovSpec& spec, const TauSpec& tau, const MarkovSpec& rho,
                                      const LeftConnectedSet& domain, std::size_t budget) {
  const LetterKernels kernels(spec);
  const LetterKernels rho_kernels(rho);
  const auto order = domain.ordered();
  std::map<std::vector<Symbol>, Rational> law;
  const std::function<std::vector<Symbol>(const CoordinateReader&)> probe = [&](const CoordinateReader& x) {
    CocycleTable table(tau, x);
    std::vector<Symbol> out;
    out.reserve(order.size());
    for (const auto& h : order) out.push_back(table.recoded(h));
    return out;
  };
  for_each_read_path<std::vector<Symbol>>(
      kernels, probe, [&](const std::vector<Symbol>& y, const Rational& w, const Configuration&) { law[y] += w; },
      budget);
  for (const auto& [y, mass] : law) {
    Configuration psi;
    for (std::size_t i = 0; i < order.size(); ++i) psi.set(order[i], y[i]);
    const Rational formula = cylinder_measure(rho_kernels, psi);
    if (formula != mass) {
      return {"markov", false,
              describe(psi) + ": pushforward " + to_string(mass) + ", product formula " + to_string(formula)};
    }
  }
  return {"markov", true, {}};
}

namespace {

SlideCheck check_orbit_surjective(const TauSpec& tau, const MarkovSpec& spec, const SlideVerifyOptions& options) {
  const auto targets = ball_words(spec.rank(), 2);
  const auto sources = ball_words(spec.rank(), 4);
  for (std::size_t i = 0; i < options.samples; ++i) {
    const LazySample x(spec, derive_seed(options.seed, i));
    CocycleTable table(tau, x.reader());
    std::set<Word> image;
    for (const auto& h : sources) image.insert(table.omega(h));
    for (const auto& g : targets) {
      if (!image.contains(g)) {
        return {"orbit_surjective", false, "sample " + std::to_string(i) + ": " + to_string(g) + " not reached"};
      }
    }
  }
  return {"orbit_surjective", true, {}};
}

SlideCheck check_restrictions(const MarkovSpec& spec, const TauSpec& tau, const SlideParams& params,
                              std::size_t budget) {
  const LetterKernels kernels(spec);
  for (std::size_t s = 0; s < spec.rank(); ++s) {
    if (s == params.t) continue;
    Matrix joint(spec.alphabet_size());
    const Word step = Word::letter(gen(s));
    const std::function<std::pair<Symbol, Symbol>(const CoordinateReader&)> probe = [&](const CoordinateReader& x) {
      CocycleTable table(tau, x);
      return std::pair{table.recoded(Word::identity()), table.recoded(step)};
    };
    for_each_read_path<std::pair<Symbol, Symbol>>(
        kernels, probe,
        [&](const std::pair<Symbol, Symbol>& y, const Rational& w, const Configuration&) {
          joint(y.first, y.second) += w;
        },
        budget);
    for (std::size_t a = 0; a < joint.size(); ++a) {
      for (std::size_t b = 0; b < joint.size(); ++b) {
        if (joint(a, b) != spec.pi[a] * spec.kernels[s](a, b)) {
          return {"restrictions", false,
                  "generator s" + std::to_string(s + 1) + " entry (" + std::to_string(a) + "," + std::to_string(b) +
                      ")"};
        }
      }
    }
  }
  return {"restrictions", true, {}};
}

}  // namespace

SlideReport verify_slide(const MarkovSpec& spec, const SlideParams& params, const SlideVerifyOptions& options) {
  SlideReport report;
  const TauSpec tau = build_tau(spec, params);
  report.rho = pushforward(spec, params, options.budget);
  if (options.q_override) report.rho.kernels[params.t] = *options.q_override;

  auto add = [&report](std::string name, const CheckResult& r) {
    report.checks.push_back({std::move(name), r.ok, r.witness});
  };
  add("involution", check_involution(tau, spec, options.budget));
  add("omega_involution", check_inverse_pair(tau, tau, spec, 2, options.seed, options.samples, options.budget));
  report.checks.push_back(check_orbit_surjective(tau, spec, options));

  CheckResult past = CheckResult::pass();
  for (Letter s : letters(spec.rank())) {
    if (s == gen_inv(params.t) || s.generator == params.u) continue;
    past = check_past_preservation(tau, spec, s, 2, options.budget);
    if (!past) {
      past.witness = "s = " + to_string(s) + ", " + past.witness;
      break;
    }
  }
  add("past_preserved", past);

  // Small domains first so that a failure comes with a small witness.
  const std::size_t rank = spec.rank();
  std::vector<std::set<Word>> domains{ball(rank, 1).elements()};
  const auto words = ball_words(rank, 2);
  for (std::size_t i = 1; i < words.size(); ++i) {
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      std::set<Word> d{Word::identity(), words[i], words[j]};
      if (is_left_connected(d)) domains.push_back(std::move(d));
    }
  }
  SlideCheck markov{"markov", true, {}};
  report.markov_domain = "ball(1) and every left-connected 3-element subset of ball(2)";
  for (auto& d : domains) {
    markov = check_markov_factorisation(spec, tau, report.rho, LeftConnectedSet(std::move(d)), options.budget);
    if (!markov.ok) break;
  }
  if (markov.ok) {
    try {
      markov = check_markov_factorisation(spec, tau, report.rho, ball(rank, 2), options.budget);
      report.markov_domain = "ball(2)";
    } catch (const BudgetExceeded&) {
      report.markov_domain += " (ball(2) exceeds the enumeration budget)";
    }
  }
  report.checks.push_back(markov);
  report.checks.push_back(check_restrictions(spec, tau, params, options.budget));

  const auto validation = validate(report.rho);
  report.checks.push_back({"rho_valid", validation.ok(), validation.ok() ? "" : validation.violations.front().detail});

  const auto mu_t = support_edges(spec, params.t);
  const auto rho_t = support_edges(report.rho, params.t);
  SlideCheck support{"support", true, {}};
  EdgeSet required = mu_t.edges();
  for (auto [alpha, a] : mu_t.edges()) {
    for (auto [a2, b] : params.edges) {
      if (a2 == a) required.emplace(alpha, b);
    }
  }
  for (auto e : required) {
    if (!rho_t.has_edge(e.first, e.second)) {
      support = {"support", false, "edge " + edge_text(e) + " missing from supp Q_t"};
      break;
    }
  }
  report.checks.push_back(support);

  const auto rho_classes = classes(rho_t);
  SlideCheck relation{"relation", true, {}};
  EdgeSet related = params.edges;
  related.insert(mu_t.edges().begin(), mu_t.edges().end());
  for (auto e : related) {
    if (!rho_classes.same_class(e.first, e.second)) {
      relation = {"relation", false, "pair " + edge_text(e) + " not related under rho_t"};
      break;
    }
  }
  report.checks.push_back(relation);

  SlideCheck aperiodic{"aperiodic", true, {}};
  for (auto [a, b] : params.edges) {
    for (Symbol v : {a, b}) {
      if (is_periodic_class(rho_t, rho_classes.class_containing(v))) {
        aperiodic = {"aperiodic", false, "class of " + std::to_string(v) + " is periodic under rho_t"};
      }
    }
  }
  report.checks.push_back(aperiodic);
  return report;
}

namespace {

/// Slides both halves of the spanning tree of [a]_u onto every other generator.
void slide_tree(MarkovSpec& spec, std::size_t u, Symbol a, std::vector<SlideParams>& slides, std::size_t budget) {
  const auto sets = special_sets(spec, u, a);
  for (const EdgeSet* half : {&sets.first, &sets.second}) {
    if (half->empty()) continue;
    for (std::size_t t = 0; t < spec.rank(); ++t) {
      if (t == u) continue;
      SlideParams params = make_slide_params(spec, u, t, *half);
      spec = pushforward(spec, params, budget);
      slides.push_back(std::move(params));
    }
  }
}

}  // namespace

PipelineResult generator_ergodic_pipeline(const MarkovSpec& input, std::size_t budget) {
  require_valid(input);
  const auto initial = classify(input);
  if (!initial.properly_ergodic) throw PreconditionFailed("input measure is not properly ergodic");
  PipelineResult result{input, {}, 0};
  if (initial.generator_ergodic()) return result;

  std::size_t u = 0;
  Symbol a = 0;
  bool found = false;
  for (std::size_t s = 0; s < input.rank() && !found; ++s) {
    const auto graph = support_edges(input, s);
    for (const auto& cls : classes(graph).classes) {
      if (!is_periodic_class(graph, cls)) {
        u = s;
        a = cls.front();
        found = true;
        break;
      }
    }
  }
  slide_tree(result.spec, u, a, result.slides, budget);

  // Each pass can only enlarge the class of a under every generator, so the
  // loop ends after at most |A| passes without progress.
  std::vector<std::size_t> previous;
  while (!classify(result.spec).generator_ergodic()) {
    std::vector<std::size_t> sizes;
    for (std::size_t s = 0; s < result.spec.rank(); ++s) {
      sizes.push_back(classes(support_edges(result.spec, s)).class_containing(a).size());
    }
    if (sizes == previous) throw Error("pipeline made no progress: restrictions are still not generator-ergodic");
    previous = sizes;
    ++result.stage2_passes;
    for (std::size_t s = 0; s < result.spec.rank(); ++s) {
      slide_tree(result.spec, s, a, result.slides, budget);
      if (classify(result.spec).generator_ergodic()) break;
    }
  }
  return result;
}

CoordinateReader replay_reader(const std::vector<SlideParams>& slides, std::size_t rank, CoordinateReader x) {
  for (const auto& params : slides) x = omega_map_reader(build_tau_unchecked(rank, params), std::move(x));
  return x;
}

Configuration replay(const std::vector<SlideParams>& slides, std::size_t rank, const CoordinateReader& x,
                     std::size_t radius) {
  const auto y = replay_reader(slides, rank, x);
  Configuration out;
  for (const auto& h : ball_words(rank, radius)) out.set(h, y(h));
  return out;
}

Configuration replay(const std::vector<SlideParams>& slides, std::size_t rank, const Configuration& x,
                     std::size_t radius) {
  return replay(slides, rank, x.reader(), radius);
}

}  // namespace mcoe
