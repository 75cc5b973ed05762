#pragma once

// Edge sliding: the recoding that rewrites t as u t or u^{-1} t next to the
// edges of a special set, its exact pushforward measure, and the pipeline
// that makes every generator restriction ergodic and free.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mcoe/chainspec.hpp"
#include "mcoe/cocycle.hpp"
#include "mcoe/graphs.hpp"

namespace mcoe {

using Triple = std::array<Symbol, 3>;

struct SlideParams {
  std::size_t u = 0;
  std::size_t t = 1;
  EdgeSet edges;
  /// Branch data of every target b of an edge (a, b).
  std::map<Symbol, BranchData> branch;

  /// {(a, b, eta(b)) : (a, b) in edges}.
  std::set<Triple> f_set() const;
  /// Largest n(b) over the targets, 0 for an empty edge set.
  std::size_t n_max() const;

  friend bool operator==(const SlideParams&, const SlideParams&) = default;
};

/// Computes branch data on the u-graph of the spec. Throws InvalidInput for
/// u == t or an unknown generator, and PreconditionFailed when an edge is not
/// a support edge or a target lies in a periodic class.
SlideParams make_slide_params(const MarkovSpec& spec, std::size_t u, std::size_t t, EdgeSet edges);

/// Throws PreconditionFailed unless the edge set is special for P_u and the
/// branch data match the current u-graph.
void require_valid_params(const MarkovSpec& spec, const SlideParams& params);

/// F(x) = (x_{u^-1}, x_e, x_{u^n}) with n = n(x_e), defined when
/// (x_{u^-1}, x_e) is an edge. Reads x_{u^-1} and x_e first.
std::optional<Triple> eval_F(const CoordinateReader& x, const SlideParams& params);
/// F(h . x) is defined and lies in the F-set.
bool flagged(const CoordinateReader& x, const Word& h, const SlideParams& params);

/// Validates the parameters against the spec, then builds the rule.
TauSpec build_tau(const MarkovSpec& spec, const SlideParams& params);
/// The rule without validation. Evaluating it throws Error where both
/// alternatives of a case apply, which can only happen for non-special sets.
TauSpec build_tau_unchecked(std::size_t rank, const SlideParams& params);

/// Coordinates the exact pushforward enumerates: e, t, u^k t for -1 <= k <= n_max + 1.
LeftConnectedSet pushforward_window(const SlideParams& params);

/// rho(y_e = a, y_t = b) for rho = Omega_* mu, by exact enumeration of the window.
Matrix pushforward_joint(const MarkovSpec& spec, const SlideParams& params,
                         std::size_t budget = kDefaultEnumerationBudget);
/// The spec of rho: P_t replaced by Q_t(a, b) = rho(y_e = a, y_t = b) / pi(a).
MarkovSpec pushforward(const MarkovSpec& spec, const SlideParams& params,
                       std::size_t budget = kDefaultEnumerationBudget);

struct SlideCheck {
  std::string name;
  bool ok = true;
  std::string witness;
};

struct SlideReport {
  MarkovSpec rho;
  std::vector<SlideCheck> checks;
  /// Domains on which the factorisation of rho's cylinders was verified.
  std::string markov_domain;

  bool ok() const;
  const SlideCheck& check(const std::string& name) const;
};

struct SlideVerifyOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 20;
  /// Replaces Q_t in rho before the checks run (mutation testing).
  std::optional<Matrix> q_override;
  std::size_t budget = kDefaultEnumerationBudget;
};

/// Runs every check on one slide:
///   involution          tau(l^-1, tau(l, x) . x) = tau(l, x)^-1 a.s.
///   omega_involution    omega(omega(l, Omega x), x) = l a.s., Omega Omega x = x on ball(2) for samples
///   orbit_surjective    every g in ball(2) is omega(h, x) for some h in ball(4), for samples
///   past_preserved      g in past(s) iff omega(g, x) in past(s), s not in {t^-1, u, u^-1}, |g| <= 2
///   markov              rho's cylinders agree with the product formula for rho's kernels
///   restrictions        law of (y_e, y_s) is pi P_s for s != t
///   rho_valid           rho passes validate
///   support             supp Q_t contains E_t and the edges (alpha, b) with (alpha, a) in E_t, (a, b) in the set
///   relation            the t-relation of rho contains the set and the t-relation of mu
///   aperiodic           endpoints of the set lie in aperiodic classes of rho's t-graph
SlideReport verify_slide(const MarkovSpec& spec, const SlideParams& params, const SlideVerifyOptions& options = {});

/// rho's law of Omega x on the domain, compared with the product formula for
/// rho's kernels on every configuration with positive rho-mass.
SlideCheck check_markov_factorisation(const MarkovSpec& spec, const TauSpec& tau, const MarkovSpec& rho,
                                      const LeftConnectedSet& domain,
                                      std::size_t budget = kDefaultEnumerationBudget);

struct PipelineResult {
  MarkovSpec spec;
  std::vector<SlideParams> slides;
  std::size_t stage2_passes = 0;
};

/// Slides until every generator restriction is ergodic and essentially free.
/// Stage 1 picks the first u with an aperiodic class and its smallest vertex a,
/// slides both halves of the spanning tree of [a]_u onto every t != u; stage 2
/// repeats this for every generator in turn and is iterated until the
/// restrictions are generator-ergodic. Throws PreconditionFailed when the
/// input is not properly ergodic.
PipelineResult generator_ergodic_pipeline(const MarkovSpec& spec,
                                          std::size_t budget = kDefaultEnumerationBudget);

/// Omega_k ... Omega_1 x, lazily.
CoordinateReader replay_reader(const std::vector<SlideParams>& slides, std::size_t rank, CoordinateReader x);
/// The composed recoding on ball(radius).
Configuration replay(const std::vector<SlideParams>& slides, std::size_t rank, const Configuration& x,
                     std::size_t radius);
Configuration replay(const std::vector<SlideParams>& slides, std::size_t rank, const CoordinateReader& x,
                     std::size_t radius);

}  // namespace mcoe
