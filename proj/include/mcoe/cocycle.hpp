#pragma once

// Rewriting rules tau on generators, the induced action g * x = omega(g, x) . x,
// the cocycle omega and the recoding (Omega x)_h = x_{omega(h, x)}.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mcoe/chainspec.hpp"
#include "mcoe/enumerate.hpp"
#include "mcoe/freegroup.hpp"

namespace mcoe {

/// tau(l, x) as a function of the configuration x, read through a reader.
using TauRule = std::function<Word(const CoordinateReader&)>;

/// Finite-window generator rewrite. A rule may only read coordinates x_f with
/// |f| <= window_radius and must return a reduced word of length at most
/// max_output_length. A letter without a rule is left unchanged.
struct TauSpec {
  std::size_t rank = 0;
  std::size_t window_radius = 0;
  std::size_t max_output_length = 1;
  std::vector<TauRule> rules;  // indexed by Letter::code(); empty entry = identity

  static TauSpec identity(std::size_t rank);

  bool is_trivial(Letter l) const { return !rules[l.code()]; }
  void set_rule(Letter l, TauRule rule) { rules[l.code()] = std::move(rule); }
  /// tau(l, x). Throws InsufficientDomain if the rule leaves its window and
  /// Error if its output is longer than max_output_length.
  Word apply(Letter l, const CoordinateReader& x) const;
};

/// Reader of g . x, that is f -> x_{f g}.
CoordinateReader translate(const CoordinateReader& x, const Word& g);

/// Memoised omega(., x) for one configuration, built along the tree (tau must
/// outlive the table):
/// omega(l h, x) = tau(l, omega(h, x) . x) omega(h, x).
class CocycleTable {
 public:
  CocycleTable(const TauSpec& tau, CoordinateReader x) : tau_(tau), x_(std::move(x)) {}

  const Word& omega(const Word& g);
  /// (Omega x)_h.
  Symbol recoded(const Word& h) { return x_(omega(h)); }
  CoordinateReader recoded_reader();

 private:
  const TauSpec& tau_;
  CoordinateReader x_;
  std::unordered_map<Word, Word> memo_;
};

/// omega(g, x), reading the letters of g from the right.
Word omega(const TauSpec& tau, const Word& g, const CoordinateReader& x);
Word omega(const TauSpec& tau, const Word& g, const Configuration& x);

/// Reader of g * x = omega(g, x) . x.
CoordinateReader star_reader(const TauSpec& tau, const Word& g, const CoordinateReader& x);
/// g * x as a configuration: every f with f omega(g, x) in the domain of x.
Configuration star(const TauSpec& tau, const Word& g, const Configuration& x);

/// Lazy Omega x. The returned reader owns a copy of tau and its memo table.
CoordinateReader omega_map_reader(TauSpec tau, CoordinateReader x);
/// Omega x on ball(target_radius). Throws InsufficientDomain when x does not
/// cover the coordinates that are needed.
Configuration apply_omega_map(const TauSpec& tau, const Configuration& x, std::size_t target_radius);
Configuration apply_omega_map(const TauSpec& tau, const CoordinateReader& x, std::size_t target_radius);

/// A radius R with omega(g, .) and (Omega .)_g determined on ball(R) for all
/// |g| <= r: r * L + W.
std::size_t dependency_radius(const TauSpec& tau, std::size_t r);

/// Outcome of an almost-everywhere check, with a counterexample on failure.
struct CheckResult {
  bool ok = true;
  std::string witness;

  explicit operator bool() const { return ok; }
  static CheckResult pass() { return {}; }
  static CheckResult fail(std::string witness) { return {false, std::move(witness)}; }
};

std::string describe(const Configuration& x);

/// tau(l^{-1}, tau(l, x) . x) = tau(l, x)^{-1} for every letter l and every
/// positive-measure assignment of the coordinates involved.
CheckResult check_involution(const TauSpec& tau, const MarkovSpec& spec,
                             std::size_t budget = kDefaultEnumerationBudget);

/// g in past(s) iff omega(g, x) in past(s), for every |g| <= r and almost
/// every x.
CheckResult check_past_preservation(const TauSpec& tau, const MarkovSpec& spec, Letter s, std::size_t r,
                                    std::size_t budget = kDefaultEnumerationBudget);

/// omega(hat_omega(l, Omega x), x) = l for every letter l almost surely, then
/// hat_Omega(Omega x) = x on ball(r) for `samples` sampled configurations.
CheckResult check_inverse_pair(const TauSpec& tau, const TauSpec& tau_hat, const MarkovSpec& spec, std::size_t r,
                               std::uint64_t seed, std::size_t samples = 20,
                               std::size_t budget = kDefaultEnumerationBudget);

}  // namespace mcoe
