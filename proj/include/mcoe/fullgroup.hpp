#pragma once

// Finite-scale full-group tools for the shift T on A^Z: the greedy matcher,
// label-preserving orbit equivalences on a single cycle, orbit-equivalence
// oracles given by bounded displacements, the tau they induce on F, and the
// measure-level kernel swaps that end at the Bernoulli measure.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "mcoe/chainspec.hpp"
#include "mcoe/cocycle.hpp"

namespace mcoe {

/// Bijection of {0, ..., N-1}.
class Permutation {
 public:
  Permutation() = default;
  /// Throws InvalidInput unless `image` is a bijection.
  explicit Permutation(std::vector<std::size_t> image);
  static Permutation identity(std::size_t n);
  static Permutation rotation(std::size_t n, long shift);

  std::size_t size() const { return image_.size(); }
  std::size_t operator()(std::size_t i) const { return image_[i]; }
  const std::vector<std::size_t>& image() const { return image_; }
  Permutation inverse() const;
  /// (this o other)(i) = this(other(i)).
  Permutation after(const Permutation& other) const;
  /// Cycle notation with fixed points, e.g. "(0)(1 2)(3)", cycles ordered by
  /// their smallest element.
  std::string cycles() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> image_;
};

using Labels = std::vector<Symbol>;

/// Greedy matcher on the cycle i -> i + 1 mod N: shifts are tried in the
/// order 0, 1, -1, 2, -2, ..., and at shift n every still unmatched x with
/// psi(x) = phi(x + n) and x + n not yet used is sent to x + n. The result S
/// satisfies psi = phi o S. Throws PreconditionFailed when the label
/// multisets differ.
Permutation match_full_group(const Labels& phi, const Labels& psi);

/// Psi = Psi' o S with S = match_full_group(labelB o Psi', labelA), so that
/// labelB(Psi(x)) = labelA(x). Throws PreconditionFailed on size or label
/// distribution mismatch.
Permutation label_preserving_oe(const Labels& label_a, const Labels& label_b, const Permutation& psi_prime);

/// A point of A^Z.
using ZPoint = std::function<Symbol(long)>;
/// T^k x.
ZPoint shift_point(const ZPoint& x, long k);
/// The periodic point with x_n = pattern[n mod N].
ZPoint periodic_point(Labels pattern);

/// Orbit equivalence given by a full-group element: Psi x = T^{c(x)} x with
/// |c| <= max_displacement and c(x) a function of x_{-lookahead .. lookahead}.
/// Along the orbit of a point x, position k stands for T^k x and Psi acts as
/// k -> k + c(T^k x); it must be a bijection of Z on every orbit considered.
class OEOracle {
 public:
  using Displacement = std::function<long(const ZPoint&)>;

  OEOracle(std::string name, Displacement c, long lookahead, long max_displacement);

  static OEOracle identity();
  /// c = +1 on (x_{-1}, x_0, x_1, x_2) = (b, a, a, b), c = -1 on
  /// (x_{-2}, x_{-1}, x_0, x_1) = (b, a, a, b), 0 elsewhere. Swaps the two a's.
  static OEOracle marker(Symbol a, Symbol b);
  /// c = +1 on (x_0, x_1) = (a, b), c = -1 on (x_{-1}, x_0) = (a, b).
  /// Does not preserve the time-0 symbol.
  static OEOracle pair_swap(Symbol a, Symbol b);
  /// Lift of a permutation P of the positions of a primitive periodic pattern:
  /// on its orbit, qN + i -> qN + P(i). Undefined off that orbit.
  static OEOracle periodic(const Labels& pattern, const Permutation& p);

  const std::string& name() const { return name_; }
  long lookahead() const { return lookahead_; }
  long max_displacement() const { return max_displacement_; }
  /// Coordinates of Rx that tau(t^{+-1}, x) may read.
  long window() const { return lookahead_ + 2 * max_displacement_ + 2; }

  long displacement(const ZPoint& x) const { return c_(x); }
  /// Psi on positions of the orbit of x.
  long psi(const ZPoint& x, long k) const;
  long psi_inverse(const ZPoint& x, long k) const;

  ZPoint apply(const ZPoint& x) const { return shift_point(x, psi(x, 0)); }
  ZPoint apply_inverse(const ZPoint& x) const { return shift_point(x, psi_inverse(x, 0)); }

  /// T~^n x = T^{beta(n, x)} x with T~ = Psi^{-1} T Psi.
  long beta(long n, const ZPoint& x) const;
  /// T^n x = T~^{alpha(n, x)} x.
  long alpha(long n, const ZPoint& x) const;
  /// T^^n x = T^{beta_hat(n, x)} x with T^ = Psi T Psi^{-1}.
  long beta_hat(long n, const ZPoint& x) const;

 private:
  std::string name_;
  Displacement c_;
  long lookahead_;
  long max_displacement_;
};

/// The cocycles checked by cocycle_check. Separate callables so that tests can
/// corrupt one of them.
struct OECocycles {
  std::function<long(long, const ZPoint&)> alpha, beta, beta_hat;
  std::function<ZPoint(const ZPoint&)> psi, psi_inverse;

  static OECocycles of(const OEOracle& oracle);
};

struct CocycleCheckReport {
  struct Item {
    std::string name;  // b1 ... b5
    bool ok = true;
    std::string witness;
  };
  std::vector<Item> items;

  bool ok() const;
  const Item& item(const std::string& name) const;
};

/// (b1) alpha(n+m, x) = alpha(n, T^m x) + alpha(m, x)
/// (b2) beta(n+m, x) = beta(n, T~^m x) + beta(m, x)
/// (b3) beta(alpha(n, x), x) = alpha(beta(n, x), x) = n
/// (b4) beta_hat(n+m, x) = beta_hat(n, T^^m x) + beta_hat(m, x)
/// (b5) beta_hat(beta(n, Psi^{-1} x), x) = beta(beta_hat(n, Psi x), x) = n
/// for every test point and all |n|, |m| <= n_range.
CocycleCheckReport cocycle_check(const OECocycles& cocycles, const std::vector<ZPoint>& points, long n_range);

/// (R x)_n = x_{t^n}.
ZPoint restriction_point(const CoordinateReader& x, std::size_t t);

/// tau(t^{+-1}, x) = t^{beta(+-1, Rx)}, every other letter unchanged.
TauSpec build_dye_tau(const OEOracle& oracle, std::size_t rank, std::size_t t);
/// The same with beta_hat: the candidate inverse.
TauSpec build_dye_tau_hat(const OEOracle& oracle, std::size_t rank, std::size_t t);

/// Replaces P_t by the kernel of nu. Throws PreconditionFailed when nu's
/// stationary distribution differs from pi, nu is not a valid stationary
/// chain, or nu is not ergodic and essentially free.
MarkovSpec swap_restriction(const MarkovSpec& spec, std::size_t t, const ZKernel& nu);

struct BernoullizationResult {
  /// mu^(0) = input, ..., mu^(r) = Bernoulli.
  std::vector<MarkovSpec> sequence;
  /// Always "oracle-dependent": each step's orbit equivalence exists only
  /// through a non-constructive orbit equivalence of Z-actions.
  std::string map_level;
};

/// Swaps in the Bernoulli kernel (rows equal to pi) one generator at a time.
/// Throws PreconditionFailed unless every restriction is ergodic and free.
BernoullizationResult bernoullization_sequence(const MarkovSpec& spec);

}  // namespace mcoe
