#pragma once

// Exact Markov measures on A^F given by a stationary distribution pi and one
// stochastic kernel P_s per generator, with P_s(a, b) = mu(x_s = b | x_e = a).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcoe/freegroup.hpp"
#include "mcoe/rational.hpp"

namespace mcoe {

/// Index of a symbol in the alphabet.
using Symbol = std::uint32_t;

/// Dense square matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), data_(n * n) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  std::size_t size() const { return n_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  static Matrix identity(std::size_t n);
  Matrix transpose() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> data_;
};

/// Row vector times matrix.
std::vector<Rational> left_multiply(const std::vector<Rational>& row, const Matrix& m);

/// Law of a stationary Z-indexed Markov chain.
struct ZKernel {
  std::vector<Rational> pi;
  Matrix transition;

  friend bool operator==(const ZKernel&, const ZKernel&) = default;
};

struct MarkovSpec {
  std::vector<std::string> alphabet;
  std::vector<Rational> pi;
  /// kernels[i] belongs to generator s_{i+1}.
  std::vector<Matrix> kernels;

  std::size_t rank() const { return kernels.size(); }
  std::size_t alphabet_size() const { return alphabet.size(); }
  /// Throws InvalidInput for an unknown symbol name.
  Symbol symbol(const std::string& name) const;

  friend bool operator==(const MarkovSpec&, const MarkovSpec&) = default;
};

enum class ViolationKind {
  rank_too_small,
  empty_alphabet,
  duplicate_symbol,
  dimension_mismatch,
  negative_entry,
  zero_mass,
  pi_not_normalized,
  row_not_stochastic,
  not_stationary,
};

std::string to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::optional<std::size_t> generator;
  std::optional<std::size_t> row;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const MarkovSpec& spec);
/// Throws PreconditionFailed with the first violation when the spec is invalid.
void require_valid(const MarkovSpec& spec);

/// Time-reversed kernel pi(b) P_s(b, a) / pi(a): the transition law along an
/// s^{-1}-labelled edge.
Matrix reverse_kernel(const MarkovSpec& spec, std::size_t generator);

/// Transition kernels for every letter of S u S^{-1}, indexed by Letter::code().
class LetterKernels {
 public:
  explicit LetterKernels(const MarkovSpec& spec);

  const std::vector<Rational>& pi() const { return pi_; }
  const Matrix& operator[](Letter l) const { return kernels_[l.code()]; }
  std::size_t rank() const { return kernels_.size() / 2; }
  std::size_t alphabet_size() const { return pi_.size(); }

 private:
  std::vector<Rational> pi_;
  std::vector<Matrix> kernels_;
};

/// Reads one coordinate x_g of a (possibly lazily generated) configuration.
using CoordinateReader = std::function<Symbol(const Word&)>;

/// Partial assignment phi: D -> A.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::map<Word, Symbol> values) : values_(std::move(values)) {}

  const std::map<Word, Symbol>& values() const { return values_; }
  bool contains(const Word& g) const { return values_.contains(g); }
  std::size_t size() const { return values_.size(); }
  /// Throws InsufficientDomain when g is outside the domain.
  Symbol at(const Word& g) const;
  void set(const Word& g, Symbol a) { values_[g] = a; }
  std::set<Word> domain() const;
  CoordinateReader reader() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::map<Word, Symbol> values_;
};

/// mu(Cyl(phi)) = pi(phi(e)) * prod_{g != e} K_l(phi(sigma(g)), phi(g)), where
/// l is the leftmost letter of g. Throws PreconditionFailed when the domain is
/// not left-connected or misses e.
Rational cylinder_measure(const MarkovSpec& spec, const Configuration& phi);
Rational cylinder_measure(const LetterKernels& kernels, const Configuration& phi);

/// The law of (x_{s^n})_n: (pi, P_s).
ZKernel restriction(const MarkovSpec& spec, std::size_t generator);

/// Rebuilds a Markov spec from its per-generator restrictions. Throws
/// PreconditionFailed when the stationary distributions or sizes disagree.
MarkovSpec assemble(std::vector<std::string> alphabet, const std::vector<ZKernel>& restrictions);

/// Kernel whose every row equals pi.
Matrix bernoulli_kernel(const std::vector<Rational>& pi);
/// i.i.d. spec with marginal pi on every generator. Throws PreconditionFailed
/// for a zero-mass symbol or unnormalised pi.
MarkovSpec bernoulli_spec(std::vector<std::string> alphabet, std::vector<Rational> pi, std::size_t rank);

/// Counter-based random bits keyed by (seed, word); the same key always gives
/// the same value, independently of evaluation order.
std::uint64_t keyed_random(std::uint64_t seed, const Word& g);
/// Seed of the i-th sample in a batch.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// A configuration on all of F sampled from the Markov measure, generated on
/// demand: x_e ~ pi, and x_g ~ K_l(x_{sigma(g)}, .) using keyed_random(seed, g).
/// Values are memoised; an instance must not be shared between threads.
class LazySample {
 public:
  LazySample(const MarkovSpec& spec, std::uint64_t seed);

  Symbol at(const Word& g) const;
  CoordinateReader reader() const;
  std::uint64_t seed() const { return seed_; }

 private:
  Symbol draw(const std::vector<double>& cumulative, const std::vector<Symbol>& support, const Word& g) const;

  std::uint64_t seed_;
  // Per letter code, per row: cumulative probabilities over positive entries.
  std::vector<std::vector<std::vector<double>>> cumulative_;
  std::vector<std::vector<std::vector<Symbol>>> support_;
  std::vector<double> pi_cumulative_;
  std::vector<Symbol> pi_support_;
  mutable std::map<Word, Symbol> memo_;
};

/// A sample restricted to ball(radius). Deterministic given the seed.
Configuration sample_ball(const MarkovSpec& spec, std::size_t radius, std::uint64_t seed,
                          std::size_t budget = kDefaultBallBudget);

/// Fraction of samples that agree with phi on its domain. Throws
/// InsufficientDomain when a sample does not cover phi's domain.
double empirical_cylinder(const std::vector<Configuration>& samples, const Configuration& phi);

}  // namespace mcoe
