#pragma once

// Test fixtures: named example specs and random valid specs.

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "mcoe/chainspec.hpp"
#include "mcoe/edgeslide.hpp"
#include "mcoe/graphs.hpp"

namespace mcoe::testing {

inline Rational q(long num, long den = 1) { return Rational(num, den); }

inline std::vector<std::string> names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

/// A = {0, 1}, uniform pi, s1 i.i.d., s2 the swap chain.
inline MarkovSpec m1() {
  return {names(2),
          {q(1, 2), q(1, 2)},
          {Matrix{{q(1, 2), q(1, 2)}, {q(1, 2), q(1, 2)}}, Matrix{{q(0), q(1)}, {q(1), q(0)}}}};
}

/// A = {0, 1, 2}, pi = (2/5, 2/5, 1/5); the u-graph is 0 -> 1 -> {0, 2}, 2 -> 0.
inline MarkovSpec m2() {
  return {names(3),
          {q(2, 5), q(2, 5), q(1, 5)},
          {Matrix{{q(0), q(1), q(0)}, {q(1, 2), q(0), q(1, 2)}, {q(1), q(0), q(0)}},
           Matrix{{q(0), q(1, 2), q(1, 2)}, {q(1, 2), q(1, 2), q(0)}, {q(1), q(0), q(0)}}}};
}

/// Four symbols, uniform pi; s1 has blocks {0,1} and {2,3}, s2 fixes 0 and 3
/// and mixes {1,2}. One stage-2 pass is not enough for this spec.
inline MarkovSpec four_blocks() {
  const Rational h = q(1, 2), z = q(0), o = q(1);
  return {names(4),
          {q(1, 4), q(1, 4), q(1, 4), q(1, 4)},
          {Matrix{{h, h, z, z}, {h, h, z, z}, {z, z, h, h}, {z, z, h, h}},
           Matrix{{o, z, z, z}, {z, h, h, z}, {z, h, h, z}, {z, z, z, o}}}};
}

using Rng = std::mt19937_64;

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// pi with integer weights 1..max_weight.
inline std::vector<Rational> random_pi(Rng& rng, std::size_t n, std::size_t max_weight = 4) {
  std::vector<long> w(n);
  for (auto& x : w) x = static_cast<long>(uniform_index(rng, 1, max_weight));
  const long total = std::accumulate(w.begin(), w.end(), 0L);
  std::vector<Rational> pi;
  for (long x : w) pi.push_back(q(x, total));
  return pi;
}

/// A stationary kernel for pi: the joint law starts as diag(pi) and random
/// cycle flows move mass off the diagonal, which keeps both marginals equal
/// to pi. Some flows exhaust a diagonal entry, so sparse supports and
/// periodic classes occur.
inline Matrix random_kernel(Rng& rng, const std::vector<Rational>& pi) {
  const std::size_t n = pi.size();
  Matrix joint(n);
  for (std::size_t a = 0; a < n; ++a) joint(a, a) = pi[a];
  const std::size_t flows = uniform_index(rng, 0, n + 1);
  std::vector<Symbol> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t f = 0; f < flows; ++f) {
    std::shuffle(order.begin(), order.end(), rng);
    const std::size_t len = uniform_index(rng, std::min<std::size_t>(2, n), n);
    if (len < 2) continue;
    Rational eps = joint(order[0], order[0]);
    for (std::size_t i = 1; i < len; ++i) eps = std::min(eps, joint(order[i], order[i]));
    eps /= static_cast<long>(uniform_index(rng, 1, 3));
    for (std::size_t i = 0; i < len; ++i) {
      joint(order[i], order[i]) -= eps;
      joint(order[i], order[(i + 1) % len]) += eps;
    }
  }
  Matrix kernel(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) kernel(a, b) = joint(a, b) / pi[a];
  }
  return kernel;
}

/// Permutation kernel preserving pi: symbols are only permuted within groups
/// of equal mass.
inline Matrix random_permutation_kernel(Rng& rng, const std::vector<Rational>& pi) {
  const std::size_t n = pi.size();
  std::vector<Symbol> image(n);
  std::iota(image.begin(), image.end(), 0);
  std::vector<bool> done(n, false);
  for (std::size_t a = 0; a < n; ++a) {
    if (done[a]) continue;
    std::vector<Symbol> group;
    for (std::size_t b = a; b < n; ++b) {
      if (pi[b] == pi[a]) group.push_back(static_cast<Symbol>(b)), done[b] = true;
    }
    auto shuffled = group;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (std::size_t i = 0; i < group.size(); ++i) image[group[i]] = shuffled[i];
  }
  Matrix kernel(n);
  for (std::size_t a = 0; a < n; ++a) kernel(a, image[a]) = 1;
  return kernel;
}

inline MarkovSpec random_spec(Rng& rng, std::size_t n, std::size_t rank = 2) {
  const bool ties = uniform_index(rng, 0, 2) == 0;
  MarkovSpec spec{names(n), ties ? random_pi(rng, n, 1) : random_pi(rng, n), {}};
  for (std::size_t s = 0; s < rank; ++s) {
    spec.kernels.push_back(uniform_index(rng, 0, 3) == 0 ? random_permutation_kernel(rng, spec.pi)
                                                         : random_kernel(rng, spec.pi));
  }
  return spec;
}

/// Uniform pi, s2 a permutation (so it has periodic classes), s1 random,
/// redrawn until the measure is properly ergodic.
inline MarkovSpec random_properly_ergodic_with_periodic_class(Rng& rng, std::size_t n) {
  const auto pi = random_pi(rng, n, 1);
  for (;;) {
    MarkovSpec spec{names(n), pi, {random_kernel(rng, pi), random_permutation_kernel(rng, pi)}};
    if (classify(spec).properly_ergodic) return spec;
  }
}

/// One half of the spanning tree of the first aperiodic class with at least
/// two symbols, slid from u onto t.
inline std::optional<SlideParams> tree_slide(const MarkovSpec& spec, std::size_t u, std::size_t t) {
  const auto graph = support_edges(spec, u);
  for (const auto& cls : classes(graph).classes) {
    if (cls.size() < 2 || is_periodic_class(graph, cls)) continue;
    const auto sets = special_sets(graph, cls.front());
    return make_slide_params(spec, u, t, sets.first.empty() ? sets.second : sets.first);
  }
  return std::nullopt;
}

}  // namespace mcoe::testing
