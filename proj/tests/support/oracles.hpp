#pragma once

// Reference computations written independently of the library algorithms.
// They share only the basic value types (Word, Rational, Matrix).

#include <functional>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <vector>

#include "mcoe/chainspec.hpp"
#include "mcoe/edgeslide.hpp"
#include "mcoe/freegroup.hpp"

namespace mcoe::oracle {

/// Kernel attached to a tree edge sigma(g) -> g, by the leftmost letter of g.
/// Inverse letters use the time reversal, computed here from scratch.
inline Matrix letter_kernel(const MarkovSpec& spec, Letter l) {
  const Matrix& p = spec.kernels[l.generator];
  if (l.sign > 0) return p;
  const std::size_t n = spec.alphabet_size();
  Matrix rev(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) rev(a, b) = spec.pi[b] * p(b, a) / spec.pi[a];
  }
  return rev;
}

inline std::vector<Matrix> all_letter_kernels(const MarkovSpec& spec) {
  std::vector<Matrix> out;
  for (std::size_t code = 0; code < 2 * spec.rank(); ++code) out.push_back(letter_kernel(spec, Letter::from_code(code)));
  return out;
}

/// Children of g in the left-Cayley tree: l g with |l g| = |g| + 1.
inline std::vector<Word> children(const Word& g, std::size_t rank) {
  std::vector<Word> out;
  for (std::size_t code = 0; code < 2 * rank; ++code) {
    const Letter l = Letter::from_code(code);
    if (!g.is_identity() && l == g.leftmost().inverse()) continue;
    std::vector<Letter> letters{l};
    letters.insert(letters.end(), g.letters().begin(), g.letters().end());
    out.push_back(reduce(letters));
  }
  return out;
}

/// mu(Cyl(phi)) by summing every coordinate of ball(radius) outside phi's
/// domain out of the tree-indexed product, leaf to root.
inline Rational marginal_on_ball(const MarkovSpec& spec, const Configuration& phi, std::size_t radius) {
  const auto kernels = all_letter_kernels(spec);
  const std::size_t n = spec.alphabet_size();
  std::function<Rational(const Word&, Symbol)> message = [&](const Word& g, Symbol a) {
    Rational product = 1;
    if (g.length() == radius) return product;
    for (const auto& c : children(g, spec.rank())) {
      const Matrix& k = kernels[c.leftmost().code()];
      Rational sum = 0;
      for (Symbol b = 0; b < n; ++b) {
        if (phi.contains(c) && phi.at(c) != b) continue;
        if (k(a, b) == 0) continue;
        sum += k(a, b) * message(c, b);
      }
      product *= sum;
      if (product == 0) break;
    }
    return product;
  };
  Rational total = 0;
  for (Symbol a = 0; a < n; ++a) {
    if (phi.contains(Word::identity()) && phi.at(Word::identity()) != a) continue;
    total += spec.pi[a] * message(Word::identity(), a);
  }
  return total;
}

/// Product weight of a full assignment of a set closed under taking parents.
inline Rational product_weight(const std::vector<Matrix>& kernels, const std::vector<Rational>& pi,
                               const std::map<Word, Symbol>& x) {
  Rational w = pi[x.at(Word::identity())];
  for (const auto& [g, b] : x) {
    if (g.is_identity()) continue;
    w *= kernels[g.leftmost().code()](x.at(parent(g)), b);
    if (w == 0) break;
  }
  return w;
}

/// Reduced words of length <= radius by breadth-first expansion.
inline std::vector<Word> words_up_to(std::size_t rank, std::size_t radius) {
  std::vector<Word> out{Word::identity()};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].length() == radius) continue;
    for (const auto& c : children(out[i], rank)) out.push_back(c);
  }
  return out;
}

struct ClassInfo {
  bool ergodic = false;
  bool free = false;
  std::vector<std::vector<Symbol>> classes;
  std::vector<std::vector<Symbol>> periodic;
};

struct Classification {
  std::vector<ClassInfo> per_generator;
  bool ergodic = false;
  bool properly_ergodic = false;
};

/// Components by breadth-first search and periodicity by degree counting.
inline Classification classify(const MarkovSpec& spec) {
  const std::size_t n = spec.alphabet_size();
  auto components = [n](const std::vector<std::vector<bool>>& adj) {
    std::vector<int> comp(n, -1);
    std::vector<std::vector<Symbol>> out;
    for (Symbol s = 0; s < n; ++s) {
      if (comp[s] >= 0) continue;
      std::vector<Symbol> cls;
      std::queue<Symbol> queue;
      queue.push(s);
      comp[s] = static_cast<int>(out.size());
      while (!queue.empty()) {
        const Symbol a = queue.front();
        queue.pop();
        cls.push_back(a);
        for (Symbol b = 0; b < n; ++b) {
          if ((adj[a][b] || adj[b][a]) && comp[b] < 0) {
            comp[b] = comp[s];
            queue.push(b);
          }
        }
      }
      std::sort(cls.begin(), cls.end());
      out.push_back(cls);
    }
    return out;
  };

  Classification result;
  std::vector<std::vector<bool>> joint(n, std::vector<bool>(n, false));
  bool any_aperiodic = false;
  for (std::size_t s = 0; s < spec.rank(); ++s) {
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (Symbol a = 0; a < n; ++a) {
      for (Symbol b = 0; b < n; ++b) {
        adj[a][b] = spec.pi[a] * spec.kernels[s](a, b) > 0;
        joint[a][b] = joint[a][b] || adj[a][b];
      }
    }
    ClassInfo info;
    info.classes = components(adj);
    info.ergodic = info.classes.size() == 1;
    for (const auto& cls : info.classes) {
      bool periodic = true;
      for (Symbol a : cls) {
        std::size_t in = 0, out = 0;
        for (Symbol b = 0; b < n; ++b) out += adj[a][b], in += adj[b][a];
        periodic = periodic && in == 1 && out == 1;
      }
      if (periodic) {
        info.periodic.push_back(cls);
      } else {
        any_aperiodic = true;
      }
    }
    info.free = info.periodic.empty();
    result.per_generator.push_back(info);
  }
  result.ergodic = components(joint).size() == 1;
  result.properly_ergodic = result.ergodic && any_aperiodic;
  return result;
}

/// rho(y_e = a, y_t = b) for one edge slide, by enumerating a tube around
/// the t-edge that is wider than the coordinates the slide can read. The
/// value of y_t is decided by testing the flag conditions directly:
/// y_t = x_{ut} when (x_t, x_{ut}) is a slide edge and x_{u^{n+1} t} = eta,
/// y_t = x_{u^-1 t} when (x_{u^-1 t}, x_t) is a slide edge and x_{u^n t} = eta,
/// and y_t = x_t otherwise.
inline Matrix tube_joint(const MarkovSpec& spec, const SlideParams& params) {
  const std::size_t n = spec.alphabet_size();
  const std::size_t reach = params.n_max() + 2;
  const Word t = Word::letter(gen(params.t));
  auto ukt = [&](long k) { return Word::power(params.u, k) * t; };

  std::set<Word> tube{Word::identity(), Word::letter(gen(params.u)), Word::letter(gen_inv(params.u)),
                      Word::letter(gen_inv(params.t)), t * t};
  for (long k = -2; k <= static_cast<long>(reach); ++k) tube.insert(ukt(k));
  const std::vector<Word> order(tube.begin(), tube.end());  // shortlex: parents first

  const auto kernels = all_letter_kernels(spec);
  Matrix joint(n);
  std::map<Word, Symbol> x;
  auto flag_at = [&](long k) {
    // F at u^k t: (x_{u^{k-1} t}, x_{u^k t}) a slide edge and x_{u^{k+n} t} = eta.
    const Symbol a = x.at(ukt(k - 1)), b = x.at(ukt(k));
    if (!params.edges.contains({a, b})) return false;
    const auto& data = params.branch.at(b);
    return x.at(ukt(k + static_cast<long>(data.n))) == data.eta;
  };
  std::function<void(std::size_t, const Rational&)> assign = [&](std::size_t i, const Rational& weight) {
    if (i == order.size()) {
      const bool up = flag_at(1), down = flag_at(0);
      if (up && down) throw std::logic_error("slide flagged on both sides of the t-edge");
      const Symbol yt = up ? x.at(ukt(1)) : down ? x.at(ukt(-1)) : x.at(t);
      joint(x.at(Word::identity()), yt) += weight;
      return;
    }
    const Word& g = order[i];
    for (Symbol b = 0; b < n; ++b) {
      const Rational w =
          g.is_identity() ? spec.pi[b] : Rational(weight * kernels[g.leftmost().code()](x.at(parent(g)), b));
      if (w == 0) continue;
      x[g] = b;
      assign(i + 1, w);
    }
    x.erase(g);
  };
  assign(0, Rational(1));
  return joint;
}

}  // namespace mcoe::oracle
