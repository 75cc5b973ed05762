#include "mcoe/fullgroup.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "mcoe/error.hpp"
#include "mcoe/graphs.hpp"

namespace mcoe {

Permutation::Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (std::size_t v : image_) {
    if (v >= image_.size() || seen[v]) throw InvalidInput("not a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> image(n);
  for (std::size_t i = 0; i < n; ++i) image[i] = i;
  return Permutation(std::move(image));
}

Permutation Permutation::rotation(std::size_t n, long shift) {
  std::vector<std::size_t> image(n);
  const long size = static_cast<long>(n);
  for (long i = 0; i < size; ++i) image[i] = static_cast<std::size_t>(((i + shift) % size + size) % size);
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::after(const Permutation& other) const {
  if (other.size() != size()) throw InvalidInput("composing permutations of different sizes");
  std::vector<std::size_t> image(size());
  for (std::size_t i = 0; i < size(); ++i) image[i] = image_[other(i)];
  return Permutation(std::move(image));
}

std::string Permutation::cycles() const {
  std::ostringstream out;
  std::vector<bool> done(size(), false);
  for (std::size_t start = 0; start < size(); ++start) {
    if (done[start]) continue;
    out << "(";
    std::size_t i = start;
    bool first = true;
    do {
      out << (first ? "" : " ") << i;
      first = false;
      done[i] = true;
      i = image_[i];
    } while (i != start);
    out << ")";
  }
  return out.str();
}

Permutation match_full_group(const Labels& phi, const Labels& psi) {
  if (phi.size() != psi.size()) throw PreconditionFailed("label vectors have different lengths");
  auto sorted_phi = phi, sorted_psi = psi;
  std::sort(sorted_phi.begin(), sorted_phi.end());
  std::sort(sorted_psi.begin(), sorted_psi.end());
  if (sorted_phi != sorted_psi) throw PreconditionFailed("label pushforwards differ: phi_* != psi_*");

  const long n = static_cast<long>(phi.size());
  constexpr std::size_t unmatched = static_cast<std::size_t>(-1);
  std::vector<std::size_t> image(phi.size(), unmatched);
  std::vector<bool> used(phi.size(), false);
  std::size_t remaining = phi.size();
  for (long step = 0; remaining > 0 && step < 2 * n; ++step) {
    const long shift = step % 2 == 0 ? -(step / 2) : (step + 1) / 2;  // 0, 1, -1, 2, -2, ...
    for (long x = 0; x < n; ++x) {
      const auto target = static_cast<std::size_t>(((x + shift) % n + n) % n);
      if (image[x] != unmatched || used[target] || psi[x] != phi[target]) continue;
      image[x] = target;
      used[target] = true;
      --remaining;
    }
  }
  if (remaining > 0) throw Error("greedy matcher left positions unmatched");
  return Permutation(std::move(image));
}

Permutation label_preserving_oe(const Labels& label_a, const Labels& label_b, const Permutation& psi_prime) {
  if (label_a.size() != label_b.size() || psi_prime.size() != label_a.size()) {
    throw PreconditionFailed("systems and Psi' must have the same size");
  }
  Labels phi(label_a.size());
  for (std::size_t x = 0; x < phi.size(); ++x) phi[x] = label_b[psi_prime(x)];
  return psi_prime.after(match_full_group(phi, label_a));
}

ZPoint shift_point(const ZPoint& x, long k) {
  if (k == 0) return x;
  return [x, k](long n) { return x(n + k); };
}

ZPoint periodic_point(Labels pattern) {
  if (pattern.empty()) throw InvalidInput("empty periodic pattern");
  return [pattern = std::move(pattern)](long n) {
    const long size = static_cast<long>(pattern.size());
    return pattern[static_cast<std::size_t>((n % size + size) % size)];
  };
}

OEOracle::OEOracle(std::string name, Displacement c, long lookahead, long max_displacement)
    : name_(std::move(name)), c_(std::move(c)), lookahead_(lookahead), max_displacement_(max_displacement) {}

OEOracle OEOracle::identity() {
  return OEOracle("identity", [](const ZPoint&) { return 0L; }, 0, 0);
}

OEOracle OEOracle::marker(Symbol a, Symbol b) {
  return OEOracle(
      "marker",
      [a, b](const ZPoint& x) {
        if (x(0) != a) return 0L;
        if (x(-1) == b && x(1) == a && x(2) == b) return 1L;
        if (x(-2) == b && x(-1) == a && x(1) == b) return -1L;
        return 0L;
      },
      2, 1);
}

OEOracle OEOracle::pair_swap(Symbol a, Symbol b) {
  return OEOracle(
      "pair_swap",
      [a, b](const ZPoint& x) {
        if (x(0) == a && x(1) == b) return 1L;
        if (x(-1) == a && x(0) == b) return -1L;
        return 0L;
      },
      1, 1);
}

OEOracle OEOracle::periodic(const Labels& pattern, const Permutation& p) {
  const long n = static_cast<long>(pattern.size());
  if (p.size() != pattern.size()) throw InvalidInput("permutation and pattern sizes differ");
  for (long shift = 1; shift < n; ++shift) {
    bool same = true;
    for (long i = 0; i < n && same; ++i) same = pattern[i] == pattern[(i + shift) % n];
    if (same) throw PreconditionFailed("periodic pattern is not primitive");
  }
  std::vector<long> delta(pattern.size());
  for (long i = 0; i < n; ++i) delta[i] = static_cast<long>(p(i)) - i;
  return OEOracle(
      "periodic",
      [pattern, delta, n](const ZPoint& x) {
        for (long i = 0; i < n; ++i) {
          bool match = true;
          for (long j = 0; j < n && match; ++j) match = x(j) == pattern[(i + j) % n];
          if (match) return delta[i];
        }
        throw PreconditionFailed("point is not on the orbit of the periodic pattern");
      },
      n, n - 1);
}

long OEOracle::psi(const ZPoint& x, long k) const { return k + c_(shift_point(x, k)); }

long OEOracle::psi_inverse(const ZPoint& x, long k) const {
  long found = 0;
  int hits = 0;
  for (long j = k - max_displacement_; j <= k + max_displacement_; ++j) {
    if (psi(x, j) == k) {
      found = j;
      ++hits;
    }
  }
  if (hits != 1) throw Error("oracle " + name_ + " is not a bijection on this orbit");
  return found;
}

long OEOracle::beta(long n, const ZPoint& x) const {
  long j = 0;
  for (long i = 0; i < std::abs(n); ++i) j = psi_inverse(x, psi(x, j) + (n > 0 ? 1 : -1));
  return j;
}

long OEOracle::alpha(long n, const ZPoint& x) const {
  const long bound = std::abs(n) + 2 * max_displacement_;
  long forward = 0, backward = 0;
  if (n == 0) return 0;
  for (long m = 1; m <= bound; ++m) {
    forward = psi_inverse(x, psi(x, forward) + 1);
    if (forward == n) return m;
    backward = psi_inverse(x, psi(x, backward) - 1);
    if (backward == n) return -m;
  }
  throw Error("alpha search of oracle " + name_ + " exceeded its bound");
}

long OEOracle::beta_hat(long n, const ZPoint& x) const {
  long j = 0;
  for (long i = 0; i < std::abs(n); ++i) j = psi(x, psi_inverse(x, j) + (n > 0 ? 1 : -1));
  return j;
}

OECocycles OECocycles::of(const OEOracle& oracle) {
  OECocycles c;
  c.alpha = [oracle](long n, const ZPoint& x) { return oracle.alpha(n, x); };
  c.beta = [oracle](long n, const ZPoint& x) { return oracle.beta(n, x); };
  c.beta_hat = [oracle](long n, const ZPoint& x) { return oracle.beta_hat(n, x); };
  c.psi = [oracle](const ZPoint& x) { return oracle.apply(x); };
  c.psi_inverse = [oracle](const ZPoint& x) { return oracle.apply_inverse(x); };
  return c;
}

bool CocycleCheckReport::ok() const {
  return std::all_of(items.begin(), items.end(), [](const Item& i) { return i.ok; });
}

const CocycleCheckReport::Item& CocycleCheckReport::item(const std::string& name) const {
  for (const auto& i : items) {
    if (i.name == name) return i;
  }
  throw InvalidInput("no item named " + name);
}

CocycleCheckReport cocycle_check(const OECocycles& c, const std::vector<ZPoint>& points, long n_range) {
  CocycleCheckReport report;
  for (const char* name : {"b1", "b2", "b3", "b4", "b5"}) report.items.push_back({name, true, {}});
  auto fail = [&report](std::size_t index, std::string witness) {
    auto& item = report.items[index];
    if (item.ok) {
      item.ok = false;
      item.witness = std::move(witness);
    }
  };
  for (std::size_t p = 0; p < points.size(); ++p) {
    const ZPoint& x = points[p];
    const ZPoint psi_x = c.psi(x);
    const ZPoint psi_inv_x = c.psi_inverse(x);
    const std::string at = "point " + std::to_string(p);
    for (long n = -n_range; n <= n_range; ++n) {
      for (long m = -n_range; m <= n_range; ++m) {
        const std::string nm = at + ", n=" + std::to_string(n) + ", m=" + std::to_string(m);
        if (c.alpha(n + m, x) != c.alpha(n, shift_point(x, m)) + c.alpha(m, x)) fail(0, nm);
        const long bm = c.beta(m, x);
        if (c.beta(n + m, x) != c.beta(n, shift_point(x, bm)) + bm) fail(1, nm);
        const long hm = c.beta_hat(m, x);
        if (c.beta_hat(n + m, x) != c.beta_hat(n, shift_point(x, hm)) + hm) fail(3, nm);
      }
      const std::string nn = at + ", n=" + std::to_string(n);
      if (c.beta(c.alpha(n, x), x) != n || c.alpha(c.beta(n, x), x) != n) fail(2, nn);
      if (c.beta_hat(c.beta(n, psi_inv_x), x) != n || c.beta(c.beta_hat(n, psi_x), x) != n) fail(4, nn);
    }
  }
  return report;
}

ZPoint restriction_point(const CoordinateReader& x, std::size_t t) {
  return [x, t](long n) { return x(Word::power(t, n)); };
}

namespace {

TauSpec dye_tau(const OEOracle& oracle, std::size_t rank, std::size_t t, bool hat) {
  TauSpec tau = TauSpec::identity(rank);
  if (oracle.max_displacement() == 0) return tau;
  tau.window_radius = static_cast<std::size_t>(oracle.window());
  tau.max_output_length = static_cast<std::size_t>(2 * oracle.max_displacement() + 1);
  for (long n : {1L, -1L}) {
    tau.set_rule(n > 0 ? gen(t) : gen_inv(t), [oracle, t, n, hat](const CoordinateReader& x) {
      const ZPoint r = restriction_point(x, t);
      return Word::power(t, hat ? oracle.beta_hat(n, r) : oracle.beta(n, r));
    });
  }
  return tau;
}

}  // namespace

TauSpec build_dye_tau(const OEOracle& oracle, std::size_t rank, std::size_t t) {
  if (t >= rank) throw InvalidInput("generator outside the rank");
  return dye_tau(oracle, rank, t, false);
}

TauSpec build_dye_tau_hat(const OEOracle& oracle, std::size_t rank, std::size_t t) {
  if (t >= rank) throw InvalidInput("generator outside the rank");
  return dye_tau(oracle, rank, t, true);
}

MarkovSpec swap_restriction(const MarkovSpec& spec, std::size_t t, const ZKernel& nu) {
  require_valid(spec);
  if (t >= spec.rank()) throw InvalidInput("generator outside the rank");
  const std::size_t n = spec.alphabet_size();
  if (nu.pi != spec.pi) throw PreconditionFailed("stationary distribution of the new kernel differs from pi");
  if (nu.transition.size() != n) throw PreconditionFailed("new kernel has the wrong size");
  for (std::size_t a = 0; a < n; ++a) {
    Rational row = 0;
    for (std::size_t b = 0; b < n; ++b) {
      if (nu.transition(a, b) < 0) throw PreconditionFailed("new kernel has a negative entry");
      row += nu.transition(a, b);
    }
    if (row != 1) throw PreconditionFailed("new kernel row " + std::to_string(a) + " is not stochastic");
  }
  if (left_multiply(nu.pi, nu.transition) != nu.pi) throw PreconditionFailed("pi is not stationary for the new kernel");
  const auto cls = classify_graph(support_graph(nu.transition, nu.pi));
  if (!cls.ergodic || !cls.free) throw PreconditionFailed("new kernel is not ergodic and essentially free");
  MarkovSpec out = spec;
  out.kernels[t] = nu.transition;
  return out;
}

BernoullizationResult bernoullization_sequence(const MarkovSpec& spec) {
  require_valid(spec);
  if (!classify(spec).generator_ergodic()) {
    throw PreconditionFailed("every generator restriction must be ergodic and essentially free");
  }
  BernoullizationResult result{{spec}, "oracle-dependent"};
  const ZKernel nu{spec.pi, bernoulli_kernel(spec.pi)};
  for (std::size_t i = 0; i < spec.rank(); ++i) result.sequence.push_back(swap_restriction(result.sequence.back(), i, nu));
  return result;
}

}  // namespace mcoe
