#include "mcoe/cocycle.hpp"

#include <memory>
#include <sstream>

#include "mcoe/error.hpp"

namespace mcoe {

TauSpec TauSpec::identity(std::size_t rank) {
  TauSpec tau;
  tau.rank = rank;
  tau.rules.resize(2 * rank);
  return tau;
}

Word TauSpec::apply(Letter l, const CoordinateReader& x) const {
  if (l.code() >= rules.size()) throw InvalidInput("letter " + to_string(l) + " outside the rank of tau");
  const auto& rule = rules[l.code()];
  if (!rule) return Word::letter(l);
  const std::size_t radius = window_radius;
  const CoordinateReader windowed = [&x, radius](const Word& f) {
    if (f.length() > radius) {
      throw InsufficientDomain("tau rule read " + to_string(f) + " outside its window of radius " +
                               std::to_string(radius));
    }
    return x(f);
  };
  Word out = rule(windowed);
  if (out.length() > max_output_length) {
    throw Error("tau(" + to_string(l) + ") returned " + to_string(out) + ", longer than the declared bound");
  }
  return out;
}

CoordinateReader translate(const CoordinateReader& x, const Word& g) {
  if (g.is_identity()) return x;
  return [x, g](const Word& f) { return x(f * g); };
}

const Word& CocycleTable::omega(const Word& g) {
  if (auto it = memo_.find(g); it != memo_.end()) return it->second;
  Word value;
  if (!g.is_identity()) {
    const Word below = omega(parent(g));
    value = tau_.apply(g.leftmost(), translate(x_, below)) * below;
  }
  return memo_.emplace(g, std::move(value)).first->second;
}

CoordinateReader CocycleTable::recoded_reader() {
  return [this](const Word& h) { return recoded(h); };
}

Word omega(const TauSpec& tau, const Word& g, const CoordinateReader& x) {
  Word w;
  const auto& ls = g.letters();
  for (auto it = ls.rbegin(); it != ls.rend(); ++it) w = tau.apply(*it, translate(x, w)) * w;
  return w;
}

Word omega(const TauSpec& tau, const Word& g, const Configuration& x) { return omega(tau, g, x.reader()); }

CoordinateReader star_reader(const TauSpec& tau, const Word& g, const CoordinateReader& x) {
  return translate(x, omega(tau, g, x));
}

Configuration star(const TauSpec& tau, const Word& g, const Configuration& x) {
  const Word w = omega(tau, g, x);
  const Word w_inv = inverse(w);
  Configuration out;
  for (const auto& [d, a] : x.values()) out.set(d * w_inv, a);
  return out;
}

namespace {

struct OwnedTable {
  OwnedTable(TauSpec rule, CoordinateReader x) : tau(std::move(rule)), table(tau, std::move(x)) {}
  TauSpec tau;
  CocycleTable table;
};

}  // namespace

CoordinateReader omega_map_reader(TauSpec tau, CoordinateReader x) {
  auto owned = std::make_shared<OwnedTable>(std::move(tau), std::move(x));
  return [owned](const Word& h) { return owned->table.recoded(h); };
}

Configuration apply_omega_map(const TauSpec& tau, const CoordinateReader& x, std::size_t target_radius) {
  CocycleTable table(tau, x);
  Configuration out;
  for (const auto& h : ball_words(tau.rank, target_radius)) out.set(h, table.recoded(h));
  return out;
}

Configuration apply_omega_map(const TauSpec& tau, const Configuration& x, std::size_t target_radius) {
  return apply_omega_map(tau, x.reader(), target_radius);
}

std::size_t dependency_radius(const TauSpec& tau, std::size_t r) {
  return r * tau.max_output_length + tau.window_radius;
}

std::string describe(const Configuration& x) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [g, a] : x.values()) {
    out << (first ? "" : ", ") << to_string(g) << ":" << a;
    first = false;
  }
  out << "}";
  return out.str();
}

CheckResult check_involution(const TauSpec& tau, const MarkovSpec& spec, std::size_t budget) {
  const LetterKernels kernels(spec);
  for (Letter l : letters(tau.rank)) {
    if (tau.is_trivial(l) && tau.is_trivial(l.inverse())) continue;
    std::optional<CheckResult> failure;
    const std::function<bool(const CoordinateReader&)> probe = [&](const CoordinateReader& x) {
      const Word w = tau.apply(l, x);
      return tau.apply(l.inverse(), translate(x, w)) == inverse(w);
    };
    for_each_read_path<bool>(
        kernels, probe,
        [&](const bool& ok, const Rational&, const Configuration& assignment) {
          if (!ok && !failure) {
            failure = CheckResult::fail("letter " + to_string(l) + " on " + describe(assignment));
          }
        },
        budget);
    if (failure) return *failure;
  }
  return CheckResult::pass();
}

CheckResult check_past_preservation(const TauSpec& tau, const MarkovSpec& spec, Letter s, std::size_t r,
                                    std::size_t budget) {
  const LetterKernels kernels(spec);
  for (const auto& g : ball_words(tau.rank, r)) {
    const bool inside = in_past(g, s);
    std::optional<CheckResult> failure;
    const std::function<Word(const CoordinateReader&)> probe = [&](const CoordinateReader& x) {
      return omega(tau, g, x);
    };
    for_each_read_path<Word>(
        kernels, probe,
        [&](const Word& w, const Rational&, const Configuration& assignment) {
          if (in_past(w, s) != inside && !failure) {
            failure = CheckResult::fail("g = " + to_string(g) + ", omega = " + to_string(w) + " on " +
                                        describe(assignment));
          }
        },
        budget);
    if (failure) return *failure;
  }
  return CheckResult::pass();
}

CheckResult check_inverse_pair(const TauSpec& tau, const TauSpec& tau_hat, const MarkovSpec& spec, std::size_t r,
                               std::uint64_t seed, std::size_t samples, std::size_t budget) {
  const LetterKernels kernels(spec);
  for (Letter l : letters(tau.rank)) {
    std::optional<CheckResult> failure;
    const std::function<Word(const CoordinateReader&)> probe = [&](const CoordinateReader& x) {
      CocycleTable forward(tau, x);
      return omega(tau, omega(tau_hat, Word::letter(l), forward.recoded_reader()), x);
    };
    for_each_read_path<Word>(
        kernels, probe,
        [&](const Word& w, const Rational&, const Configuration& assignment) {
          if (!(w == Word::letter(l)) && !failure) {
            failure = CheckResult::fail("letter " + to_string(l) + " maps to " + to_string(w) + " on " +
                                        describe(assignment));
          }
        },
        budget);
    if (failure) return *failure;
  }
  const auto domain = ball_words(tau.rank, r);
  for (std::size_t i = 0; i < samples; ++i) {
    const LazySample x(spec, derive_seed(seed, i));
    CocycleTable forward(tau, x.reader());
    CocycleTable backward(tau_hat, forward.recoded_reader());
    for (const auto& h : domain) {
      if (backward.recoded(h) != x.at(h)) {
        return CheckResult::fail("sample " + std::to_string(i) + " differs at " + to_string(h));
      }
    }
  }
  return CheckResult::pass();
}

}  // namespace mcoe
