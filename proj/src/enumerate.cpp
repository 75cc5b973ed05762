#include "mcoe/enumerate.hpp"

#include <algorithm>
#include <string>

#include "mcoe/error.hpp"

namespace mcoe {

namespace detail {

void throw_budget_exceeded(std::size_t budget) {
  throw BudgetExceeded("enumeration exceeded its budget of " + std::to_string(budget) + " configurations");
}

void ReadPathStack::begin_run() {
  cursor_ = 0;
  assignment_ = Configuration();
}

Symbol ReadPathStack::read(const Word& g) {
  if (assignment_.contains(g)) return assignment_.at(g);
  Symbol value = 0;
  for (const auto& p : path_from_identity(g)) {
    if (!assignment_.contains(p)) value = assign(p);
  }
  return value;
}

Symbol ReadPathStack::assign(const Word& g) {
  const Rational& before = cursor_ == 0 ? one_ : stack_[cursor_ - 1].weight;
  if (cursor_ == stack_.size()) {
    Frame frame{g, {}, {}, 0, {}};
    const std::size_t n = kernels_.alphabet_size();
    for (std::size_t b = 0; b < n; ++b) {
      const Rational& p =
          g.is_identity() ? kernels_.pi()[b] : kernels_[g.leftmost()](assignment_.at(parent(g)), b);
      if (p > 0) {
        frame.options.push_back(static_cast<Symbol>(b));
        frame.probabilities.push_back(p);
      }
    }
    if (frame.options.empty()) throw PreconditionFailed("kernel row without positive entries");
    stack_.push_back(std::move(frame));
  } else if (!(stack_[cursor_].coordinate == g)) {
    throw Error("probe read coordinates in a non-deterministic order");
  }
  Frame& frame = stack_[cursor_];
  frame.weight = before * frame.probabilities[frame.index];
  const Symbol value = frame.options[frame.index];
  assignment_.set(g, value);
  ++cursor_;
  return value;
}

const Rational& ReadPathStack::weight() const { return cursor_ == 0 ? one_ : stack_[cursor_ - 1].weight; }

bool ReadPathStack::advance() {
  stack_.resize(cursor_);
  while (!stack_.empty()) {
    Frame& top = stack_.back();
    if (++top.index < top.options.size()) return true;
    stack_.pop_back();
  }
  return false;
}

}  // namespace detail

void for_each_configuration(const LetterKernels& kernels, const LeftConnectedSet& domain,
                            const std::function<void(const Configuration&, const Rational&)>& visit,
                            std::size_t budget) {
  const auto order = domain.ordered();
  std::vector<std::size_t> parent_index(order.size(), 0);
  for (std::size_t i = 1; i < order.size(); ++i) {
    const Word p = parent(order[i]);
    parent_index[i] = static_cast<std::size_t>(std::lower_bound(order.begin(), order.end(), p) - order.begin());
  }
  const std::size_t n = kernels.alphabet_size();
  std::vector<Symbol> values(order.size());
  std::vector<Rational> weights(order.size() + 1);
  weights[0] = 1;
  std::size_t visited = 0;

  // Depth-first over positions in shortlex order; parents are always earlier.
  std::function<void(std::size_t)> recurse = [&](std::size_t i) {
    if (i == order.size()) {
      if (++visited > budget) detail::throw_budget_exceeded(budget);
      std::map<Word, Symbol> phi;
      for (std::size_t k = 0; k < order.size(); ++k) phi.emplace_hint(phi.end(), order[k], values[k]);
      visit(Configuration(std::move(phi)), weights[i]);
      return;
    }
    for (std::size_t b = 0; b < n; ++b) {
      const Rational& p = i == 0 ? kernels.pi()[b] : kernels[order[i].leftmost()](values[parent_index[i]], b);
      if (p == 0) continue;
      values[i] = static_cast<Symbol>(b);
      weights[i + 1] = weights[i] * p;
      recurse(i + 1);
    }
  };
  recurse(0);
}

}  // namespace mcoe
