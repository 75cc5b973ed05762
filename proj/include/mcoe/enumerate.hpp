#pragma once

// Exact enumeration of positive-measure configurations.

#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include "mcoe/chainspec.hpp"

namespace mcoe {

inline constexpr std::size_t kDefaultEnumerationBudget = 5'000'000;

/// Calls visit(phi, mu(Cyl(phi))) for every configuration phi on the
/// left-connected domain with positive measure. Throws BudgetExceeded after
/// `budget` configurations.
void for_each_configuration(const LetterKernels& kernels, const LeftConnectedSet& domain,
                            const std::function<void(const Configuration&, const Rational&)>& visit,
                            std::size_t budget = kDefaultEnumerationBudget);

/// Runs a deterministic function of a configuration against every
/// positive-measure assignment of exactly the coordinates it reads.
///
/// Each time `probe` asks for an unassigned coordinate g, the path from e to g
/// is assigned first (ancestors before descendants), branching over every
/// symbol with positive conditional probability. The probe is re-run from
/// scratch for every branch, so it must read coordinates in an order that
/// depends only on values it has already seen. visit(result, weight, assignment)
/// receives the probe's result, the measure of the cylinder of the coordinates
/// read, and the assignment itself. Distinct calls cover disjoint cylinders
/// whose measures sum to 1.
template <typename Result>
void for_each_read_path(const LetterKernels& kernels, const std::function<Result(const CoordinateReader&)>& probe,
                        const std::function<void(const Result&, const Rational&, const Configuration&)>& visit,
                        std::size_t budget = kDefaultEnumerationBudget);

namespace detail {

[[noreturn]] void throw_budget_exceeded(std::size_t budget);

/// Shared machinery of for_each_read_path: the replay stack.
class ReadPathStack {
 public:
  explicit ReadPathStack(const LetterKernels& kernels) : kernels_(kernels) {}

  void begin_run();
  Symbol read(const Word& g);
  const Rational& weight() const;
  const Configuration& assignment() const { return assignment_; }
  /// Advances to the next branch; false when every branch has been visited.
  bool advance();

 private:
  struct Frame {
    Word coordinate;
    std::vector<Symbol> options;
    std::vector<Rational> probabilities;
    std::size_t index = 0;
    Rational weight;  // measure of the cylinder up to and including this frame
  };

  Symbol assign(const Word& g);

  const LetterKernels& kernels_;
  std::vector<Frame> stack_;
  std::size_t cursor_ = 0;
  Configuration assignment_;
  Rational one_ = 1;
};

}  // namespace detail

template <typename Result>
void for_each_read_path(const LetterKernels& kernels, const std::function<Result(const CoordinateReader&)>& probe,
                        const std::function<void(const Result&, const Rational&, const Configuration&)>& visit,
                        std::size_t budget) {
  detail::ReadPathStack stack(kernels);
  const CoordinateReader reader = [&stack](const Word& g) { return stack.read(g); };
  std::size_t leaves = 0;
  do {
    if (++leaves > budget) detail::throw_budget_exceeded(budget);
    stack.begin_run();
    Result result = probe(reader);
    visit(result, stack.weight(), stack.assignment());
  } while (stack.advance());
}

}  // namespace mcoe
