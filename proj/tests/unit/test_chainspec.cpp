#include <gtest/gtest.h>

#include <cmath>

#include "mcoe/chainspec.hpp"
#include "mcoe/chainspec_io.hpp"
#include "mcoe/enumerate.hpp"
#include "mcoe/error.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace mcoe;
using mcoe::testing::q;

namespace {

bool has(const ValidationReport& r, ViolationKind kind) {
  for (const auto& v : r.violations) {
    if (v.kind == kind) return true;
  }
  return false;
}

Configuration config(std::initializer_list<std::pair<const char*, Symbol>> entries) {
  Configuration phi;
  for (const auto& [text, a] : entries) phi.set(parse_word(text), a);
  return phi;
}

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_rational("3/4"), q(3, 4));
  EXPECT_EQ(parse_rational("-2"), q(-2));
  EXPECT_EQ(to_string(q(1, 2)), "1/2");
  EXPECT_EQ(to_string(q(1)), "1");
  EXPECT_EQ(to_string(q(0)), "0");
  EXPECT_EQ(parse_rational("0/1"), q(0));
  EXPECT_THROW(parse_rational("2/4"), InvalidInput);
  EXPECT_THROW(parse_rational("1/0"), InvalidInput);
  EXPECT_THROW(parse_rational("1/-2"), InvalidInput);
  EXPECT_THROW(parse_rational("0.5"), InvalidInput);
  EXPECT_THROW(parse_rational(""), InvalidInput);
}

TEST(Validate, AcceptsExamples) {
  EXPECT_TRUE(validate(mcoe::testing::m1()).ok());
  EXPECT_TRUE(validate(mcoe::testing::m2()).ok());
  MarkovSpec identity{{"0", "1"}, {q(1, 2), q(1, 2)}, {Matrix::identity(2), Matrix::identity(2)}};
  EXPECT_TRUE(validate(identity).ok());
}

TEST(Validate, ReportsEachViolation) {
  MarkovSpec spec{{"0", "1"}, {q(1, 3), q(2, 3)}, {Matrix{{q(1, 2), q(1, 2)}, {q(1, 2), q(1, 2)}}, Matrix::identity(2)}};
  EXPECT_TRUE(has(validate(spec), ViolationKind::not_stationary));

  auto bad_row = mcoe::testing::m1();
  bad_row.kernels[0](0, 0) = q(1, 3);
  const auto report = validate(bad_row);
  EXPECT_TRUE(has(report, ViolationKind::row_not_stochastic));
  bool row_witness = false;
  for (const auto& v : report.violations) row_witness |= v.row == 0u && v.generator == 0u;
  EXPECT_TRUE(row_witness);

  auto zero = mcoe::testing::m1();
  zero.pi = {q(0), q(1)};
  EXPECT_TRUE(has(validate(zero), ViolationKind::zero_mass));

  auto negative = mcoe::testing::m1();
  negative.kernels[0](0, 0) = q(-1, 2);
  negative.kernels[0](0, 1) = q(3, 2);
  EXPECT_TRUE(has(validate(negative), ViolationKind::negative_entry));

  auto rank1 = mcoe::testing::m1();
  rank1.kernels.pop_back();
  EXPECT_TRUE(has(validate(rank1), ViolationKind::rank_too_small));

  auto dup = mcoe::testing::m1();
  dup.alphabet = {"0", "0"};
  EXPECT_TRUE(has(validate(dup), ViolationKind::duplicate_symbol));

  EXPECT_THROW(require_valid(bad_row), PreconditionFailed);
}

TEST(ReverseKernel, TimeReversal) {
  MarkovSpec spec{{"0", "1"}, {q(1, 3), q(2, 3)}, {Matrix{{q(0), q(1)}, {q(1, 2), q(1, 2)}}, Matrix::identity(2)}};
  ASSERT_TRUE(validate(spec).ok());
  const Matrix rev = reverse_kernel(spec, 0);
  for (Symbol a = 0; a < 2; ++a) {
    Rational row = 0;
    for (Symbol b = 0; b < 2; ++b) {
      EXPECT_EQ(spec.pi[a] * rev(a, b), spec.pi[b] * spec.kernels[0](b, a));
      row += rev(a, b);
    }
    EXPECT_EQ(row, 1);
  }
  EXPECT_EQ(reverse_kernel(mcoe::testing::m1(), 1), mcoe::testing::m1().kernels[1].transpose());
}

TEST(Cylinder, WorkedExamples) {
  const auto m1 = mcoe::testing::m1();
  EXPECT_EQ(cylinder_measure(m1, config({{"e", 0}, {"s1", 1}, {"s2.s1", 0}})), q(1, 4));
  EXPECT_EQ(cylinder_measure(m1, config({{"e", 1}})), q(1, 2));
  EXPECT_EQ(cylinder_measure(m1, config({{"e", 0}, {"s1", 1}, {"s1.s1", 0}})), q(1, 8));
  EXPECT_EQ(cylinder_measure(m1, config({{"e", 0}, {"s2", 0}})), q(0));
  EXPECT_THROW(cylinder_measure(m1, config({{"e", 0}, {"s1.s1", 0}})), PreconditionFailed);
  EXPECT_THROW(cylinder_measure(m1, config({{"s1", 0}})), PreconditionFailed);
}

TEST(Cylinder, BernoulliIsAProduct) {
  const auto spec = bernoulli_spec({"a", "b", "c"}, {q(1, 2), q(1, 3), q(1, 6)}, 2);
  for_each_configuration(LetterKernels(spec), ball(2, 1), [&](const Configuration& phi, const Rational& m) {
    Rational product = 1;
    for (const auto& [g, a] : phi.values()) product *= spec.pi[a];
    EXPECT_EQ(m, product);
  });
}

TEST(Cylinder, MatchesSumProductOracleOnRandomSpecs) {
  mcoe::testing::Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const auto spec = mcoe::testing::random_spec(rng, 3);
    for_each_configuration(LetterKernels(spec), ball(2, 1), [&](const Configuration& phi, const Rational& m) {
      EXPECT_EQ(m, oracle::marginal_on_ball(spec, phi, 2));
    });
  }
}

TEST(Restriction, AssembleRoundTrip) {
  const auto m1 = mcoe::testing::m1();
  const auto r = restriction(m1, 1);
  EXPECT_EQ(r.pi, m1.pi);
  EXPECT_EQ(r.transition, m1.kernels[1]);
  EXPECT_EQ(assemble(m1.alphabet, {restriction(m1, 0), restriction(m1, 1)}), m1);
  ZKernel other{{q(1, 3), q(2, 3)}, Matrix{{q(1, 3), q(2, 3)}, {q(1, 3), q(2, 3)}}};
  EXPECT_THROW(assemble(m1.alphabet, {restriction(m1, 0), other}), PreconditionFailed);
}

TEST(Bernoulli, RowsEqualPi) {
  const auto spec = bernoulli_spec({"0", "1"}, {q(1, 3), q(2, 3)}, 2);
  for (const auto& k : spec.kernels) {
    for (Symbol a = 0; a < 2; ++a) {
      EXPECT_EQ(k(a, 0), q(1, 3));
      EXPECT_EQ(k(a, 1), q(2, 3));
    }
  }
  EXPECT_THROW(bernoulli_spec({"0", "1"}, {q(0), q(1)}, 2), PreconditionFailed);
}

TEST(Sampling, DeterministicAndConsistent) {
  const auto m1 = mcoe::testing::m1();
  EXPECT_EQ(sample_ball(m1, 2, 9), sample_ball(m1, 2, 9));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto x = sample_ball(m1, 2, seed);
    for (const auto& g : ball_words(2, 1)) {
      // The swap kernel: x_{s2 g} != x_g whenever both are present.
      const Word h = g.left_multiply(gen(1));
      if (x.contains(h)) {
        EXPECT_NE(x.at(h), x.at(g));
      }
    }
  }
}

TEST(Sampling, MonteCarloCylinderWithinFourSigma) {
  const auto m1 = mcoe::testing::m1();
  const auto phi = config({{"e", 0}, {"s1", 1}, {"s2.s1", 0}});
  std::vector<Configuration> samples;
  const std::size_t n = 100000;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const LazySample x(m1, derive_seed(5, i));
    hits += x.at(Word::identity()) == 0 && x.at(parse_word("s1")) == 1 && x.at(parse_word("s2.s1")) == 0;
  }
  const double f = static_cast<double>(hits) / n;
  EXPECT_LE(std::abs(f - 0.25), 4 * std::sqrt(0.25 * 0.75 / n));

  samples.push_back(sample_ball(m1, 2, 1));
  Configuration all = samples.front();
  EXPECT_EQ(empirical_cylinder(samples, all), 1.0);
  all.set(Word::identity(), 1 - all.at(Word::identity()));
  EXPECT_EQ(empirical_cylinder(samples, all), 0.0);
}

TEST(Enumeration, ReadPathsCoverTheWholeMass) {
  const auto m2 = mcoe::testing::m2();
  const LetterKernels kernels(m2);
  Rational total = 0;
  std::size_t leaves = 0;
  for_each_read_path<Symbol>(
      kernels,
      [](const CoordinateReader& x) {
        // Reads x_{s1} only when x_e = 0.
        return x(Word::identity()) == 0 ? x(parse_word("s1")) : Symbol{9};
      },
      [&](const Symbol&, const Rational& w, const Configuration&) {
        total += w;
        ++leaves;
      });
  EXPECT_EQ(total, 1);
  EXPECT_EQ(leaves, 3u);  // x_e = 0 forces x_{s1} = 1; x_e = 1 and x_e = 2 stop early
  EXPECT_THROW(for_each_configuration(kernels, ball(2, 2), [](const Configuration&, const Rational&) {}, 10),
               BudgetExceeded);
}

TEST(ChainSpecIo, RoundTripAndErrors) {
  const auto m2 = mcoe::testing::m2();
  const std::string text = serialize(m2);
  EXPECT_EQ(parse_spec(text), m2);
  EXPECT_EQ(serialize(parse_spec(text)), text);
  EXPECT_THROW(parse_spec(text.substr(0, text.size() / 2)), InvalidInput);
  EXPECT_THROW(parse_spec(R"({"generators": ["s1", "s2"], "alphabet": ["0"]})"), InvalidInput);
  std::string bad = text;
  bad.replace(bad.find("2/5"), 3, "4/10");
  EXPECT_THROW(parse_spec(bad), InvalidInput);
}
