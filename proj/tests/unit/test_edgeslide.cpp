#include <gtest/gtest.h>

#include "mcoe/edgeslide.hpp"
#include "mcoe/error.hpp"
#include "mcoe/slide_io.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace mcoe;
using mcoe::testing::q;

namespace {

SlideParams m2_params() { return make_slide_params(mcoe::testing::m2(), 0, 1, {{0, 1}}); }

Configuration window(std::initializer_list<std::pair<const char*, Symbol>> entries) {
  Configuration x;
  for (const auto& [text, a] : entries) x.set(parse_word(text), a);
  return x;
}

}  // namespace

TEST(SlideParams, BranchDataFromTheUGraph) {
  const auto p = m2_params();
  ASSERT_TRUE(p.branch.contains(1));
  EXPECT_EQ(p.branch.at(1).n, 1u);
  EXPECT_EQ(p.branch.at(1).eta, 2u);
  EXPECT_EQ(p.f_set(), (std::set<Triple>{{0, 1, 2}}));
  EXPECT_EQ(p.n_max(), 1u);
  EXPECT_THROW(make_slide_params(mcoe::testing::m2(), 0, 0, {}), InvalidInput);
  EXPECT_THROW(make_slide_params(mcoe::testing::m2(), 0, 1, {{0, 2}}), PreconditionFailed);
}

TEST(EvalF, TableLookup) {
  const auto p = m2_params();
  EXPECT_EQ(eval_F(window({{"s1^-1", 0}, {"e", 1}, {"s1", 2}}).reader(), p), (Triple{0, 1, 2}));
  EXPECT_TRUE(flagged(window({{"s1^-1", 0}, {"e", 1}, {"s1", 2}}).reader(), Word::identity(), p));
  EXPECT_FALSE(flagged(window({{"s1^-1", 0}, {"e", 1}, {"s1", 0}}).reader(), Word::identity(), p));
  EXPECT_FALSE(eval_F(window({{"s1^-1", 1}, {"e", 0}}).reader(), p).has_value());
}

TEST(BuildTau, EmptySetIsIdentity) {
  const auto m1 = mcoe::testing::m1();
  const auto p = make_slide_params(m1, 0, 1, {});
  const TauSpec tau = build_tau(m1, p);
  for (Letter l : letters(2)) EXPECT_TRUE(tau.is_trivial(l));
  EXPECT_EQ(pushforward(m1, p), m1);
  EXPECT_TRUE(verify_slide(m1, p).ok());
}

TEST(BuildTau, NonSpecialSetConflictIsDetected) {
  // u = s1 on M1 is the complete graph; E = {(0,1), (1,0)} has vertex 0 as
  // both head and tail, so t can be flagged on both sides at once.
  const auto m1 = mcoe::testing::m1();
  const auto p = make_slide_params(m1, 0, 1, {{0, 1}, {1, 0}});
  EXPECT_THROW(build_tau(m1, p), PreconditionFailed);
  const TauSpec tau = build_tau_unchecked(2, p);
  // Every vertex branches, so n = 1 and eta = 1 for both symbols.
  ASSERT_EQ(p.branch.at(0), (BranchData{1, {0, 0}, 1}));
  ASSERT_EQ(p.branch.at(1), (BranchData{1, {1, 0}, 1}));
  // Flagged at t by (1, 0, 1) and at ut by (0, 1, 1).
  const auto x = window({{"e", 0}, {"s2", 0}, {"s1^-1.s2", 1}, {"s1.s2", 1}, {"s1.s1.s2", 1}});
  EXPECT_THROW(tau.apply(gen(1), x.reader()), Error);
}

TEST(Pushforward, M2MatchesHandComputation) {
  const auto m2 = mcoe::testing::m2();
  const auto rho = pushforward(m2, m2_params());
  const Matrix expected{{q(1, 4), q(1, 4), q(1, 2)}, {q(1, 2), q(1, 2), q(0)}, {q(1, 2), q(1, 2), q(0)}};
  EXPECT_EQ(rho.kernels[1], expected);
  EXPECT_EQ(rho.kernels[0], m2.kernels[0]);
  EXPECT_TRUE(validate(rho).ok());
}

TEST(Pushforward, MatchesTubeOracleOnRandomSlides) {
  mcoe::testing::Rng rng(44);
  int tested = 0;
  while (tested < 6) {
    const auto spec = mcoe::testing::random_spec(rng, mcoe::testing::uniform_index(rng, 2, 4));
    const auto p = mcoe::testing::tree_slide(spec, 0, 1);
    if (!p) continue;
    EXPECT_EQ(pushforward_joint(spec, *p), oracle::tube_joint(spec, *p));
    ++tested;
  }
}

TEST(Pushforward, JointIsStationary) {
  const auto m2 = mcoe::testing::m2();
  const Matrix joint = pushforward_joint(m2, m2_params());
  for (Symbol a = 0; a < 3; ++a) {
    Rational row = 0, col = 0;
    for (Symbol b = 0; b < 3; ++b) row += joint(a, b), col += joint(b, a);
    EXPECT_EQ(row, m2.pi[a]);
    EXPECT_EQ(col, m2.pi[a]);
  }
}

TEST(VerifySlide, ChecksOnM2) {
  const auto m2 = mcoe::testing::m2();
  const auto report = verify_slide(m2, m2_params());
  for (const char* name : {"involution", "omega_involution", "orbit_surjective", "past_preserved", "restrictions",
                           "rho_valid", "support", "relation", "aperiodic"}) {
    EXPECT_TRUE(report.check(name).ok) << name << ": " << report.check(name).witness;
  }
}

TEST(VerifySlide, PushforwardIsNotMarkovForTheNewKernels) {
  // rho(y_e = 0, y_t = 1, y_ut = 0) = 1/10 while the product formula gives 1/20.
  const auto m2 = mcoe::testing::m2();
  const auto p = m2_params();
  const TauSpec tau = build_tau(m2, p);
  const auto rho = pushforward(m2, p);
  const auto phi = window({{"e", 0}, {"s2", 1}, {"s1.s2", 0}});
  EXPECT_EQ(cylinder_measure(rho, phi), q(1, 20));
  Rational mass = 0;
  const std::vector<Word> words{Word::identity(), parse_word("s2"), parse_word("s1.s2")};
  for_each_read_path<bool>(
      LetterKernels(m2),
      [&](const CoordinateReader& x) {
        const auto y = omega_map_reader(tau, x);
        return y(words[0]) == 0 && y(words[1]) == 1 && y(words[2]) == 0;
      },
      [&](const bool& hit, const Rational& w, const Configuration&) {
        if (hit) mass += w;
      });
  EXPECT_EQ(mass, q(1, 10));
  const auto report = verify_slide(m2, p);
  EXPECT_FALSE(report.check("markov").ok);
}

TEST(VerifySlide, CorruptedKernelFailsMarkovCheck) {
  const auto m1 = mcoe::testing::m1();
  const auto p = make_slide_params(m1, 0, 1, {});
  SlideVerifyOptions options;
  Matrix corrupted = m1.kernels[1];
  corrupted(0, 0) = q(1, 2);
  corrupted(0, 1) = q(1, 2);
  options.q_override = corrupted;
  EXPECT_FALSE(verify_slide(m1, p, options).check("markov").ok);
}

TEST(Pipeline, BernoulliIsUnchanged) {
  const auto spec = bernoulli_spec({"0", "1"}, {q(1, 2), q(1, 2)}, 2);
  const auto result = generator_ergodic_pipeline(spec);
  EXPECT_EQ(result.spec, spec);
  EXPECT_TRUE(result.slides.empty());
}

TEST(Pipeline, M1BecomesGeneratorErgodic) {
  const auto m1 = mcoe::testing::m1();
  const auto result = generator_ergodic_pipeline(m1);
  const auto c = classify(result.spec);
  EXPECT_TRUE(c.per_generator[1].ergodic);
  EXPECT_TRUE(c.per_generator[1].free);
  EXPECT_EQ(result.spec.pi, m1.pi);
  EXPECT_EQ(result.slides.size(), 1u);
}

TEST(Pipeline, NeedsMoreThanOneSecondStagePass) {
  const auto spec = mcoe::testing::four_blocks();
  ASSERT_TRUE(classify(spec).properly_ergodic);
  const auto result = generator_ergodic_pipeline(spec);
  EXPECT_TRUE(classify(result.spec).generator_ergodic());
  EXPECT_GE(result.stage2_passes, 2u);
}

TEST(Pipeline, RejectsNonProperlyErgodicInput) {
  MarkovSpec identity{{"0", "1"}, {q(1, 2), q(1, 2)}, {Matrix::identity(2), Matrix::identity(2)}};
  EXPECT_THROW(generator_ergodic_pipeline(identity), PreconditionFailed);
}

TEST(Replay, InvolutionsAndRoundTrip) {
  const auto m1 = mcoe::testing::m1();
  EXPECT_EQ(replay({}, 2, sample_ball(m1, 4, 2), 2), sample_ball(m1, 2, 2));
  const auto p = mcoe::testing::tree_slide(m1, 0, 1);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const LazySample x(m1, seed);
    const auto twice = replay({*p, *p}, 2, x.reader(), 3);
    for (const auto& [g, a] : twice.values()) EXPECT_EQ(a, x.at(g));
  }
  const auto result = generator_ergodic_pipeline(mcoe::testing::four_blocks());
  ASSERT_GE(result.slides.size(), 2u);
  std::vector<SlideParams> reversed(result.slides.rbegin(), result.slides.rend());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const LazySample x(mcoe::testing::four_blocks(), seed);
    const auto y = replay_reader(result.slides, 2, x.reader());
    const auto back = replay(reversed, 2, y, 2);
    for (const auto& [g, a] : back.values()) EXPECT_EQ(a, x.at(g));
  }
}

TEST(SlideIo, RoundTrip) {
  const auto m2 = mcoe::testing::m2();
  const auto p = m2_params();
  EXPECT_EQ(slide_from_json(slide_to_json(p, m2), m2), p);
  const Json params = Json::parse(R"({"u": "s1", "t": "s2", "E": [["0", "1"]]})");
  EXPECT_EQ(slide_params_from_json(params, m2), p);
  const auto log = slide_log_to_json({p, p}, m2);
  EXPECT_EQ(slide_log_from_json(log, m2), (std::vector<SlideParams>{p, p}));
  EXPECT_THROW(slide_params_from_json(Json::parse(R"({"u": "s7", "t": "s2", "E": []})"), m2), InvalidInput);
  EXPECT_THROW(slide_params_from_json(Json::parse(R"({"u": "s1", "E": []})"), m2), InvalidInput);
}
