#include "ssgraph/signals.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ssgraph/errors.h"

namespace ssgraph {
namespace {

using std::numbers::pi;

GTEST_TEST(SampledSignalTest, RejectsBadGrid) {
  EXPECT_THROW(SampledSignal({1.0}, 0.0), ParameterError);
  EXPECT_THROW(SampledSignal({1.0}, -0.1), ParameterError);
  EXPECT_THROW(SampledSignal({std::nan("")}, 0.1), ParameterError);
  EXPECT_THROW(SampledSignal({INFINITY}, 0.1), ParameterError);
}

GTEST_TEST(SampledSignalTest, Accessors) {
  const SampledSignal u({1.0, 2.0, 3.0}, 0.5, 2.0);
  EXPECT_EQ(u.size(), 3u);
  EXPECT_DOUBLE_EQ(u.time(2), 3.0);
  EXPECT_DOUBLE_EQ(u.horizon(), 1.5);
  EXPECT_FALSE(u.IsZero());
  EXPECT_TRUE(SampledSignal::Zeros(4, 0.1).IsZero());

  const SampledSignal e = u.ZeroExtended(5);
  ASSERT_EQ(e.size(), 5u);
  EXPECT_EQ(e[2], 3.0);
  EXPECT_EQ(e[4], 0.0);
  EXPECT_EQ(e.Truncated(3), u);
  EXPECT_EQ(u.ZeroExtended(2), u);
}

GTEST_TEST(SampledSignalTest, Arithmetic) {
  const SampledSignal a({1.0, 2.0}, 0.1), b({3.0, -1.0}, 0.1);
  EXPECT_EQ((a + b).values(), (std::vector<double>{4.0, 1.0}));
  EXPECT_EQ((a - b).values(), (std::vector<double>{-2.0, 3.0}));
  EXPECT_EQ((2.0 * a).values(), (std::vector<double>{2.0, 4.0}));
  EXPECT_THROW(a + SampledSignal({1.0, 2.0}, 0.2), GridMismatchError);
  EXPECT_THROW(a + SampledSignal({1.0, 2.0}, 0.1, 1.0), GridMismatchError);
  EXPECT_THROW(a + SampledSignal({1.0}, 0.1), GridMismatchError);
}

GTEST_TEST(InnerProductTest, SineSquaredIntegratesToPi) {
  const std::size_t n = 200000;
  const double dt = 2.0 * pi / n;
  const auto u = SampledSignal::FromFunction(n, dt, [](double t) { return std::sin(t); });
  EXPECT_NEAR(InnerProduct(u, u), pi, 1e-9);
  EXPECT_NEAR(Norm(u), std::sqrt(pi), 1e-9);
  const auto c = SampledSignal::FromFunction(n, dt, [](double t) { return std::cos(t); });
  EXPECT_NEAR(InnerProduct(u, c), 0.0, 1e-9);
}

GTEST_TEST(InnerProductTest, GridMismatchThrows) {
  EXPECT_THROW(InnerProduct(SampledSignal({1.0}, 0.1), SampledSignal({1.0}, 0.2)),
               GridMismatchError);
}

GTEST_TEST(TailEnergyTest, Fractions) {
  std::vector<double> x(100, 0.0);
  x[99] = 1.0;
  EXPECT_DOUBLE_EQ(TailEnergyFraction(SampledSignal(x, 1.0), 0.05), 1.0);
  x[99] = 0.0;
  x[0] = 1.0;
  EXPECT_DOUBLE_EQ(TailEnergyFraction(SampledSignal(x, 1.0), 0.05), 0.0);
  EXPECT_DOUBLE_EQ(TailEnergyFraction(SampledSignal::Zeros(10, 1.0)), 0.0);
}

GTEST_TEST(RaisedCosineWindowTest, Shape) {
  const auto w = RaisedCosineWindow(1000, 900, 0.1);
  ASSERT_EQ(w.size(), 1000u);
  EXPECT_EQ(w[0], 0.0);
  for (std::size_t i = 900; i < 1000; ++i) EXPECT_EQ(w[i], 0.0);
  EXPECT_DOUBLE_EQ(w[450], 1.0);
  for (std::size_t i = 0; i < 90; ++i) EXPECT_NEAR(w[i], w[899 - i], 1e-12);
  for (double v : w) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

class InputFamilyTest : public ::testing::TestWithParam<InputKind> {
 protected:
  InputFamily Family(std::uint64_t seed) const {
    InputFamily f;
    f.kind = GetParam();
    f.seed = seed;
    f.count = 12;
    f.horizon = 40.0;
    f.dt = 0.01;
    return f;
  }
};

TEST_P(InputFamilyTest, UnitNormDeterministicAndSettled) {
  const InputFamily f = Family(17);
  const auto a = GenerateInputs(f, 1);
  const auto b = GenerateInputs(f, 4);
  ASSERT_EQ(a.size(), 12u);
  EXPECT_EQ(a, b);
  for (const auto& u : a) {
    EXPECT_EQ(u.size(), f.samples());
    EXPECT_NEAR(Norm(u), 1.0, 1e-12);
    EXPECT_LE(TailEnergyFraction(u, f.tail_fraction), f.tail_energy_limit);
    const auto quiet = static_cast<std::size_t>(std::floor(0.95 * static_cast<double>(u.size())));
    for (std::size_t i = quiet + 1; i < u.size(); ++i) ASSERT_EQ(u[i], 0.0);
  }
  for (std::size_t i = 1; i < a.size(); ++i) EXPECT_NE(a[i], a[0]);
}

TEST_P(InputFamilyTest, SeedChangesSignals) {
  EXPECT_NE(GenerateInput(Family(1), 0), GenerateInput(Family(2), 0));
  EXPECT_EQ(GenerateInput(Family(1), 3), GenerateInput(Family(1), 3));
}

INSTANTIATE_TEST_SUITE_P(AllKinds, InputFamilyTest,
                         ::testing::Values(InputKind::kMultisine, InputKind::kFilteredNoise,
                                           InputKind::kChirp, InputKind::kWindowedPulse));

GTEST_TEST(InputFamilyValidateTest, Rejections) {
  InputFamily f;
  f.omega_max = 400.0;  // above pi / dt
  EXPECT_THROW(f.Validate(), ParameterError);
  f = {};
  f.count = -1;
  EXPECT_THROW(f.Validate(), ParameterError);
  f = {};
  f.omega_min = 0.0;
  EXPECT_THROW(f.Validate(), ParameterError);
  f = {};
  f.dt = -1.0;
  EXPECT_THROW(f.Validate(), ParameterError);
  f = {};
  f.pulse_min_width = 0.8;
  f.pulse_max_width = 0.2;
  EXPECT_THROW(f.Validate(), ParameterError);
  EXPECT_NO_THROW(InputFamily{}.Validate());
}

GTEST_TEST(InputKindTest, NamesRoundTrip) {
  for (InputKind k : {InputKind::kMultisine, InputKind::kFilteredNoise, InputKind::kChirp,
                      InputKind::kWindowedPulse}) {
    EXPECT_EQ(ParseInputKind(ToString(k)), k);
  }
  EXPECT_THROW(ParseInputKind("square"), ParameterError);
}

}  // namespace
}  // namespace ssgraph
