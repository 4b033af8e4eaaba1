#include "ssgraph/ssg.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ssgraph/errors.h"

namespace ssgraph {
namespace {

using std::numbers::pi;

SampledSignal Tone(double omega, double horizon, double dt) {
  const auto n = static_cast<std::size_t>(std::llround(horizon / dt));
  const auto w = RaisedCosineWindow(n, n, 0.1);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = w[i] * std::cos(omega * i * dt);
  return SampledSignal(std::move(x), dt);
}

InputFamily Family(InputKind kind, std::uint64_t seed, int count) {
  InputFamily f;
  f.kind = kind;
  f.seed = seed;
  f.count = count;
  f.horizon = 40.0;
  f.dt = 0.01;
  f.omega_max = 20.0;
  return f;
}

bool Subset(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  auto less = [](Complex x, Complex y) {
    return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
  };
  return std::includes(b.begin(), b.end(), a.begin(), a.end(), less);
}

std::vector<Complex> Sorted(std::vector<Complex> v) {
  std::sort(v.begin(), v.end(), [](Complex x, Complex y) {
    return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
  });
  return v;
}

PointCloud RandomCloud(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> gain(0.01, 10.0), phase(-pi, pi), unit(0.0, 1.0);
  PointCloud c;
  for (int i = 0; i < n; ++i) {
    const bool indeterminate = unit(rng) < 0.2;
    const double phi = phase(rng);
    c.points.push_back({gain(rng), indeterminate ? std::abs(phi) : phi, indeterminate, i});
  }
  return c;
}

GTEST_TEST(PhaseTest, UnsignedPhaseExamples) {
  const SampledSignal u = Tone(1.0, 20.0, 0.01);
  EXPECT_NEAR(UnsignedPhase(u, u.Scaled(3.0)), 0.0, 1e-7);
  EXPECT_NEAR(UnsignedPhase(u, u.Scaled(-1.0)), pi, 1e-7);
  const std::size_t n = 100000;
  const double dt = 2.0 * pi / n;
  const auto s = SampledSignal::FromFunction(n, dt, [](double t) { return std::sin(t); });
  const auto c = SampledSignal::FromFunction(n, dt, [](double t) { return std::cos(t); });
  EXPECT_NEAR(UnsignedPhase(s, c), pi / 2.0, 1e-3);
}

GTEST_TEST(PhaseTest, DegeneratePairsThrow) {
  const SampledSignal u = Tone(1.0, 5.0, 0.01);
  const SampledSignal zero = SampledSignal::Zeros(u.size(), u.dt());
  EXPECT_THROW(Gain(zero, u), DegeneratePairError);
  EXPECT_THROW(UnsignedPhase(u, zero), DegeneratePairError);
  EXPECT_THROW(ComputeSignedPhase(zero, u), DegeneratePairError);
  EXPECT_EQ(Gain(u, zero), 0.0);
}

GTEST_TEST(PhaseTest, AlignedPairIsIndeterminateAtZero) {
  const SampledSignal u = Tone(1.0, 20.0, 0.01);
  const SignedPhase s = ComputeSignedPhase(u, u.Scaled(2.5));
  EXPECT_TRUE(s.indeterminate);
  EXPECT_NEAR(s.phase, 0.0, 1e-7);
  const auto expanded = ExpandPoint({2.5, s.phase, true, 0});
  EXPECT_LE(expanded.size(), 2u);
  EXPECT_NEAR(std::abs(expanded.front() - expanded.back()), 0.0, 1e-6);
}

GTEST_TEST(PhaseTest, LeadAndLagCalibration) {
  const SampledSignal u = Tone(1.0, 300.0, 0.005);
  const SignedPhase lead = ComputeSignedPhase(u, Simulate(LeadFilter(), u));
  const SignedPhase lag = ComputeSignedPhase(u, Simulate(LagFilter(), u));
  EXPECT_FALSE(lead.indeterminate);
  EXPECT_FALSE(lag.indeterminate);
  EXPECT_NEAR(lead.phase / (pi / 4.0), 1.0, 0.02);
  EXPECT_NEAR(lag.phase / (-pi / 4.0), 1.0, 0.02);
}

GTEST_TEST(EstimateTest, StaticGainGivesSinglePoint) {
  const PointCloud c = EstimateSsg(OperatorModel::Gain(3.0), Family(InputKind::kChirp, 1, 10));
  ASSERT_EQ(c.points.size(), 10u);
  for (const SsgPoint& p : c.points) {
    EXPECT_NEAR(p.gain, 3.0, 1e-12);
    EXPECT_NEAR(p.phase, 0.0, 1e-6);
    for (Complex z : ExpandPoint(p)) EXPECT_NEAR(std::abs(z - 3.0), 0.0, 1e-6);
  }
}

GTEST_TEST(EstimateTest, LeadCloudInsideUpperHalfDisk) {
  const PointCloud c = EstimateSsg(LeadFilter(), Family(InputKind::kMultisine, 2, 60));
  for (Complex z : ExpandedPoints(c)) {
    EXPECT_LE(std::abs(z - 0.5), 0.52);
    EXPECT_GE(z.imag(), -0.02);
  }
}

GTEST_TEST(EstimateTest, SaturationHasNonNegativeRealPart) {
  const auto sat = OperatorModel::Saturation(0.05);
  const PointCloud c = EstimateSsg(sat, Family(InputKind::kFilteredNoise, 3, 30));
  for (Complex z : ExpandedPoints(c)) EXPECT_GE(z.real(), -1e-6);
}

GTEST_TEST(EstimateTest, ZeroInputsAndOutputsAreAccounted) {
  const SampledSignal u = Tone(1.0, 10.0, 0.01);
  const std::vector<SampledSignal> inputs{u, SampledSignal::Zeros(u.size(), u.dt()), u};
  const auto deadzone = OperatorModel::Static(NonlinearityKind::kDeadzone, 10.0);
  const PointCloud c = EstimateSsg(deadzone, inputs);
  EXPECT_EQ(c.zero_input_count, 1);
  EXPECT_EQ(c.zero_output_count, 2);
  ASSERT_EQ(c.points.size(), 2u);
  EXPECT_EQ(c.points[0].gain, 0.0);
  EXPECT_EQ(c.points[0].phase, 0.0);
  EXPECT_EQ(c.points[1].input_id, 2);
}

GTEST_TEST(EstimateTest, ParallelEstimationIsDeterministic) {
  EstimateOptions one, many;
  many.jobs = 4;
  const InputFamily f = Family(InputKind::kMultisine, 4, 16);
  const auto model = OperatorModel::MakeSeries(OperatorModel::Saturation(0.1), LagFilter());
  EXPECT_EQ(EstimateSsg(model, f, one).points, EstimateSsg(model, f, many).points);
}

GTEST_TEST(CloudTest, InvertExamples) {
  PointCloud c;
  c.points = {{2.0, pi / 4.0, false, 0}, {1.0, 0.0, true, 1}, {0.5, -pi / 2.0, false, 2}};
  const PointCloud inv = InvertCloud(c);
  EXPECT_EQ(inv.points[0].gain, 0.5);
  EXPECT_EQ(inv.points[0].phase, -pi / 4.0);
  EXPECT_EQ(inv.points[1].gain, 1.0);
  EXPECT_EQ(inv.points[1].phase, 0.0);
  EXPECT_TRUE(inv.points[1].indeterminate);
  EXPECT_EQ(inv.points[2].gain, 2.0);
  EXPECT_EQ(inv.points[2].phase, pi / 2.0);
  c.points.push_back({0.0, 0.0, false, 3});
  EXPECT_THROW(InvertCloud(c), NonInvertiblePointError);
}

GTEST_TEST(CloudTest, InvertIsAnInvolution) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const PointCloud c = RandomCloud(rng, 40);
    const PointCloud back = InvertCloud(InvertCloud(c));
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      EXPECT_NEAR(back.points[i].gain, c.points[i].gain, 1e-12 * c.points[i].gain);
      EXPECT_NEAR(back.points[i].phase, c.points[i].phase, 1e-12);
      EXPECT_EQ(back.points[i].indeterminate, c.points[i].indeterminate);
    }
  }
}

GTEST_TEST(CloudTest, ConjugateAndUnion) {
  PointCloud c;
  c.points = {{1.0, pi / 3.0, false, 0}};
  EXPECT_EQ(ConjugateCloud(c).points[0].phase, -pi / 3.0);
  const PointCloud u = SgFromSsg(c);
  ASSERT_EQ(u.points.size(), 2u);
  EXPECT_EQ(u.points[1].phase, -pi / 3.0);
  PointCloud real;
  real.points = {{2.0, 0.0, false, 0}};
  EXPECT_EQ(ExpandedPointSet(SgFromSsg(real)), (std::vector<Complex>{{2.0, 0.0}}));
}

GTEST_TEST(CloudTest, ScaleNegateExamples) {
  PointCloud c;
  c.points = {{1.0, pi / 4.0, false, 0}, {2.0, -pi / 2.0, false, 1}, {1.0, 0.0, false, 2}};
  const PointCloud a = ScaleNegateCloud(c, 1.0);
  EXPECT_NEAR(a.points[0].phase, -3.0 * pi / 4.0, 1e-15);
  EXPECT_EQ(a.points[0].gain, 1.0);
  const PointCloud b = ScaleNegateCloud(c, 0.5);
  EXPECT_EQ(b.points[1].gain, 1.0);
  EXPECT_NEAR(b.points[1].phase, pi / 2.0, 1e-15);
  EXPECT_TRUE(a.points[2].indeterminate);
  EXPECT_EQ(std::abs(a.points[2].phase), pi);
  EXPECT_EQ(ExpandPoint(a.points[2]), (std::vector<Complex>{{-1.0, 0.0}}));
  EXPECT_THROW(ScaleNegateCloud(c, 0.0), ParameterError);
  EXPECT_THROW(ScaleNegateCloud(c, 1.5), ParameterError);
}

GTEST_TEST(CloudTest, ScaleNegateIsComplexNegation) {
  std::mt19937_64 rng(32);
  const PointCloud c = RandomCloud(rng, 200);
  for (double tau : {1.0, 0.3, 1e-3}) {
    const PointCloud s = ScaleNegateCloud(c, tau);
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      auto expected = ExpandPoint(c.points[i]);
      for (Complex& z : expected) z *= -tau;
      expected = Sorted(expected);
      const auto got = Sorted(ExpandPoint(s.points[i]));
      ASSERT_EQ(got.size(), expected.size());
      for (std::size_t k = 0; k < got.size(); ++k) {
        EXPECT_NEAR(std::abs(got[k] - expected[k]), 0.0, 1e-12 * (1.0 + c.points[i].gain));
      }
    }
  }
}

GTEST_TEST(CloudTest, ScaleNegateMatchesScaledModel) {
  const InputFamily f = Family(InputKind::kMultisine, 5, 20);
  const std::vector<SampledSignal> inputs = GenerateInputs(f);
  for (const OperatorModel& h :
       {LagFilter(), LeadFilter(), SecondOrderPlant(3.0), OperatorModel::Gain(2.0)}) {
    const PointCloud c = EstimateSsg(h, std::span<const SampledSignal>(inputs));
    for (double tau : {1.0, 0.25}) {
      const PointCloud mapped = ScaleNegateCloud(c, tau);
      const PointCloud direct =
          EstimateSsg(OperatorModel::MakeScale(h, -tau), std::span<const SampledSignal>(inputs));
      ASSERT_EQ(mapped.points.size(), direct.points.size());
      for (std::size_t i = 0; i < mapped.points.size(); ++i) {
        const auto a = Sorted(ExpandPoint(mapped.points[i]));
        const auto b = Sorted(ExpandPoint(direct.points[i]));
        ASSERT_EQ(a.size(), b.size()) << h.Describe() << " " << i;
        for (std::size_t k = 0; k < a.size(); ++k) {
          EXPECT_NEAR(std::abs(a[k] - b[k]), 0.0, 1e-9) << h.Describe() << " " << i;
        }
      }
    }
  }
}

GTEST_TEST(SetIdentityTest, SignedGraphIsSubsetAndUnionIsUnsignedGraph) {
  const OperatorModel models[] = {
      LagFilter(), LeadFilter(), SecondOrderPlant(5.0), OperatorModel::Saturation(0.02),
      OperatorModel::MakeSeries(OperatorModel::Static(NonlinearityKind::kDeadzone, 0.01),
                                LeadFilter()),
      OperatorModel::Gain(-2.0)};
  int family_index = 0;
  for (InputKind kind : {InputKind::kMultisine, InputKind::kChirp, InputKind::kWindowedPulse}) {
    const auto inputs = GenerateInputs(Family(kind, 40 + family_index++, 15));
    for (const OperatorModel& h : models) {
      const auto span = std::span<const SampledSignal>(inputs);
      const PointCloud ssg = EstimateSsg(h, span);
      const PointCloud sg = EstimateSg(h, span);
      const auto sg_set = ExpandedPointSet(sg);
      EXPECT_TRUE(Subset(ExpandedPointSet(ssg), sg_set)) << h.Describe();
      EXPECT_EQ(ExpandedPointSet(SgFromSsg(ssg)), sg_set) << h.Describe();
    }
  }
}

GTEST_TEST(WrapPhaseTest, Range) {
  EXPECT_NEAR(WrapPhase(3.0 * pi / 2.0), -pi / 2.0, 1e-15);
  EXPECT_NEAR(WrapPhase(-3.0 * pi / 2.0), pi / 2.0, 1e-15);
  EXPECT_EQ(WrapPhase(0.5), 0.5);
}

}  // namespace
}  // namespace ssgraph
