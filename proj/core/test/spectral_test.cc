#include "ssgraph/spectral.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ssgraph/errors.h"

namespace ssgraph {
namespace {

using std::numbers::pi;

SampledSignal RandomSignal(std::mt19937_64& rng, std::size_t n, double dt, double start = 0.0) {
  std::normal_distribution<double> g;
  std::vector<double> x(n);
  for (double& v : x) v = g(rng);
  return SampledSignal(std::move(x), dt, start);
}

// Windowed tone on [0, T) with a raised-cosine envelope over the whole span.
SampledSignal WindowedTone(double omega, double horizon, double dt, double phase = 0.0) {
  const auto n = static_cast<std::size_t>(std::llround(horizon / dt));
  const auto w = RaisedCosineWindow(n, n, 0.1);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = w[i] * std::cos(omega * i * dt + phase);
  return SampledSignal(std::move(x), dt);
}

GTEST_TEST(FourierTest, MatchesDirectSum) {
  std::mt19937_64 rng(5);
  const SampledSignal u = RandomSignal(rng, 37, 0.1, 1.3);
  const Spectrum s = Fourier(u, 3);
  ASSERT_EQ(s.size(), 112u);  // 3 * 37 rounded up to even
  for (std::size_t k : {0u, 1u, 7u, 55u, 56u, 60u, 111u}) {
    const double w = s.omega(k);
    std::complex<double> direct = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      direct += u[i] * std::polar(u.dt(), -w * u.time(i));
    }
    EXPECT_NEAR(std::abs(s.coefficients[k] - direct), 0.0, 1e-12) << "bin " << k;
  }
  EXPECT_LT(s.omega(60), 0.0);
  EXPECT_NEAR(s.domega, 2.0 * pi / (112 * 0.1), 1e-15);
}

GTEST_TEST(FourierTest, InverseRestoresSignal) {
  std::mt19937_64 rng(6);
  const SampledSignal u = RandomSignal(rng, 101, 0.02, -0.5);
  const SampledSignal back = InverseFourier(Fourier(u));
  ASSERT_GE(back.size(), u.size());
  EXPECT_DOUBLE_EQ(back.start(), u.start());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_NEAR(back[i], i < u.size() ? u[i] : 0.0, 1e-12);
  }
}

GTEST_TEST(FourierTest, Parseval) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const SampledSignal u = RandomSignal(rng, 64 + trial * 13, 0.05);
    const SampledSignal y = RandomSignal(rng, 64 + trial * 13, 0.05);
    EXPECT_NEAR(FrequencyDomainInnerProduct(u, u), InnerProduct(u, u),
                1e-10 * InnerProduct(u, u));
    EXPECT_NEAR(FrequencyDomainInnerProduct(u, y), InnerProduct(u, y), 1e-10 * Norm(u) * Norm(y));
  }
}

GTEST_TEST(FourierTest, RejectsBadPadding) {
  const SampledSignal u({1.0, 2.0}, 0.1);
  EXPECT_THROW(Fourier(u, 0), ParameterError);
  EXPECT_THROW(Hilbert(u, 0), ParameterError);
}

GTEST_TEST(HilbertTest, CosineBecomesSine) {
  const double dt = 0.01, horizon = 60.0;
  const SampledSignal u = WindowedTone(1.0, horizon, dt);
  const SampledSignal h = Hilbert(u);
  const auto offset = static_cast<std::size_t>(std::llround((u.start() - h.start()) / dt));
  const auto n = u.size();
  const auto w = RaisedCosineWindow(n, n, 0.1);
  double err = 0.0, ref = 0.0;
  for (std::size_t i = n / 10; i < n - n / 10; ++i) {
    const double expected = w[i] * std::sin(u.time(i));
    err += std::pow(h[i + offset] - expected, 2);
    ref += expected * expected;
  }
  EXPECT_LT(std::sqrt(err / ref), 0.01);
}

GTEST_TEST(HilbertTest, PairingIsInnerProductWithTransform) {
  std::mt19937_64 rng(8);
  const SampledSignal u = RandomSignal(rng, 200, 0.05);
  const SampledSignal y = RandomSignal(rng, 200, 0.05);
  const SampledSignal hy = Hilbert(y);
  const auto offset = static_cast<std::size_t>(std::llround((u.start() - hy.start()) / u.dt()));
  double direct = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) direct += u[i] * hy[i + offset] * u.dt();
  EXPECT_NEAR(HilbertPairing(u, y), direct, 1e-10 * Norm(u) * Norm(y));
}

GTEST_TEST(HilbertTest, PairingAntisymmetricOnRandomPairs) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> len(16, 400);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(len(rng));
    const SampledSignal u = RandomSignal(rng, n, 0.01);
    const SampledSignal y = RandomSignal(rng, n, 0.01);
    EXPECT_LE(std::abs(HilbertPairing(u, y) + HilbertPairing(y, u)), 1e-6 * Norm(u) * Norm(y));
    EXPECT_LE(std::abs(HilbertPairing(u, u)), 1e-12 * Norm(u) * Norm(u));
  }
}

GTEST_TEST(HilbertTest, PhaseLeadPairsPositive) {
  // y = u shifted earlier by a quarter period leads u.
  const SampledSignal u = WindowedTone(2.0, 40.0, 0.01);
  const SampledSignal lead = WindowedTone(2.0, 40.0, 0.01, pi / 2.0);
  const SampledSignal lag = WindowedTone(2.0, 40.0, 0.01, -pi / 2.0);
  const double scale = Norm(u) * Norm(lead);
  EXPECT_NEAR(HilbertPairing(u, lead) / scale, 1.0, 0.01);
  EXPECT_NEAR(HilbertPairing(u, lag) / scale, -1.0, 0.01);
}

GTEST_TEST(HilbertTest, GridMismatchThrows) {
  EXPECT_THROW(HilbertPairing(SampledSignal({1.0, 2.0}, 0.1), SampledSignal({1.0}, 0.1)),
               GridMismatchError);
}

}  // namespace
}  // namespace ssgraph
