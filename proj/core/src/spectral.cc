#include "ssgraph/spectral.h"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "ssgraph/errors.h"

namespace ssgraph {
namespace {

using std::numbers::pi;

// FFTW's planner is not re-entrant; execution of distinct plans is.
std::mutex& PlannerMutex() {
  static std::mutex m;
  return m;
}

class Plan {
 public:
  explicit Plan(fftw_plan plan) : plan_(plan) {}
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    fftw_destroy_plan(plan_);
  }
  void Execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_;
};

// Half spectrum (n/2 + 1 bins) of x zero-padded to n samples, placed at offset.
std::vector<std::complex<double>> ForwardReal(std::span<const double> x, std::size_t n,
                                              std::size_t offset = 0) {
  std::vector<double> in(n, 0.0);
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_plan raw;
  {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    raw = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                               reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
  }
  Plan plan(raw);
  std::copy(x.begin(), x.end(), in.begin() + static_cast<std::ptrdiff_t>(offset));
  plan.Execute();
  return out;
}

// Real signal of length n from its half spectrum; unnormalised like FFTW.
std::vector<double> InverseReal(std::vector<std::complex<double>> half, std::size_t n) {
  std::vector<double> out(n);
  fftw_plan raw;
  {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    raw = fftw_plan_dft_c2r_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(half.data()),
                               out.data(), FFTW_ESTIMATE);
  }
  Plan plan(raw);
  plan.Execute();
  return out;
}

std::size_t PaddedLength(std::size_t n, int pad_factor) {
  if (pad_factor < 1) throw ParameterError("pad_factor must be >= 1");
  std::size_t len = n * static_cast<std::size_t>(pad_factor);
  if (len % 2 == 1) ++len;
  return std::max<std::size_t>(len, 2);
}

}  // namespace

double Spectrum::omega(std::size_t k) const {
  const auto n = static_cast<std::ptrdiff_t>(coefficients.size());
  auto idx = static_cast<std::ptrdiff_t>(k);
  if (idx > n / 2) idx -= n;
  return static_cast<double>(idx) * domega;
}

Spectrum Fourier(const SampledSignal& u, int pad_factor) {
  const std::size_t n = PaddedLength(u.size(), pad_factor);
  const auto half = ForwardReal(u.samples(), n);
  Spectrum s;
  s.coefficients.resize(n);
  s.dt = u.dt();
  s.start = u.start();
  s.signal_length = u.size();
  s.domega = 2.0 * pi / (static_cast<double>(n) * u.dt());
  for (std::size_t k = 0; k < half.size(); ++k) {
    s.coefficients[k] = half[k] * u.dt();
  }
  for (std::size_t k = half.size(); k < n; ++k) {
    s.coefficients[k] = std::conj(s.coefficients[n - k]);
  }
  if (u.start() != 0.0) {
    for (std::size_t k = 0; k < n; ++k) {
      s.coefficients[k] *= std::polar(1.0, -s.omega(k) * u.start());
    }
  }
  return s;
}

SampledSignal InverseFourier(const Spectrum& spectrum) {
  const std::size_t n = spectrum.size();
  if (n == 0) return SampledSignal({}, spectrum.dt > 0 ? spectrum.dt : 1.0, spectrum.start);
  std::vector<std::complex<double>> half(n / 2 + 1);
  for (std::size_t k = 0; k < half.size(); ++k) {
    std::complex<double> c = spectrum.coefficients[k];
    if (spectrum.start != 0.0) c *= std::polar(1.0, spectrum.omega(k) * spectrum.start);
    half[k] = c / spectrum.dt;
  }
  auto x = InverseReal(std::move(half), n);
  for (double& v : x) v /= static_cast<double>(n);
  return SampledSignal(std::move(x), spectrum.dt, spectrum.start);
}

SampledSignal Hilbert(const SampledSignal& u, int pad_factor) {
  const std::size_t n = PaddedLength(u.size(), pad_factor);
  const std::size_t offset = (n - u.size()) / 2;
  auto half = ForwardReal(u.samples(), n, offset);
  half[0] = 0.0;
  half[n / 2] = 0.0;  // Nyquist bin has no sign
  for (std::size_t k = 1; k < n / 2; ++k) half[k] *= std::complex<double>(0.0, -1.0);
  auto x = InverseReal(std::move(half), n);
  for (double& v : x) v /= static_cast<double>(n);
  return SampledSignal(std::move(x), u.dt(), u.start() - static_cast<double>(offset) * u.dt());
}

double HilbertPairing(const SampledSignal& u, const SampledSignal& y, int pad_factor) {
  RequireSameGrid(u, y);
  const std::size_t n = PaddedLength(u.size(), pad_factor);
  const auto uf = ForwardReal(u.samples(), n);
  const auto yf = ForwardReal(y.samples(), n);
  // Negative-frequency bins mirror the positive ones exactly.
  double sum = 0.0;
  for (std::size_t k = 1; k < n / 2; ++k) {
    sum += uf[k].real() * yf[k].imag() - uf[k].imag() * yf[k].real();
  }
  return 2.0 * sum * u.dt() / static_cast<double>(n);
}

double FrequencyDomainInnerProduct(const SampledSignal& u, const SampledSignal& y,
                                   int pad_factor) {
  RequireSameGrid(u, y);
  const std::size_t n = PaddedLength(u.size(), pad_factor);
  const auto uf = ForwardReal(u.samples(), n);
  const auto yf = ForwardReal(y.samples(), n);
  double sum = (uf[0] * std::conj(yf[0])).real() + (uf[n / 2] * std::conj(yf[n / 2])).real();
  for (std::size_t k = 1; k < n / 2; ++k) sum += 2.0 * (uf[k] * std::conj(yf[k])).real();
  return sum * u.dt() / static_cast<double>(n);
}

}  // namespace ssgraph
