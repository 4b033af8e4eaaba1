#include "ssgraph/signals.h"

#include <cmath>
#include <sstream>

#include "ssgraph/errors.h"

namespace ssgraph {

SampledSignal::SampledSignal(std::vector<double> samples, double dt, double start)
    : samples_(std::move(samples)), dt_(dt), start_(start) {
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
    throw ParameterError("sample period must be positive and finite");
  }
  if (!std::isfinite(start_)) throw ParameterError("signal start time must be finite");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i])) {
      throw ParameterError("non-finite sample at index " + std::to_string(i));
    }
  }
}

SampledSignal SampledSignal::Zeros(std::size_t size, double dt, double start) {
  return SampledSignal(std::vector<double>(size, 0.0), dt, start);
}

SampledSignal SampledSignal::FromFunction(std::size_t size, double dt,
                                          const std::function<double(double)>& f,
                                          double start) {
  std::vector<double> v(size);
  for (std::size_t i = 0; i < size; ++i) v[i] = f(start + static_cast<double>(i) * dt);
  return SampledSignal(std::move(v), dt, start);
}

bool SampledSignal::IsZero() const {
  for (double x : samples_) {
    if (x != 0.0) return false;
  }
  return true;
}

SampledSignal SampledSignal::ZeroExtended(std::size_t size) const {
  std::vector<double> v = samples_;
  if (v.size() < size) v.resize(size, 0.0);
  return SampledSignal(std::move(v), dt_, start_);
}

SampledSignal SampledSignal::Truncated(std::size_t size) const {
  std::vector<double> v(samples_.begin(),
                        samples_.begin() + static_cast<std::ptrdiff_t>(std::min(size, samples_.size())));
  return SampledSignal(std::move(v), dt_, start_);
}

SampledSignal SampledSignal::Scaled(double factor) const {
  std::vector<double> v(samples_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = factor * samples_[i];
  return SampledSignal(std::move(v), dt_, start_);
}

SampledSignal operator+(const SampledSignal& a, const SampledSignal& b) {
  RequireSameGrid(a, b);
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.samples_[i] + b.samples_[i];
  return SampledSignal(std::move(v), a.dt_, a.start_);
}

SampledSignal operator-(const SampledSignal& a, const SampledSignal& b) {
  RequireSameGrid(a, b);
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.samples_[i] - b.samples_[i];
  return SampledSignal(std::move(v), a.dt_, a.start_);
}

void RequireSameGrid(const SampledSignal& a, const SampledSignal& b) {
  if (a.size() != b.size() || a.dt() != b.dt() || a.start() != b.start()) {
    std::ostringstream msg;
    msg << "grid mismatch: (n=" << a.size() << ", dt=" << a.dt() << ", start=" << a.start()
        << ") vs (n=" << b.size() << ", dt=" << b.dt() << ", start=" << b.start() << ")";
    throw GridMismatchError(msg.str());
  }
}

double InnerProduct(const SampledSignal& u, const SampledSignal& y) {
  RequireSameGrid(u, y);
  double sum = 0.0;
  const auto a = u.samples();
  const auto b = y.samples();
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum * u.dt();
}

double Norm(const SampledSignal& u) { return std::sqrt(InnerProduct(u, u)); }

double TailEnergyFraction(const SampledSignal& u, double tail) {
  const std::size_t n = u.size();
  const auto tail_samples = static_cast<std::size_t>(std::ceil(tail * static_cast<double>(n)));
  double total = 0.0;
  double in_tail = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = u[i] * u[i];
    total += e;
    if (i + tail_samples >= n) in_tail += e;
  }
  return total > 0.0 ? in_tail / total : 0.0;
}

}  // namespace ssgraph
