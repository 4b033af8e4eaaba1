#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ssgraph/signals.h"

namespace ssgraph {

/// Two-sided spectrum of a zero-padded signal, stored in FFT order. The
/// coefficients approximate the continuous transform
///   U(w) = integral u(t) exp(-j w t) dt
/// of the signal embedded on the whole time axis (zero outside its support).
struct Spectrum {
  std::vector<std::complex<double>> coefficients;
  double domega = 0.0;             // bin width, rad/s
  double dt = 0.0;                 // sample period of the padded grid
  double start = 0.0;              // time of padded sample 0
  std::size_t signal_length = 0;   // samples before padding

  std::size_t size() const { return coefficients.size(); }
  /// Angular frequency of bin k; bins past size()/2 are negative.
  double omega(std::size_t k) const;
};

inline constexpr int kDefaultPadFactor = 4;

/// Zero-padded DFT scaled by dt (and phase-shifted for start != 0).
Spectrum Fourier(const SampledSignal& u, int pad_factor = kDefaultPadFactor);

/// Inverse of Fourier back onto the padded time grid.
SampledSignal InverseFourier(const Spectrum& spectrum);

/// Hilbert transform of the embedded signal via the -j sgn(w) multiplier
/// (cos -> sin). The result lives on a symmetric extended grid of
/// pad_factor * size() samples centred on the input support, because the
/// transform of a causal signal is two-sided.
SampledSignal Hilbert(const SampledSignal& u, int pad_factor = kDefaultPadFactor);

/// The signed-phase pairing Pi(u, y). Computed in the frequency domain as
///   (1/2pi) integral Re{ j sgn(w) U(w) conj(Y(w)) } dw,
/// which for y = H u equals (1/pi) integral_0^inf Im{H(jw)} |U(w)|^2 dw. The
/// sign is fixed so that phase-lead systems pair positively. Equivalently
/// Pi(u, y) = <u, hilbert(y)> = -<hilbert(u), y>.
double HilbertPairing(const SampledSignal& u, const SampledSignal& y,
                      int pad_factor = kDefaultPadFactor);

/// <u, y> evaluated through Plancherel, (1/2pi) integral Re{U conj(Y)} dw.
double FrequencyDomainInnerProduct(const SampledSignal& u, const SampledSignal& y,
                                   int pad_factor = kDefaultPadFactor);

}  // namespace ssgraph
