// Band-limiting for respiratory cycles at the working rate. Realized as a
// 4th-order Butterworth high-pass at the lower edge plus, when the upper
// edge lies below Nyquist, a 4th-order Butterworth low-pass. At the default
// 100-2000 Hz band and 4 kHz rate the upper edge sits exactly at Nyquist and
// the low-pass half drops out.
#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "rale/common.hpp"

namespace rale::dsp {

namespace detail {
using rale::kPi;
}

struct Biquad {
  double b0, b1, b2, a1, a2;

  void apply_in_place(std::vector<double>& x) const {
    double z1 = 0.0;
    double z2 = 0.0;  // transposed direct form II state
    for (double& v : x) {
      const double in = v;
      const double out = b0 * in + z1;
      z1 = b1 * in - a1 * out + z2;
      z2 = b2 * in - a2 * out;
      v = out;
    }
  }
};

namespace detail {

inline Biquad butterworth_section(double cutoff_hz, double sample_rate_hz, double q,
                                  bool highpass) {
  const double w0 = 2.0 * kPi * cutoff_hz / sample_rate_hz;
  const double cw = std::cos(w0);
  const double sw = std::sin(w0);
  const double alpha = sw / (2.0 * q);
  const double a0 = 1.0 + alpha;
  if (highpass) {
    const double b = (1.0 + cw) / 2.0;
    return Biquad{b / a0, -2.0 * b / a0, b / a0, (-2.0 * cw) / a0, (1.0 - alpha) / a0};
  }
  const double b = (1.0 - cw) / 2.0;
  return Biquad{b / a0, 2.0 * b / a0, b / a0, (-2.0 * cw) / a0, (1.0 - alpha) / a0};
}

}  // namespace detail

/// 4th-order Butterworth as two cascaded biquads, Q = 0.5412 / 1.3066.
inline std::array<Biquad, 2> design_butterworth4(double cutoff_hz, double sample_rate_hz,
                                                 bool highpass) {
  if (cutoff_hz <= 0.0 || cutoff_hz >= sample_rate_hz / 2.0) {
    throw ValidationError("design_butterworth4: cutoff must lie inside (0, Nyquist)");
  }
  const double q1 = 1.0 / (2.0 * std::cos(detail::kPi / 8.0));
  const double q2 = 1.0 / (2.0 * std::cos(3.0 * detail::kPi / 8.0));
  return {detail::butterworth_section(cutoff_hz, sample_rate_hz, q1, highpass),
          detail::butterworth_section(cutoff_hz, sample_rate_hz, q2, highpass)};
}

inline std::vector<double> bandpass(std::vector<double> x, double band_low_hz,
                                    double band_high_hz, double sample_rate_hz) {
  if (band_low_hz >= band_high_hz) {
    throw ValidationError("bandpass: band_low must be below band_high");
  }
  if (band_high_hz > sample_rate_hz / 2.0 + 1e-9) {
    throw ValidationError("bandpass: band_high exceeds Nyquist");
  }
  for (const Biquad& s : design_butterworth4(band_low_hz, sample_rate_hz, true)) {
    s.apply_in_place(x);
  }
  if (band_high_hz < sample_rate_hz / 2.0 - 1e-9) {
    for (const Biquad& s : design_butterworth4(band_high_hz, sample_rate_hz, false)) {
      s.apply_in_place(x);
    }
  }
  return x;
}

}  // namespace rale::dsp
