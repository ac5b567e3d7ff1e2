// Sample-rate conversion with a Kaiser-windowed sinc kernel evaluated on a
// rational phase grid. Deterministic: output depends only on input samples
// and the two rates.
#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "rale/common.hpp"

namespace rale::dsp {

namespace detail {

using rale::kPi;

/// Zeroth-order modified Bessel function of the first kind (power series).
inline double bessel_i0(double x) {
  const double half = x / 2.0;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 64; ++k) {
    const double r = half / k;
    term *= r * r;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

inline double kaiser(double frac, double beta) {
  if (frac <= -1.0 || frac >= 1.0) return 0.0;
  return bessel_i0(beta * std::sqrt(1.0 - frac * frac)) / bessel_i0(beta);
}

inline double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = kPi * x;
  return std::sin(px) / px;
}

}  // namespace detail

struct ResamplerDesign {
  double kaiser_beta = 8.6;   // ~90 dB stopband
  int taps_per_phase = 64;    // kernel support in output-period units
  double cutoff_scale = 0.95; // passband edge as a fraction of the narrower Nyquist
};

/// Converts `input` from src_rate to dst_rate.
///
/// The kernel is a low-pass windowed sinc whose support scales with the
/// decimation factor, so downsampling is band-limited below the target
/// Nyquist before the rate change. Equal rates are an exact identity.
inline std::vector<double> resample(const std::vector<double>& input, int src_rate,
                                    int dst_rate, const ResamplerDesign& design = {}) {
  if (src_rate < 1 || dst_rate < 1) {
    throw ValidationError("resample: rates must be >= 1 Hz");
  }
  if (src_rate == dst_rate || input.empty()) return input;

  const std::int64_t g = std::gcd(src_rate, dst_rate);
  const std::int64_t up = dst_rate / g;    // output samples per block
  const std::int64_t down = src_rate / g;  // input samples per block

  // scale < 1 when downsampling; stretches the kernel and lowers the cutoff.
  const double scale = std::min(1.0, static_cast<double>(dst_rate) / src_rate);
  const double cutoff = design.cutoff_scale * scale;
  const double half_width = design.taps_per_phase / (2.0 * scale);
  const int half_taps = static_cast<int>(std::ceil(half_width));

  // Output m sits at input position m*down/up = q + phase/up input samples;
  // only `up` distinct fractional phases exist, so the kernel is tabulated
  // once per phase (normalized to unit DC gain).
  const int taps = 2 * half_taps;
  std::vector<double> table(static_cast<std::size_t>(up) * taps);
  for (std::int64_t phase = 0; phase < up; ++phase) {
    const double frac = static_cast<double>(phase) / up;
    double* row = table.data() + static_cast<std::size_t>(phase) * taps;
    double sum = 0.0;
    for (int j = 0; j < taps; ++j) {
      const double x = (j - half_taps + 1) - frac;  // tap offset from the ideal point
      const double w = detail::kaiser(x / half_width, design.kaiser_beta);
      const double v = cutoff * detail::sinc(cutoff * x) * w;
      row[j] = v;
      sum += v;
    }
    if (sum != 0.0) {
      for (int j = 0; j < taps; ++j) row[j] /= sum;
    }
  }

  const std::int64_t in_len = static_cast<std::int64_t>(input.size());
  const std::int64_t out_len =
      static_cast<std::int64_t>(std::llround(static_cast<double>(in_len) * dst_rate / src_rate));
  std::vector<double> output(static_cast<std::size_t>(out_len));

  for (std::int64_t m = 0; m < out_len; ++m) {
    const std::int64_t num = m * down;
    const std::int64_t q = num / up;
    const std::int64_t phase = num % up;
    const double* row = table.data() + static_cast<std::size_t>(phase) * taps;
    double acc = 0.0;
    const std::int64_t first = q - half_taps + 1;
    for (int j = 0; j < taps; ++j) {
      const std::int64_t n = first + j;
      if (n < 0 || n >= in_len) continue;
      acc += row[j] * input[static_cast<std::size_t>(n)];
    }
    output[static_cast<std::size_t>(m)] = acc;
  }
  return output;
}

}  // namespace rale::dsp
