#pragma once

// Test-side oracles, written independently of the library's DSP path: a
// plain radix-2 FFT with a Hann window for band-power measurements, and a
// least-squares slope fit.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oracle {

inline void fft_inplace(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * M_PI / static_cast<double>(len);
    const std::complex<double> w0(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const auto u = a[i + k];
        const auto v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= w0;
      }
    }
  }
}

// Hann-windowed power spectrum; bin k covers frequency k * fs / nfft.
inline std::vector<double> periodogram(const std::vector<double>& x,
                                       std::size_t nfft) {
  std::vector<std::complex<double>> buf(nfft, {0.0, 0.0});
  const std::size_t n = std::min(x.size(), nfft);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / (n - 1));
    buf[i] = x[i] * w;
  }
  fft_inplace(buf);
  std::vector<double> p(nfft / 2 + 1);
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::norm(buf[k]);
  return p;
}

inline double band_power(const std::vector<double>& spectrum, double fs,
                         std::size_t nfft, double f_lo, double f_hi) {
  double acc = 0.0;
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const double f = static_cast<double>(k) * fs / static_cast<double>(nfft);
    if (f >= f_lo && f < f_hi) acc += spectrum[k];
  }
  return acc;
}

inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
