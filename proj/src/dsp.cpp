#include "jamfield/dsp.hpp"

#include <cmath>
#include <cstdlib>

#include "jamfield/errors.hpp"

namespace jamfield {

double kaiser_i0(double x) {
  // Series for the zeroth-order modified Bessel function.
  double sum = 1.0, term = 1.0;
  const double q = x * x / 4.0;
  for (int k = 1; k < 64; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

std::vector<double> design_lowpass_fir(double cutoff_hz, double sample_rate_hz,
                                       int order, double kaiser_beta) {
  if (!(cutoff_hz > 0.0) || !(cutoff_hz < sample_rate_hz / 2.0))
    throw DomainError("FIR cutoff must lie in (0, fs/2)");
  if (order < 2) throw DomainError("FIR order too small");
  if (order % 2 != 0) ++order;  // keep linear phase with integer group delay
  const int n = order + 1;
  std::vector<double> taps(n);
  const double fc = cutoff_hz / sample_rate_hz;  // cycles per sample
  const double denom = kaiser_i0(kaiser_beta);
  const double mid = order / 2.0;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = i - mid;
    const double sinc =
        t == 0.0 ? 2.0 * fc : std::sin(2.0 * M_PI * fc * t) / (M_PI * t);
    const double r = t / mid;
    const double w = kaiser_i0(kaiser_beta * std::sqrt(std::max(0.0, 1.0 - r * r))) / denom;
    taps[i] = sinc * w;
    sum += taps[i];
  }
  for (auto& v : taps) v /= sum;  // unity DC gain
  return taps;
}

std::vector<double> fir_filter_same(const std::vector<double>& x,
                                    const std::vector<double>& taps) {
  const std::size_t n = x.size();
  const std::size_t m = taps.size();
  const std::ptrdiff_t delay = static_cast<std::ptrdiff_t>(m - 1) / 2;
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    const std::ptrdiff_t base = static_cast<std::ptrdiff_t>(i) + delay;
    const std::size_t k0 =
        base >= static_cast<std::ptrdiff_t>(n) ? base - (n - 1) : 0;
    const std::size_t k1 = std::min<std::size_t>(m, base + 1);
    for (std::size_t k = k0; k < k1; ++k) acc += taps[k] * x[base - k];
    y[i] = acc;
  }
  return y;
}

namespace {

SampledSignal upsample_int(const SampledSignal& s, int L) {
  const int half_input_span = 32;               // sinc support, input samples
  const int n_taps = 2 * half_input_span * L + 1;
  auto taps = design_lowpass_fir(0.45 * s.sample_rate, s.sample_rate * L,
                                 n_taps - 1, 10.0);
  SampledSignal out;
  out.sample_rate = s.sample_rate * L;
  out.t0 = s.t0;
  const std::size_t n_out = s.samples.size() * static_cast<std::size_t>(L);
  out.samples.resize(n_out, 0.0);
  const std::ptrdiff_t delay = (static_cast<std::ptrdiff_t>(n_taps) - 1) / 2;
  const std::ptrdiff_t n_in = static_cast<std::ptrdiff_t>(s.samples.size());
  for (std::size_t j = 0; j < n_out; ++j) {
    // y[j] = L * sum_k h[j + delay - k*L] * x[k]
    const std::ptrdiff_t base = static_cast<std::ptrdiff_t>(j) + delay;
    std::ptrdiff_t k_lo = (base - (n_taps - 1) + L - 1) / L;
    std::ptrdiff_t k_hi = base / L;
    k_lo = std::max<std::ptrdiff_t>(k_lo, 0);
    k_hi = std::min(k_hi, n_in - 1);
    double acc = 0.0;
    for (std::ptrdiff_t k = k_lo; k <= k_hi; ++k)
      acc += taps[base - k * L] * s.samples[k];
    out.samples[j] = L * acc;
  }
  return out;
}

SampledSignal downsample_int(const SampledSignal& s, int M) {
  const int n_taps = 64 * M + 1;
  auto taps =
      design_lowpass_fir(0.45 * s.sample_rate / M, s.sample_rate, n_taps - 1, 10.0);
  auto filtered = fir_filter_same(s.samples, taps);
  SampledSignal out;
  out.sample_rate = s.sample_rate / M;
  out.t0 = s.t0;
  out.samples.reserve(filtered.size() / M + 1);
  for (std::size_t i = 0; i < filtered.size(); i += M)
    out.samples.push_back(filtered[i]);
  return out;
}

}  // namespace

SampledSignal resample(const SampledSignal& s, double fs_out) {
  if (!(fs_out > 0.0)) throw DomainError("resample: output rate must be > 0");
  if (s.sample_rate == fs_out) return s;
  const double up = fs_out / s.sample_rate;
  const double down = s.sample_rate / fs_out;
  const double up_r = std::round(up);
  const double down_r = std::round(down);
  if (up >= 1.0 && std::fabs(up - up_r) < 1e-9)
    return upsample_int(s, static_cast<int>(up_r));
  if (down > 1.0 && std::fabs(down - down_r) < 1e-9)
    return downsample_int(s, static_cast<int>(down_r));
  throw DomainError("resample: only integer rate ratios are supported");
}

}  // namespace jamfield
