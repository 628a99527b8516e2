#include "jamfield/signal.hpp"

#include <cmath>

#include "jamfield/dsp.hpp"
#include "jamfield/errors.hpp"
#include "jamfield/rng.hpp"

namespace jamfield {

double rms(const SampledSignal& s) {
  if (s.samples.empty()) return 0.0;
  double acc = 0.0;
  for (double v : s.samples) acc += v * v;
  return std::sqrt(acc / s.samples.size());
}

double mean(const SampledSignal& s) {
  if (s.samples.empty()) return 0.0;
  double acc = 0.0;
  for (double v : s.samples) acc += v;
  return acc / s.samples.size();
}

SampledSignal gen_bandlimited_noise(double bandwidth_hz, double duration_s,
                                    double sample_rate_hz, uint64_t seed) {
  if (!(duration_s > 0.0)) throw DomainError("noise duration must be > 0");
  if (!(sample_rate_hz > 2.0 * bandwidth_hz))
    throw DomainError("noise sample rate must exceed twice the bandwidth");
  if (!(bandwidth_hz > 0.0)) throw DomainError("noise bandwidth must be > 0");

  // Order 512 at 48 kHz; scaled with the rate so the transition width stays
  // fixed in hertz.
  const int order =
      512 * std::max(1, static_cast<int>(std::lround(sample_rate_hz / 48000.0)));
  const auto taps = design_lowpass_fir(0.75 * bandwidth_hz, sample_rate_hz,
                                       order, 10.0);
  const std::size_t n =
      static_cast<std::size_t>(std::lround(duration_s * sample_rate_hz));
  const std::size_t pad = taps.size();
  CounterRng rng(seed, /*stream=*/0xba5eba11u);
  std::vector<double> white(n + 2 * pad);
  for (std::size_t i = 0; i < white.size(); ++i) white[i] = rng.gaussian(i);

  auto shaped = fir_filter_same(white, taps);
  SampledSignal out;
  out.sample_rate = sample_rate_hz;
  out.samples.assign(shaped.begin() + pad, shaped.begin() + pad + n);

  double m = 0.0;
  for (double v : out.samples) m += v;
  m /= out.samples.size();
  double p = 0.0;
  for (auto& v : out.samples) {
    v -= m;
    p += v * v;
  }
  const double scale = 1.0 / std::sqrt(p / out.samples.size());
  for (auto& v : out.samples) v *= scale;
  return out;
}

SampledSignal am_modulate(const SampledSignal& envelope, const SignalSpec& spec,
                          double fs_out) {
  if (!(fs_out > 2.0 * (spec.carrier_freq + spec.noise_bandwidth)))
    throw DomainError("am_modulate: fs_out below Nyquist for carrier + bandwidth");
  if (!(spec.modulation_depth > 0.0) || spec.modulation_depth > 1.0)
    throw DomainError("am_modulate: modulation depth must lie in (0, 1]");
  SampledSignal env =
      envelope.sample_rate == fs_out ? envelope : resample(envelope, fs_out);
  SampledSignal out;
  out.sample_rate = fs_out;
  out.t0 = env.t0;
  out.samples.resize(env.samples.size());
  const double w = 2.0 * M_PI * spec.carrier_freq / fs_out;
  const double m = spec.modulation_depth;
  for (std::size_t i = 0; i < env.samples.size(); ++i)
    out.samples[i] = (1.0 + m * env.samples[i]) * std::cos(w * i);
  return out;
}

SampledSignal envelope_of(const SampledSignal& s, double carrier_hz) {
  if (!(carrier_hz > 0.0)) throw DomainError("envelope_of: carrier must be > 0");
  if (!(s.sample_rate > 2.0 * carrier_hz))
    throw DomainError("envelope_of: signal sampled below Nyquist for the carrier");
  const double fs = s.sample_rate;
  const std::size_t n = s.samples.size();
  std::vector<double> i_arm(n), q_arm(n);
  const double w = 2.0 * M_PI * carrier_hz / fs;
  for (std::size_t k = 0; k < n; ++k) {
    i_arm[k] = s.samples[k] * std::cos(w * k);
    q_arm[k] = -s.samples[k] * std::sin(w * k);
  }
  // Smooth below half the carrier; rejects the 2 f_c image.
  int order = static_cast<int>(std::lround(12.0 * fs / carrier_hz));
  order = std::max(order, 32);
  const auto taps = design_lowpass_fir(0.5 * carrier_hz, fs, order, 10.0);
  auto i_lp = fir_filter_same(i_arm, taps);
  auto q_lp = fir_filter_same(q_arm, taps);
  SampledSignal out;
  out.sample_rate = fs;
  out.t0 = s.t0;
  out.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    out.samples[k] = 2.0 * std::hypot(i_lp[k], q_lp[k]);
  return out;
}

SampledSignal synth_speech(double duration_s, double sample_rate_hz,
                           double word_duration_s, uint64_t seed) {
  if (!(word_duration_s > 0.0)) throw DomainError("word duration must be > 0");
  auto base = gen_bandlimited_noise(4000.0, duration_s, sample_rate_hz, seed);
  // Remove content below ~100 Hz: subtract a lowpassed copy.
  const auto lp_taps = design_lowpass_fir(100.0, sample_rate_hz, 1024, 8.0);
  auto low = fir_filter_same(base.samples, lp_taps);
  for (std::size_t i = 0; i < base.samples.size(); ++i) base.samples[i] -= low[i];

  const std::size_t word = static_cast<std::size_t>(
      std::max<double>(1.0, std::lround(word_duration_s * sample_rate_hz)));
  double voiced_power = 0.0;
  std::size_t voiced_count = 0;
  for (std::size_t i = 0; i < base.samples.size(); ++i) {
    const bool on = ((i / word) % 2) == 0;
    if (!on) {
      base.samples[i] = 0.0;
    } else {
      voiced_power += base.samples[i] * base.samples[i];
      ++voiced_count;
    }
  }
  if (voiced_count > 0) {
    const double scale = 1.0 / std::sqrt(voiced_power / voiced_count);
    for (auto& v : base.samples) v *= scale;
  }
  return base;
}

}  // namespace jamfield
