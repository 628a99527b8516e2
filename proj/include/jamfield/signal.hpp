#pragma once

#include <cstdint>
#include <vector>

namespace jamfield {

struct SignalSpec {
  double carrier_freq = 25000.0;     // Hz
  double noise_bandwidth = 1000.0;   // Hz
  double modulation_depth = 1.0;     // (0, 1]
  uint64_t seed = 1;
};

struct SampledSignal {
  double sample_rate = 0.0;  // Hz
  double t0 = 0.0;           // seconds
  std::vector<double> samples;

  double duration() const {
    return sample_rate > 0.0 ? samples.size() / sample_rate : 0.0;
  }
};

double rms(const SampledSignal& s);
double mean(const SampledSignal& s);

// Zero-mean, unit-RMS noise band-limited to [0, bandwidth]. White Gaussian
// samples from a counter-based generator, shaped by a windowed-sinc lowpass;
// only the steady-state section of the convolution is kept.
SampledSignal gen_bandlimited_noise(double bandwidth_hz, double duration_s,
                                    double sample_rate_hz, uint64_t seed);

// s(t) = (1 + m n(t)) cos(2 pi f_c t). The envelope is resampled to fs_out
// when the rates differ (integer ratios only).
SampledSignal am_modulate(const SampledSignal& envelope, const SignalSpec& spec,
                          double fs_out);

// Instantaneous amplitude by quadrature (I/Q) demodulation at carrier_hz and
// lowpass smoothing at half the carrier.
SampledSignal envelope_of(const SampledSignal& s, double carrier_hz);

// Speech-shaped noise (100-4000 Hz) with on/off gating every word_duration;
// unit RMS over the voiced segments.
SampledSignal synth_speech(double duration_s, double sample_rate_hz,
                           double word_duration_s, uint64_t seed);

}  // namespace jamfield
