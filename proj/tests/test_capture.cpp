#include <cmath>

#include "doctest.h"
#include "support/oracles.hpp"

#include "jamfield/capture.hpp"
#include "jamfield/errors.hpp"
#include "jamfield/field.hpp"
#include "jamfield/metrics.hpp"
#include "jamfield/rng.hpp"
#include "jamfield/signal.hpp"
#include "jamfield/util.hpp"

using namespace jamfield;

namespace {

SampledSignal am_jam(double amp, double m, double dur, uint64_t seed) {
  const auto n = gen_bandlimited_noise(1000.0, dur, 48000.0, seed);
  SignalSpec spec;
  spec.modulation_depth = m;
  auto s = am_modulate(n, spec, 192000.0);
  for (auto& v : s.samples) v *= amp;
  return s;
}

double ac_power(const SampledSignal& s, std::size_t trim) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = trim; i + trim < s.samples.size(); ++i) {
    sum += s.samples[i];
    ++count;
  }
  const double dc = sum / count;
  double acc = 0.0;
  for (std::size_t i = trim; i + trim < s.samples.size(); ++i)
    acc += (s.samples[i] - dc) * (s.samples[i] - dc);
  return acc / count;
}

}  // namespace

TEST_CASE("nonlinear transform is the pointwise polynomial") {
  MicrophoneModel linear;
  linear.a2 = 0.0;
  linear.a3 = 0.0;
  SampledSignal s;
  s.sample_rate = 48000.0;
  s.samples = {0.1, -0.5, 1.0, 0.0};
  const auto out = nonlinear_transform(linear, s);
  for (std::size_t i = 0; i < s.samples.size(); ++i)
    CHECK(out.samples[i] == s.samples[i]);

  MicrophoneModel quad;
  quad.a1 = 1.0;
  quad.a2 = 0.1;
  quad.a3 = 0.0;
  SampledSignal dc;
  dc.sample_rate = 48000.0;
  dc.samples = {1.0};
  CHECK(nonlinear_transform(quad, dc).samples[0] == doctest::Approx(1.1));
}

TEST_CASE("square law doubles to exactly 4x") {
  MicrophoneModel sq;
  sq.a1 = 0.0;
  sq.a2 = 0.3;
  sq.a3 = 0.0;
  SampledSignal s;
  s.sample_rate = 48000.0;
  s.samples = {0.25, -0.5};
  const auto once = nonlinear_transform(sq, s);
  for (auto& v : s.samples) v *= 2.0;
  const auto twice = nonlinear_transform(sq, s);
  for (std::size_t i = 0; i < s.samples.size(); ++i)
    CHECK(twice.samples[i] == doctest::Approx(4.0 * once.samples[i]).epsilon(1e-12));
}

TEST_CASE("lowpass filter contracts") {
  const double fs = 192000.0;
  SampledSignal tone;
  tone.sample_rate = fs;
  tone.samples.resize(48000);

  // 25 kHz through a 20 kHz cutoff: residual at least 60 dB down
  for (std::size_t i = 0; i < tone.samples.size(); ++i)
    tone.samples[i] = std::cos(2.0 * M_PI * 25000.0 * i / fs);
  const auto stop = lowpass_filter(tone, 20000.0);
  CHECK(10.0 * std::log10(ac_power(stop, 4096) / 0.5) <= -60.0);

  // 1 kHz passes within 0.5 dB
  for (std::size_t i = 0; i < tone.samples.size(); ++i)
    tone.samples[i] = std::cos(2.0 * M_PI * 1000.0 * i / fs);
  const auto pass = lowpass_filter(tone, 20000.0);
  CHECK(std::fabs(10.0 * std::log10(ac_power(pass, 4096) / 0.5)) <= 0.5);

  CHECK_THROWS_AS(lowpass_filter(tone, 96000.0), DomainError);
}

TEST_CASE("lowpass magnitude matches the design per third-octave band") {
  // White input through the filter; periodogram oracle against the designed
  // response measured on a unit impulse.
  const double fs = 96000.0;
  CounterRng rng(99, 5);
  SampledSignal white;
  white.sample_rate = fs;
  white.samples.resize(1 << 17);
  for (std::size_t i = 0; i < white.samples.size(); ++i)
    white.samples[i] = rng.gaussian(i);
  const auto filtered = lowpass_filter(white, 10000.0);

  SampledSignal impulse;
  impulse.sample_rate = fs;
  impulse.samples.assign(1 << 17, 0.0);
  impulse.samples[1 << 16] = 1.0;
  const auto h = lowpass_filter(impulse, 10000.0);

  const std::size_t nfft = 1 << 17;
  const auto pf = oracle::periodogram(filtered.samples, nfft);
  const auto pw = oracle::periodogram(white.samples, nfft);
  std::vector<std::complex<double>> hh(nfft, 0.0);
  for (std::size_t i = 0; i < h.samples.size(); ++i) hh[i] = h.samples[i];
  oracle::fft_inplace(hh);

  // third-octave centers inside the passband
  for (double fc = 100.0; fc < 9000.0; fc *= std::pow(2.0, 1.0 / 3.0)) {
    const double lo = fc / std::pow(2.0, 1.0 / 6.0);
    const double hi = fc * std::pow(2.0, 1.0 / 6.0);
    const double out_band = oracle::band_power(pf, fs, nfft, lo, hi);
    const double in_band = oracle::band_power(pw, fs, nfft, lo, hi);
    double href = 0.0;
    int count = 0;
    for (std::size_t k = 0; k < nfft / 2; ++k) {
      const double f = static_cast<double>(k) * fs / nfft;
      if (f >= lo && f < hi) {
        href += std::norm(hh[k]);
        ++count;
      }
    }
    href /= count;
    const double measured_db = 10.0 * std::log10(out_band / in_band);
    const double designed_db = 10.0 * std::log10(href);
    CHECK(std::fabs(measured_db - designed_db) <= 1.0);
  }
}

TEST_CASE("linear mic leaks nothing from pure ultrasound") {
  MicrophoneModel linear = mic_profile("linear");
  const auto jam = am_jam(1.0, 1.0, 0.5, 21);
  const auto rec = capture_recording(linear, jam, 7);
  const double power_db = 10.0 * std::log10(ac_power(rec.audio, 2048));
  CHECK(power_db <= linear.noise_floor_db + 1.0);
}

TEST_CASE("quadratic capture stays within twice the noise bandwidth") {
  MicrophoneModel mic;
  const auto jam = am_jam(0.5, 1.0, 0.5, 22);
  const auto rec = capture_recording(mic, jam, 3);
  const std::size_t nfft = 16384;
  std::vector<double> ac(rec.audio.samples.begin() + 2048,
                         rec.audio.samples.end() - 2048);
  double dc = 0.0;
  for (double v : ac) dc += v;
  dc /= ac.size();
  for (auto& v : ac) v -= dc;
  const auto p = oracle::periodogram(ac, nfft);
  const double fs = mic.fs_record;
  const double in_band = oracle::band_power(p, fs, nfft, 0.0, 2000.0);
  const double above = oracle::band_power(p, fs, nfft, 2500.0, 24000.0);
  CHECK(above / in_band < 0.01);
}

TEST_CASE("doubling incident amplitude raises recorded power 12.04 dB") {
  MicrophoneModel mic;
  mic.a1 = 0.0;  // isolate the square-law path
  mic.a3 = 0.0;
  mic.noise_floor_db = -140.0;
  const auto rec1 = capture_recording(mic, am_jam(0.25, 1.0, 0.5, 9), 1);
  const auto rec2 = capture_recording(mic, am_jam(0.5, 1.0, 0.5, 9), 1);
  const double diff = 10.0 * std::log10(ac_power(rec2.audio, 2048) /
                                        ac_power(rec1.audio, 2048));
  CHECK(diff == doctest::Approx(12.04).epsilon(0.017));
}

TEST_CASE("recorded jam power follows a slope-2 dB law (regression oracle)") {
  MicrophoneModel mic;
  mic.a3 = 0.0;
  mic.noise_floor_db = -140.0;
  std::vector<double> x_db, y_db;
  for (double rel = 0.0; rel <= 20.0; rel += 4.0) {
    const double amp = 0.05 * std::pow(10.0, rel / 20.0);
    const auto rec = capture_recording(mic, am_jam(amp, 1.0, 0.4, 17), 2);
    x_db.push_back(20.0 * std::log10(amp));
    y_db.push_back(10.0 * std::log10(ac_power(rec.audio, 2048)));
  }
  CHECK(oracle::fit_slope(x_db, y_db) == doctest::Approx(2.0).epsilon(0.025));
}

TEST_CASE("linear speech path has slope 1") {
  MicrophoneModel mic;
  mic.noise_floor_db = -140.0;
  std::vector<double> x_db, y_db;
  for (double rel = 0.0; rel <= 20.0; rel += 5.0) {
    const double amp = 0.001 * std::pow(10.0, rel / 20.0);
    auto speech = synth_speech(0.5, 192000.0, 0.1, 23);
    for (auto& v : speech.samples) v *= amp;
    const auto rec = capture_recording(mic, speech, 2);
    x_db.push_back(20.0 * std::log10(amp));
    y_db.push_back(10.0 * std::log10(ac_power(rec.audio, 2048)));
  }
  CHECK(oracle::fit_slope(x_db, y_db) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("analytic baseband jam power matches the time-domain pipeline") {
  // Closed form from the a2 term: power = (a2 A^2)^2 (m^2 E[n^2] +
  // m^4/4 Var(n^2)), moments taken from the actual noise sequence.
  MicrophoneModel mic;
  mic.a1 = 0.0;
  mic.a3 = 0.0;
  mic.noise_floor_db = -140.0;
  const double amp = 0.4;
  for (double m : {0.2, 0.5}) {
    const auto n = gen_bandlimited_noise(1000.0, 0.5, 48000.0, 31);
    SignalSpec spec;
    spec.modulation_depth = m;
    auto jam = am_modulate(n, spec, 192000.0);
    for (auto& v : jam.samples) v *= amp;
    const auto rec = capture_recording(mic, jam, 4);
    const double measured_db = 10.0 * std::log10(ac_power(rec.audio, 2048));

    double e2 = 0.0, e4 = 0.0;
    for (double v : n.samples) {
      e2 += v * v;
      e4 += v * v * v * v;
    }
    e2 /= n.samples.size();
    e4 /= n.samples.size();
    const double var_n2 = e4 - e2 * e2;
    const double analytic = std::pow(mic.a2 * amp * amp, 2.0) *
                            (m * m * e2 + m * m * m * m / 4.0 * var_n2);
    CHECK(std::fabs(measured_db - 10.0 * std::log10(analytic)) <= 0.5);
  }
}

TEST_CASE("no aliasing above the mic lowpass in recordings") {
  MicrophoneModel mic;
  for (uint64_t seed : {1, 2}) {
    const auto rec = capture_recording(mic, am_jam(0.7, 1.0, 0.3, seed), seed);
    const std::size_t nfft = 8192;
    const auto p = oracle::periodogram(rec.audio.samples, nfft);
    const double total = oracle::band_power(p, mic.fs_record, nfft, 0.0, 24000.0);
    const double above =
        oracle::band_power(p, mic.fs_record, nfft, mic.lpf_cutoff * 1.05, 24000.0);
    CHECK(10.0 * std::log10(above / total) <= -60.0);
  }
}

TEST_CASE("mix_and_record reduces to each leg") {
  MicrophoneModel mic;
  mic.noise_floor_db = -140.0;
  const auto jam = am_jam(0.3, 1.0, 0.25, 6);
  SampledSignal zero;
  zero.sample_rate = 192000.0;
  zero.samples.assign(jam.samples.size(), 0.0);

  // zero speech: identical to capturing the jam alone
  const auto mixed = mix_and_record(mic, jam, zero, 12);
  const auto direct = capture_recording(mic, jam, 12);
  REQUIRE(mixed.audio.samples.size() == direct.audio.samples.size());
  for (std::size_t i = 0; i < mixed.audio.samples.size(); i += 777)
    CHECK(mixed.audio.samples[i] ==
          doctest::Approx(direct.audio.samples[i]).epsilon(1e-12));

  // zero jam with a linear mic: a1 * speech within filter tolerance
  auto speech = synth_speech(0.25, 192000.0, 0.1, 5);
  for (auto& v : speech.samples) v *= 0.01;
  MicrophoneModel lin = mic_profile("linear");
  lin.noise_floor_db = -140.0;
  SampledSignal zero2 = zero;
  zero2.samples.resize(speech.samples.size(), 0.0);
  const auto only_speech = mix_and_record(lin, zero2, speech, 11);
  const auto speech_direct = capture_recording(lin, speech, 11);
  const double p_mix = ac_power(only_speech.audio, 2048);
  const double p_direct = ac_power(speech_direct.audio, 2048);
  CHECK(p_mix == doctest::Approx(p_direct).epsilon(1e-9));

  CHECK_THROWS_AS(mix_and_record(mic, jam, SampledSignal{48000.0, 0.0, {0.0}}, 1),
                  DomainError);
}

TEST_CASE("recorded jam beats recorded speech on axis (end-to-end oracle)") {
  // Bench geometry: backdoor_3x3, boresight mic at 1 m, speech at the jammer.
  Scenario s = make_bench_scenario(PresetId::backdoor_3x3, 0.0);
  const FieldPoint f = field_at_point(s, s.mics[0].pose.position);
  const double jam_amp = std::sqrt(f.total_power_linear());
  const auto jam = am_jam(jam_amp, 1.0, 0.5, 41);

  MicrophoneModel full;
  full.noise_floor_db = -140.0;
  auto speech = synth_speech(0.5, 192000.0, 0.4, 42);
  const double r = (s.mics[0].pose.position - s.speech->position).norm();
  const double speech_amp =
      amplitude_from_spl(s.speech->level_dba_at_1m - 20.0 * std::log10(r));
  for (auto& v : speech.samples) v *= speech_amp;

  const auto jam_rec = capture_recording(full, jam, 1);
  MicrophoneModel speech_only = full;
  speech_only.a2 = 0.0;
  speech_only.a3 = 0.0;
  const auto speech_rec = capture_recording(speech_only, speech, 1);
  const double jam_db = 10.0 * std::log10(ac_power(jam_rec.audio, 2048));
  const double speech_db = 10.0 * std::log10(ac_power(speech_rec.audio, 2048));
  CHECK(jam_db > speech_db);
}

TEST_CASE("occlusion arithmetic") {
  Occlusion none{"none", 0.0, 0.0};
  SampledSignal jam;
  jam.sample_rate = 48000.0;
  jam.samples = {1.0, -1.0};
  SampledSignal speech = jam;
  apply_occlusion(none, &jam, &speech);
  CHECK(jam.samples[0] == 1.0);
  CHECK(speech.samples[0] == 1.0);

  const Occlusion tshirt = occlusion_by_name("tshirt");
  CHECK(tshirt.atten_audible_db == 1.0);
  CHECK(tshirt.atten_ultrasonic_db == 2.0);
  apply_occlusion(tshirt, &jam, &speech);
  // incident jam-to-speech ratio changes by exactly -(2 - 1) = -1 dB
  const double delta_db = 20.0 * std::log10(jam.samples[0] / speech.samples[0]);
  CHECK(delta_db == doctest::Approx(-1.0).epsilon(1e-9));

  const Occlusion box = occlusion_by_name("paper_box");
  CHECK(box.atten_ultrasonic_db > box.atten_audible_db);  // jam drops more
}

TEST_CASE("occlusion table loads from JSON and rejects bad keys") {
  const auto table = occlusion_table_from_json(
      R"([{"name": "foam", "atten_audible_db": 3.0, "atten_ultrasonic_db": 9.0}])");
  REQUIRE(table.size() == 1);
  CHECK(table[0].name == "foam");
  CHECK_THROWS_AS(occlusion_table_from_json(
                      R"([{"name": "x", "atten_audible_db": 1.0, "oops": 2}])"),
                  SchemaError);
  CHECK_THROWS_AS(occlusion_table_from_json("{}"), SchemaError);
}

TEST_CASE("capture rejects too-low incident rates") {
  MicrophoneModel mic;
  SampledSignal s;
  s.sample_rate = 32000.0;
  s.samples.assign(3200, 0.0);
  CHECK_THROWS_AS(capture_recording(mic, s, 0), DomainError);
}

TEST_CASE("mic profiles") {
  CHECK(mic_profile("default").a2 == doctest::Approx(0.5));
  CHECK(mic_profile("mi6").a2 > mic_profile("default").a2);
  CHECK(mic_profile("linear").a2 == 0.0);
  CHECK_THROWS_AS(mic_profile("nokia3310"), SchemaError);
}
