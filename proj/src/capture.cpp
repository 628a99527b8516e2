#include "jamfield/capture.hpp"

#include <cmath>

#include "vendor_json.hpp"

#include "jamfield/dsp.hpp"
#include "jamfield/errors.hpp"
#include "jamfield/rng.hpp"
#include "jamfield/util.hpp"

namespace jamfield {

MicrophoneModel mic_profile(const std::string& name) {
  MicrophoneModel m;
  if (name == "default") return m;
  if (name == "mi6") {
    m.a2 = 1.0;  // more sensitive to jamming than the default profile
    return m;
  }
  if (name == "linear") {
    m.a2 = 0.0;
    m.a3 = 0.0;
    return m;
  }
  throw SchemaError("unknown microphone profile: " + name);
}

const std::vector<Occlusion>& default_occlusion_table() {
  static const std::vector<Occlusion> table = {
      {"zipbag", 0.5, 1.0},  {"tissue", 0.5, 1.0},      {"tshirt", 1.0, 2.0},
      {"a4paper", 2.0, 6.0}, {"plastic_case", 6.0, 12.0}, {"paper_box", 8.0, 14.0},
  };
  return table;
}

Occlusion occlusion_by_name(const std::string& name) {
  for (const auto& o : default_occlusion_table())
    if (o.name == name) return o;
  throw SchemaError("unknown occlusion: " + name);
}

std::vector<Occlusion> occlusion_table_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const std::exception& e) {
    throw SchemaError(std::string("occlusion table: ") + e.what());
  }
  if (!j.is_array()) throw SchemaError("occlusion table must be a JSON array");
  std::vector<Occlusion> out;
  for (const auto& item : j) {
    for (auto it = item.begin(); it != item.end(); ++it) {
      if (it.key() != "name" && it.key() != "atten_audible_db" &&
          it.key() != "atten_ultrasonic_db")
        throw SchemaError("occlusion table: unknown key '" + it.key() + "'");
    }
    Occlusion o;
    o.name = item.at("name").get<std::string>();
    o.atten_audible_db = item.at("atten_audible_db").get<double>();
    o.atten_ultrasonic_db = item.at("atten_ultrasonic_db").get<double>();
    if (o.atten_audible_db < 0.0 || o.atten_ultrasonic_db < 0.0)
      throw SchemaError("occlusion attenuations must be >= 0");
    out.push_back(std::move(o));
  }
  return out;
}

SampledSignal nonlinear_transform(const MicrophoneModel& mic,
                                  const SampledSignal& s) {
  SampledSignal out = s;
  for (auto& v : out.samples) {
    const double x = v;
    v = mic.a1 * x + mic.a2 * x * x + mic.a3 * x * x * x;
  }
  return out;
}

SampledSignal lowpass_filter(const SampledSignal& s, double cutoff_hz) {
  if (!(cutoff_hz < s.sample_rate / 2.0))
    throw DomainError("lowpass cutoff must be below Nyquist");
  // Order 1024 at 192 kHz, scaled with rate; Kaiser beta 12 gives ~-120 dB
  // stopband so pure ultrasound leaks below the recorder noise floor.
  const int order = std::max(
      256, 1024 * static_cast<int>(std::lround(s.sample_rate / 192000.0)));
  const auto taps = design_lowpass_fir(cutoff_hz, s.sample_rate, order, 12.0);
  SampledSignal out;
  out.sample_rate = s.sample_rate;
  out.t0 = s.t0;
  out.samples = fir_filter_same(s.samples, taps);
  return out;
}

Recording capture_recording(const MicrophoneModel& mic,
                            const SampledSignal& incident, uint64_t noise_seed) {
  if (!(incident.sample_rate > 2.0 * mic.lpf_cutoff))
    throw DomainError("capture: incident rate too low for the mic lowpass");
  auto shaped = nonlinear_transform(mic, incident);
  auto filtered = lowpass_filter(shaped, mic.lpf_cutoff);
  auto recorded = resample(filtered, mic.fs_record);
  const double noise_rms = std::pow(10.0, mic.noise_floor_db / 20.0);
  CounterRng rng(noise_seed, /*stream=*/0x0c0ffeeUL);
  for (std::size_t i = 0; i < recorded.samples.size(); ++i)
    recorded.samples[i] += noise_rms * rng.gaussian(i);
  Recording rec;
  rec.audio = std::move(recorded);
  rec.seed = noise_seed;
  return rec;
}

Recording mix_and_record(const MicrophoneModel& mic, const SampledSignal& jam,
                         const SampledSignal& speech, uint64_t noise_seed) {
  if (jam.sample_rate != speech.sample_rate)
    throw DomainError("mix_and_record: incident sample rates differ");
  SampledSignal sum;
  sum.sample_rate = jam.sample_rate;
  sum.t0 = jam.t0;
  const std::size_t n = std::max(jam.samples.size(), speech.samples.size());
  sum.samples.resize(n, 0.0);
  for (std::size_t i = 0; i < jam.samples.size(); ++i) sum.samples[i] += jam.samples[i];
  for (std::size_t i = 0; i < speech.samples.size(); ++i)
    sum.samples[i] += speech.samples[i];
  return capture_recording(mic, sum, noise_seed);
}

void apply_occlusion(const Occlusion& occ, SampledSignal* jam,
                     SampledSignal* speech) {
  if (jam) {
    const double g = std::pow(10.0, -occ.atten_ultrasonic_db / 20.0);
    for (auto& v : jam->samples) v *= g;
  }
  if (speech) {
    const double g = std::pow(10.0, -occ.atten_audible_db / 20.0);
    for (auto& v : speech->samples) v *= g;
  }
}

double recorded_jam_power_db(const MicrophoneModel& mic, double m,
                             double incident_power_db) {
  // Baseband AC terms of a2 * [A (1 + m n) cos]^2 for Gaussian unit-RMS n:
  // power (a2 A^2)^2 (m^2 + m^4 / 2).
  const double kappa = m * m + 0.5 * m * m * m * m;
  return 20.0 * std::log10(mic.a2) + 2.0 * incident_power_db +
         10.0 * std::log10(kappa);
}

double recorded_speech_power_db(const MicrophoneModel& mic,
                                double incident_power_db) {
  return 20.0 * std::log10(mic.a1) + incident_power_db;
}

}  // namespace jamfield
