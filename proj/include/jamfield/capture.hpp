#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jamfield/signal.hpp"

namespace jamfield {

// Polynomial microphone front end: out = a1 s + a2 s^2 + a3 s^3 on pressure
// normalized so that 94 dB SPL <-> amplitude 1.0, followed by the
// anti-aliasing lowpass and the recorder sample rate.
struct MicrophoneModel {
  double a1 = 1.0;
  double a2 = 0.5;
  double a3 = 0.001;
  double lpf_cutoff = 20000.0;    // Hz
  double fs_record = 48000.0;     // Hz
  double noise_floor_db = -90.0;  // dBFS RMS of additive recorder noise
};

// Named per-phone profiles ("default", "mi6", "linear").
MicrophoneModel mic_profile(const std::string& name);

struct Occlusion {
  std::string name;
  double atten_audible_db = 0.0;
  double atten_ultrasonic_db = 0.0;
};

const std::vector<Occlusion>& default_occlusion_table();
Occlusion occlusion_by_name(const std::string& name);
std::vector<Occlusion> occlusion_table_from_json(const std::string& json_text);

struct Recording {
  SampledSignal audio;  // at fs_record
  std::string scenario_id;
  std::string mic_id;
  uint64_t seed = 0;
};

// Pointwise polynomial at the input rate; no filtering.
SampledSignal nonlinear_transform(const MicrophoneModel& mic,
                                  const SampledSignal& s);

// Linear-phase FIR: stopband >= 60 dB above 1.1x cutoff, passband ripple
// <= 0.5 dB below 0.9x cutoff.
SampledSignal lowpass_filter(const SampledSignal& s, double cutoff_hz);

// nonlinear -> lowpass -> resample to fs_record -> seeded recorder noise.
Recording capture_recording(const MicrophoneModel& mic,
                            const SampledSignal& incident,
                            uint64_t noise_seed = 0);

// capture_recording applied to the sum of the two incidents.
Recording mix_and_record(const MicrophoneModel& mic, const SampledSignal& jam,
                         const SampledSignal& speech, uint64_t noise_seed = 0);

// Scales the incident pair: speech by -atten_audible_db, jam by
// -atten_ultrasonic_db.
void apply_occlusion(const Occlusion& occ, SampledSignal* jam,
                     SampledSignal* speech);

// Power of the demodulated quadratic term for AM noise of unit-RMS envelope:
// recorded power = (a2 * P_inc)^2 * (m^2 + m^4/2), P_inc in linear
// normalized-pressure power. Used by the frame-rate jam/speech ratio model.
double recorded_jam_power_db(const MicrophoneModel& mic, double modulation_depth,
                             double incident_power_db);
double recorded_speech_power_db(const MicrophoneModel& mic,
                                double incident_power_db);

}  // namespace jamfield
