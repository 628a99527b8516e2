#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jamfield/capture.hpp"
#include "jamfield/geometry.hpp"
#include "jamfield/pattern.hpp"
#include "jamfield/signal.hpp"
#include "jamfield/trajectory.hpp"

namespace jamfield {

// Default per-element drive: 100 dB SPL at the element face (1 cm) mapped to
// the 1 m boresight reference.
inline constexpr double kElementFaceDistance = 0.01;
inline constexpr double kDefaultDriveLevelDb = 60.0;

inline constexpr double kMicPlaneZ = 0.05;      // default microphone height
inline constexpr double kNearFieldExclusion = 0.05;  // map cells this close to a jammer stay unset
inline constexpr double kWristHeight = 0.10;    // bracelet height above table
inline constexpr double kBraceletRadius = 0.035;
inline constexpr double kBraceletRingGap = 0.018;  // stacked-pair ring spacing
inline constexpr double kBackdoorPitch = 0.017;    // 3x3 center-to-center
inline constexpr double kPistonRadius = 0.008;     // NU25C16T-1 is a 16 mm part

struct Transducer {
  Pose pose;  // jammer-local coordinates; boresight reference is +y
  std::shared_ptr<const EmissionPattern> pattern;
  double carrier_freq = 25000.0;  // Hz, [20 kHz, 80 kHz]
  int source_id = 0;              // transducers sharing an id add coherently
};

struct JammerConfig {
  std::vector<Transducer> transducers;
  SignalSpec signal;
  double drive_level_db = kDefaultDriveLevelDb;  // SPL at 1 m on boresight
  Pose pose;
  std::optional<Trajectory> trajectory;
};

struct MicPlacement {
  Pose pose;
  MicrophoneModel model;
  std::optional<Occlusion> occlusion;
  std::string id;
};

struct SpeechSource {
  Vec3 position;
  double level_dba_at_1m = 57.5;  // dB, [30, 90]
  double word_duration = 0.4;     // seconds
};

struct Scenario {
  std::vector<JammerConfig> jammers;
  std::vector<MicPlacement> mics;
  std::optional<SpeechSource> speech;
  Medium medium;
  uint64_t seed = 0;
  std::string id;
};

enum class PresetId { backdoor_3x3, i4, bracelet_12, bracelet_24 };

PresetId preset_from_string(const std::string& s);
std::string to_string(PresetId id);

JammerConfig build_preset(PresetId id);
JammerConfig build_preset(const std::string& id);

// Regroup transducers into n contiguous blocks (block per source). The
// bracelet_24 ordering is ring-major, so two groups land one per ring.
void assign_source_groups(JammerConfig& config, int n_groups);

// Every invariant violation across the contained types; empty means ok.
std::vector<std::string> validate_scenario(const Scenario& s);

// World centroid of a jammer's transducers and its boresight yaw.
Vec3 jammer_centroid(const JammerConfig& j);
Vec3 jammer_centroid(const JammerConfig& j, const Pose& pose_override);

// dB SPL at 1 m boresight for an element measured at spl_db from r_ref.
double drive_level_from_point_calibration(double spl_db, double r_ref,
                                          const Medium& medium, double freq_hz);

}  // namespace jamfield
