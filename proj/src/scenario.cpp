#include "jamfield/scenario.hpp"

#include <cmath>
#include <set>

#include "jamfield/errors.hpp"

namespace jamfield {

PresetId preset_from_string(const std::string& s) {
  if (s == "backdoor_3x3") return PresetId::backdoor_3x3;
  if (s == "i4") return PresetId::i4;
  if (s == "bracelet_12") return PresetId::bracelet_12;
  if (s == "bracelet_24") return PresetId::bracelet_24;
  throw SchemaError("unknown preset: " + s);
}

std::string to_string(PresetId id) {
  switch (id) {
    case PresetId::backdoor_3x3: return "backdoor_3x3";
    case PresetId::i4: return "i4";
    case PresetId::bracelet_12: return "bracelet_12";
    case PresetId::bracelet_24: return "bracelet_24";
  }
  return "backdoor_3x3";
}

namespace {

std::shared_ptr<const EmissionPattern> default_pattern() {
  static const auto pattern = EmissionPattern::piston(kPistonRadius);
  return pattern;
}

void add_ring(JammerConfig& config, double z, double carrier,
              double azimuth_offset_deg) {
  for (int k = 0; k < 12; ++k) {
    Transducer t;
    const double yaw =
        normalize_angle(deg_to_rad(30.0 * k + azimuth_offset_deg));
    t.pose.position = {kBraceletRadius * std::sin(yaw),
                       kBraceletRadius * std::cos(yaw), z};
    t.pose.yaw = yaw;
    t.pattern = default_pattern();
    t.carrier_freq = carrier;
    config.transducers.push_back(std::move(t));
  }
}

}  // namespace

JammerConfig build_preset(PresetId id) {
  JammerConfig config;
  switch (id) {
    case PresetId::backdoor_3x3: {
      // coplanar 3x3 grid, parallel boresights along +y
      for (int iz = -1; iz <= 1; ++iz)
        for (int ix = -1; ix <= 1; ++ix) {
          Transducer t;
          t.pose.position = {ix * kBackdoorPitch, 0.0, iz * kBackdoorPitch};
          t.pattern = default_pattern();
          t.carrier_freq = 25000.0;
          config.transducers.push_back(std::move(t));
        }
      config.signal.carrier_freq = 25000.0;
      break;
    }
    case PresetId::i4: {
      // row of five on the side plus two on top pitched up 90 degrees
      for (int ix = -2; ix <= 2; ++ix) {
        Transducer t;
        t.pose.position = {ix * kBackdoorPitch, 0.0, 0.0};
        t.pattern = default_pattern();
        t.carrier_freq = 24000.0;
        config.transducers.push_back(std::move(t));
      }
      for (int ix = -1; ix <= 1; ix += 2) {
        Transducer t;
        t.pose.position = {ix * kBackdoorPitch / 2.0, 0.0, kBackdoorPitch};
        t.pose.pitch = M_PI / 2.0;
        t.pattern = default_pattern();
        t.carrier_freq = 24000.0;
        config.transducers.push_back(std::move(t));
      }
      config.signal.carrier_freq = 24000.0;
      break;
    }
    case PresetId::bracelet_12: {
      add_ring(config, 0.0, 25000.0, 0.0);
      config.signal.carrier_freq = 25000.0;
      break;
    }
    case PresetId::bracelet_24: {
      // stacked pair, second ring interleaved by half the element spacing
      add_ring(config, -kBraceletRingGap / 2.0, 25000.0, 0.0);
      add_ring(config, +kBraceletRingGap / 2.0, 25000.0, 15.0);
      config.signal.carrier_freq = 25000.0;
      break;
    }
  }
  return config;
}

JammerConfig build_preset(const std::string& id) {
  return build_preset(preset_from_string(id));
}

void assign_source_groups(JammerConfig& config, int n_groups) {
  const int n = static_cast<int>(config.transducers.size());
  if (n_groups < 1 || n_groups > n)
    throw DomainError("source group count must lie in [1, transducer count]");
  for (int i = 0; i < n; ++i)
    config.transducers[i].source_id = i * n_groups / n;
}

Vec3 jammer_centroid(const JammerConfig& j, const Pose& pose_override) {
  Vec3 acc;
  for (const auto& t : j.transducers)
    acc = acc + compose(pose_override, t.pose).position;
  const double n = static_cast<double>(j.transducers.size());
  return n > 0 ? acc * (1.0 / n) : pose_override.position;
}

Vec3 jammer_centroid(const JammerConfig& j) { return jammer_centroid(j, j.pose); }

namespace {

void check_pattern(const EmissionPattern& p, const std::string& where,
                   std::vector<std::string>& out) {
  if (p.is_piston()) {
    if (!(p.piston_radius() > 0.0)) out.push_back(where + ": piston radius must be > 0");
    return;
  }
  // Construction already enforces ordering/normalization; re-check bounds.
  const auto& tab = p.samples();
  if (tab.empty() || tab.front().first != 0.0 ||
      std::fabs(tab.front().second - 1.0) > 1e-12)
    out.push_back(where + ": tabulated pattern must start at (0 deg, gain 1)");
}

}  // namespace

std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> v;
  if (s.jammers.empty()) v.push_back("no jammer");

  std::set<double> carriers;
  for (std::size_t ji = 0; ji < s.jammers.size(); ++ji) {
    const auto& j = s.jammers[ji];
    const std::string where = "jammer " + std::to_string(ji);
    if (j.transducers.empty()) v.push_back(where + ": no transducers");
    for (std::size_t ti = 0; ti < j.transducers.size(); ++ti) {
      const auto& t = j.transducers[ti];
      const std::string twhere = where + " transducer " + std::to_string(ti);
      if (!t.pose.position.finite()) v.push_back(twhere + ": position not finite");
      if (t.carrier_freq < 20000.0 || t.carrier_freq > 80000.0)
        v.push_back(twhere + ": carrier outside [20 kHz, 80 kHz]");
      if (t.source_id < 0) v.push_back(twhere + ": source id must be >= 0");
      if (!t.pattern) {
        v.push_back(twhere + ": missing emission pattern");
      } else {
        check_pattern(*t.pattern, twhere, v);
      }
      carriers.insert(t.carrier_freq);
    }
    if (!(j.signal.noise_bandwidth > 0.0) ||
        !(j.signal.noise_bandwidth < j.signal.carrier_freq))
      v.push_back(where + ": noise bandwidth must lie in (0, carrier)");
    if (!(j.signal.modulation_depth > 0.0) || j.signal.modulation_depth > 1.0)
      v.push_back(where + ": modulation depth must lie in (0, 1]");
    if (j.trajectory) {
      if (j.trajectory->frames.empty()) v.push_back(where + ": empty trajectory");
      if (!(j.trajectory->frame_rate > 0.0))
        v.push_back(where + ": trajectory frame rate must be > 0");
    }
  }
  if (carriers.size() > 1) v.push_back("carrier mismatch");

  for (std::size_t mi = 0; mi < s.mics.size(); ++mi) {
    const auto& m = s.mics[mi];
    const std::string where = "mic " + std::to_string(mi);
    if (!m.pose.position.finite()) v.push_back(where + ": position not finite");
    if (!(m.model.a1 > 0.0)) v.push_back(where + ": a1 must be > 0");
    if (!(m.model.lpf_cutoff <= m.model.fs_record / 2.0))
      v.push_back(where + ": lpf cutoff above Nyquist of fs_record");
    if (m.occlusion &&
        (m.occlusion->atten_audible_db < 0.0 || m.occlusion->atten_ultrasonic_db < 0.0))
      v.push_back(where + ": occlusion attenuations must be >= 0");
  }

  if (s.speech) {
    if (!s.speech->position.finite()) v.push_back("speech: position not finite");
    if (s.speech->level_dba_at_1m < 30.0 || s.speech->level_dba_at_1m > 90.0)
      v.push_back("speech: level outside [30, 90] dB");
    if (!(s.speech->word_duration > 0.0))
      v.push_back("speech: word duration must be > 0");
  }

  if (!(s.medium.sound_speed > 0.0)) v.push_back("medium: sound speed must be > 0");
  if (s.medium.absorption_db_per_m < 0.0)
    v.push_back("medium: absorption must be >= 0");
  return v;
}

double drive_level_from_point_calibration(double spl_db, double r_ref,
                                          const Medium& medium, double freq_hz) {
  (void)freq_hz;
  if (!(r_ref > 0.0)) throw DomainError("calibration distance must be > 0");
  // SPL(r) = SPL(1 m) - 20 log10(r) - absorption (r - 1)
  return spl_db + 20.0 * std::log10(r_ref) +
         medium.absorption_db_per_m * (r_ref - 1.0);
}

}  // namespace jamfield
