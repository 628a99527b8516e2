#include "jamfield/scenario_json.hpp"

#include <initializer_list>
#include <string>

#include "vendor_json.hpp"

#include "jamfield/errors.hpp"
#include "jamfield/util.hpp"

namespace jamfield {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

void expect_keys(const json& obj, const std::string& ctx,
                 std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) throw SchemaError("unknown key '" + it.key() + "' in " + ctx);
  }
}

double num(const json& j, const std::string& ctx) {
  if (!j.is_number()) throw SchemaError(ctx + " must be a number");
  return j.get<double>();
}

Vec3 vec3_from(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.size() != 3)
    throw SchemaError(ctx + " must be an array [x, y, z]");
  return {num(j[0], ctx), num(j[1], ctx), num(j[2], ctx)};
}

Pose pose_from(const json& j, const std::string& ctx) {
  expect_keys(j, ctx, {"position", "yaw_deg", "pitch_deg"});
  Pose p;
  if (j.contains("position")) p.position = vec3_from(j["position"], ctx + ".position");
  if (j.contains("yaw_deg")) p.yaw = deg_to_rad(num(j["yaw_deg"], ctx + ".yaw_deg"));
  if (j.contains("pitch_deg"))
    p.pitch = deg_to_rad(num(j["pitch_deg"], ctx + ".pitch_deg"));
  p.normalize();
  return p;
}

std::shared_ptr<const EmissionPattern> pattern_from(const json& j,
                                                    const std::string& ctx) {
  expect_keys(j, ctx, {"type", "radius", "samples"});
  const std::string type = j.at("type").get<std::string>();
  try {
    if (type == "piston") return EmissionPattern::piston(num(j.at("radius"), ctx));
    if (type == "tabulated") {
      std::vector<std::pair<double, double>> samples;
      for (const auto& row : j.at("samples")) {
        if (!row.is_array() || row.size() != 2)
          throw SchemaError(ctx + ".samples rows must be [angle_deg, gain]");
        samples.emplace_back(num(row[0], ctx), num(row[1], ctx));
      }
      return EmissionPattern::tabulated(std::move(samples));
    }
  } catch (const DomainError& e) {
    throw SchemaError(ctx + ": " + e.what());
  }
  throw SchemaError(ctx + ": unknown pattern type '" + type + "'");
}

SignalSpec signal_from(const json& j, const std::string& ctx) {
  expect_keys(j, ctx,
              {"carrier_freq", "noise_bandwidth", "modulation_depth", "seed"});
  SignalSpec spec;
  if (j.contains("carrier_freq")) spec.carrier_freq = num(j["carrier_freq"], ctx);
  if (j.contains("noise_bandwidth"))
    spec.noise_bandwidth = num(j["noise_bandwidth"], ctx);
  if (j.contains("modulation_depth"))
    spec.modulation_depth = num(j["modulation_depth"], ctx);
  if (j.contains("seed")) spec.seed = j["seed"].get<uint64_t>();
  return spec;
}

Trajectory trajectory_from(const json& j, const std::string& ctx, const Pose& base,
                           uint64_t default_seed) {
  expect_keys(j, ctx,
              {"kind", "duration", "frame_rate", "seed", "amplitude_deg",
               "path_length", "speed", "csv_path"});
  if (j.contains("csv_path"))
    return trajectory_from_csv(read_file(j["csv_path"].get<std::string>()));
  const std::string kind_s = j.at("kind").get<std::string>();
  const TrajectoryKind kind = trajectory_kind_from_string(kind_s);
  const double duration = j.contains("duration") ? num(j["duration"], ctx) : 4.0;
  const double rate = j.contains("frame_rate") ? num(j["frame_rate"], ctx) : 100.0;
  const uint64_t seed =
      j.contains("seed") ? j["seed"].get<uint64_t>() : default_seed;
  try {
    if (kind == TrajectoryKind::walk) {
      const double len = j.contains("path_length") ? num(j["path_length"], ctx) : 0.8;
      const double speed = j.contains("speed") ? num(j["speed"], ctx) : 0.5;
      return gen_walk_trajectory(len, speed, rate, base, duration);
    }
    GestureParams params;
    if (j.contains("amplitude_deg"))
      params.random_amplitude_deg = num(j["amplitude_deg"], ctx);
    return gen_gesture_trajectory(kind, duration, rate, seed, base, params);
  } catch (const DomainError& e) {
    throw SchemaError(ctx + ": " + e.what());
  }
}

Transducer transducer_from(const json& j, const std::string& ctx) {
  expect_keys(j, ctx, {"pose", "pattern", "carrier_freq", "source_id"});
  Transducer t;
  if (j.contains("pose")) t.pose = pose_from(j["pose"], ctx + ".pose");
  if (j.contains("pattern"))
    t.pattern = pattern_from(j["pattern"], ctx + ".pattern");
  else
    t.pattern = EmissionPattern::piston(kPistonRadius);
  if (j.contains("carrier_freq")) t.carrier_freq = num(j["carrier_freq"], ctx);
  if (j.contains("source_id")) t.source_id = j["source_id"].get<int>();
  return t;
}

JammerConfig jammer_from(const json& j, const std::string& ctx,
                         uint64_t default_seed) {
  expect_keys(j, ctx,
              {"preset", "source_groups", "transducers", "signal", "drive_level_db",
               "pose", "trajectory"});
  JammerConfig config;
  if (j.contains("preset")) {
    if (j.contains("transducers"))
      throw SchemaError(ctx + ": give either 'preset' or 'transducers', not both");
    config = build_preset(j["preset"].get<std::string>());
  } else if (j.contains("transducers")) {
    int i = 0;
    for (const auto& tj : j["transducers"])
      config.transducers.push_back(
          transducer_from(tj, ctx + ".transducers[" + std::to_string(i++) + "]"));
  } else {
    throw SchemaError(ctx + ": needs 'preset' or 'transducers'");
  }
  if (j.contains("signal")) config.signal = signal_from(j["signal"], ctx + ".signal");
  if (j.contains("drive_level_db"))
    config.drive_level_db = num(j["drive_level_db"], ctx + ".drive_level_db");
  if (j.contains("pose")) config.pose = pose_from(j["pose"], ctx + ".pose");
  if (j.contains("source_groups")) {
    const int n = j["source_groups"].get<int>();
    try {
      assign_source_groups(config, n);
    } catch (const DomainError& e) {
      throw SchemaError(ctx + ": " + e.what());
    }
  }
  if (j.contains("trajectory"))
    config.trajectory = trajectory_from(j["trajectory"], ctx + ".trajectory",
                                        config.pose, default_seed);
  return config;
}

MicrophoneModel mic_model_from(const json& j, const std::string& ctx) {
  expect_keys(j, ctx,
              {"profile", "a1", "a2", "a3", "lpf_cutoff", "fs_record",
               "noise_floor_db"});
  MicrophoneModel m;
  if (j.contains("profile")) {
    try {
      m = mic_profile(j["profile"].get<std::string>());
    } catch (const SchemaError& e) {
      throw SchemaError(ctx + ": " + e.what());
    }
  }
  if (j.contains("a1")) m.a1 = num(j["a1"], ctx);
  if (j.contains("a2")) m.a2 = num(j["a2"], ctx);
  if (j.contains("a3")) m.a3 = num(j["a3"], ctx);
  if (j.contains("lpf_cutoff")) m.lpf_cutoff = num(j["lpf_cutoff"], ctx);
  if (j.contains("fs_record")) m.fs_record = num(j["fs_record"], ctx);
  if (j.contains("noise_floor_db")) m.noise_floor_db = num(j["noise_floor_db"], ctx);
  return m;
}

Occlusion occlusion_from(const json& j, const std::string& ctx) {
  expect_keys(j, ctx, {"name", "atten_audible_db", "atten_ultrasonic_db"});
  if (j.contains("atten_audible_db") || j.contains("atten_ultrasonic_db")) {
    Occlusion o;
    o.name = j.contains("name") ? j["name"].get<std::string>() : "custom";
    o.atten_audible_db = num(j.at("atten_audible_db"), ctx);
    o.atten_ultrasonic_db = num(j.at("atten_ultrasonic_db"), ctx);
    return o;
  }
  try {
    return occlusion_by_name(j.at("name").get<std::string>());
  } catch (const SchemaError& e) {
    throw SchemaError(ctx + ": " + e.what());
  }
}

MicPlacement mic_from(const json& j, const std::string& ctx) {
  expect_keys(j, ctx, {"pose", "model", "occlusion", "id"});
  MicPlacement m;
  if (j.contains("pose")) m.pose = pose_from(j["pose"], ctx + ".pose");
  if (j.contains("model")) m.model = mic_model_from(j["model"], ctx + ".model");
  if (j.contains("occlusion"))
    m.occlusion = occlusion_from(j["occlusion"], ctx + ".occlusion");
  if (j.contains("id")) m.id = j["id"].get<std::string>();
  return m;
}

SpeechSource speech_from(const json& j, const std::string& ctx) {
  expect_keys(j, ctx, {"position", "level_dba_at_1m", "word_duration"});
  SpeechSource s;
  if (j.contains("position")) s.position = vec3_from(j["position"], ctx);
  if (j.contains("level_dba_at_1m")) s.level_dba_at_1m = num(j["level_dba_at_1m"], ctx);
  if (j.contains("word_duration")) s.word_duration = num(j["word_duration"], ctx);
  return s;
}

Medium medium_from(const json& j, const std::string& ctx) {
  expect_keys(j, ctx, {"sound_speed", "absorption"});
  Medium m;
  if (j.contains("sound_speed")) m.sound_speed = num(j["sound_speed"], ctx);
  if (j.contains("absorption")) m.absorption_db_per_m = num(j["absorption"], ctx);
  return m;
}

}  // namespace

Scenario scenario_from_json(const std::string& json_text,
                            std::optional<uint64_t> seed_override) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw SchemaError(std::string("scenario JSON: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("scenario JSON must be an object");
  expect_keys(j, "scenario", {"jammers", "mics", "speech", "medium", "seed", "id"});
  Scenario s;
  if (j.contains("seed")) s.seed = j["seed"].get<uint64_t>();
  if (seed_override) s.seed = *seed_override;
  if (!j.contains("jammers")) throw SchemaError("scenario: missing 'jammers'");
  int i = 0;
  for (const auto& jj : j["jammers"])
    s.jammers.push_back(
        jammer_from(jj, "jammers[" + std::to_string(i++) + "]", s.seed));
  i = 0;
  if (j.contains("mics"))
    for (const auto& mj : j["mics"])
      s.mics.push_back(mic_from(mj, "mics[" + std::to_string(i++) + "]"));
  if (j.contains("speech")) s.speech = speech_from(j["speech"], "speech");
  if (j.contains("medium")) s.medium = medium_from(j["medium"], "medium");
  if (j.contains("id")) s.id = j["id"].get<std::string>();
  return s;
}

Scenario scenario_from_file(const std::string& path,
                            std::optional<uint64_t> seed_override) {
  return scenario_from_json(read_file(path), seed_override);
}

std::string scenario_to_json(const Scenario& s) {
  ordered j;
  j["id"] = s.id;
  j["seed"] = s.seed;
  j["medium"] = {{"sound_speed", s.medium.sound_speed},
                 {"absorption", s.medium.absorption_db_per_m}};
  auto jammers = ordered::array();
  for (const auto& jam : s.jammers) {
    ordered jj;
    auto transducers = ordered::array();
    for (const auto& t : jam.transducers) {
      ordered tj;
      tj["pose"] = {{"position", {t.pose.position.x, t.pose.position.y,
                                  t.pose.position.z}},
                    {"yaw_deg", rad_to_deg(t.pose.yaw)},
                    {"pitch_deg", rad_to_deg(t.pose.pitch)}};
      if (t.pattern->is_piston()) {
        tj["pattern"] = {{"type", "piston"}, {"radius", t.pattern->piston_radius()}};
      } else {
        auto rows = ordered::array();
        for (const auto& [deg, gain] : t.pattern->samples())
          rows.push_back({deg, gain});
        tj["pattern"] = {{"type", "tabulated"}, {"samples", rows}};
      }
      tj["carrier_freq"] = t.carrier_freq;
      tj["source_id"] = t.source_id;
      transducers.push_back(tj);
    }
    jj["transducers"] = transducers;
    jj["signal"] = {{"carrier_freq", jam.signal.carrier_freq},
                    {"noise_bandwidth", jam.signal.noise_bandwidth},
                    {"modulation_depth", jam.signal.modulation_depth},
                    {"seed", jam.signal.seed}};
    jj["drive_level_db"] = jam.drive_level_db;
    jj["pose"] = {{"position", {jam.pose.position.x, jam.pose.position.y,
                                jam.pose.position.z}},
                  {"yaw_deg", rad_to_deg(jam.pose.yaw)},
                  {"pitch_deg", rad_to_deg(jam.pose.pitch)}};
    jammers.push_back(jj);
  }
  j["jammers"] = jammers;
  auto mics = ordered::array();
  for (const auto& m : s.mics) {
    ordered mj;
    mj["pose"] = {{"position", {m.pose.position.x, m.pose.position.y,
                                m.pose.position.z}},
                  {"yaw_deg", rad_to_deg(m.pose.yaw)},
                  {"pitch_deg", rad_to_deg(m.pose.pitch)}};
    mj["model"] = {{"a1", m.model.a1},
                   {"a2", m.model.a2},
                   {"a3", m.model.a3},
                   {"lpf_cutoff", m.model.lpf_cutoff},
                   {"fs_record", m.model.fs_record},
                   {"noise_floor_db", m.model.noise_floor_db}};
    if (m.occlusion)
      mj["occlusion"] = {{"name", m.occlusion->name},
                         {"atten_audible_db", m.occlusion->atten_audible_db},
                         {"atten_ultrasonic_db", m.occlusion->atten_ultrasonic_db}};
    if (!m.id.empty()) mj["id"] = m.id;
    mics.push_back(mj);
  }
  j["mics"] = mics;
  if (s.speech)
    j["speech"] = {{"position", {s.speech->position.x, s.speech->position.y,
                                 s.speech->position.z}},
                   {"level_dba_at_1m", s.speech->level_dba_at_1m},
                   {"word_duration", s.speech->word_duration}};
  return j.dump(2) + "\n";
}

}  // namespace jamfield
