#include "jamfield/runner.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

#include "vendor_json.hpp"

#include "jamfield/errors.hpp"
#include "jamfield/field.hpp"
#include "jamfield/metrics.hpp"
#include "jamfield/motion.hpp"
#include "jamfield/rng.hpp"
#include "jamfield/scenario_json.hpp"
#include "jamfield/signal.hpp"
#include "jamfield/util.hpp"
#include "jamfield/wav.hpp"

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

GridSpec grid_from(const json& j, const std::string& ctx) {
  expect_keys(j, ctx, {"origin", "dx", "dy", "nx", "ny", "z"});
  GridSpec g;
  if (j.contains("origin")) {
    const auto& o = j["origin"];
    if (!o.is_array() || o.size() != 2)
      throw SchemaError(ctx + ".origin must be [x, y]");
    g.origin_x = o[0].get<double>();
    g.origin_y = o[1].get<double>();
  }
  if (j.contains("dx")) g.dx = j["dx"].get<double>();
  if (j.contains("dy")) g.dy = j["dy"].get<double>();
  if (j.contains("nx")) g.nx = j["nx"].get<int>();
  if (j.contains("ny")) g.ny = j["ny"].get<int>();
  if (j.contains("z")) g.z = j["z"].get<double>();
  return g;
}

// Per-output scenario variant: replace jammer 0 by a preset, regroup sources,
// or keep a single element.
Scenario variant_scenario(const Scenario& base, const json& out,
                          const std::string& ctx) {
  Scenario s = base;
  if (s.jammers.empty()) throw SchemaError(ctx + ": scenario has no jammer");
  if (out.contains("preset")) {
    JammerConfig j = build_preset(out["preset"].get<std::string>());
    j.pose = s.jammers.front().pose;
    j.trajectory = s.jammers.front().trajectory;
    j.drive_level_db = s.jammers.front().drive_level_db;
    s.jammers.front() = std::move(j);
  }
  if (out.contains("single_element_index")) {
    auto& transducers = s.jammers.front().transducers;
    const int idx = out["single_element_index"].get<int>();
    if (idx < 0 || idx >= static_cast<int>(transducers.size()))
      throw SchemaError(ctx + ": single_element_index out of range");
    Transducer keep = transducers[idx];
    keep.source_id = 0;
    transducers = {keep};
  }
  if (out.contains("source_groups")) {
    try {
      assign_source_groups(s.jammers.front(), out["source_groups"].get<int>());
    } catch (const DomainError& e) {
      throw SchemaError(ctx + ": " + e.what());
    }
  }
  return s;
}

const Trajectory& require_trajectory(const Scenario& s, const std::string& ctx) {
  if (s.jammers.empty() || !s.jammers.front().trajectory)
    throw SchemaError(ctx + ": jammer 0 has no trajectory");
  return *s.jammers.front().trajectory;
}

struct Artifact {
  std::string path;
  std::string bytes;
};

class ArtifactSink {
 public:
  void add(const std::string& path, std::string bytes, const std::string& ctx) {
    if (path.empty()) throw SchemaError(ctx + ": empty artifact path");
    if (!paths_.insert(path).second)
      throw SchemaError(ctx + ": duplicate artifact path '" + path + "'");
    artifacts_.push_back({path, std::move(bytes)});
  }
  std::vector<Artifact>& artifacts() { return artifacts_; }

 private:
  std::set<std::string> paths_;
  std::vector<Artifact> artifacts_;
};

std::string path_of(const json& out, const char* key, const std::string& ctx) {
  if (!out.contains(key))
    throw SchemaError(ctx + ": missing '" + std::string(key) + "'");
  return out[key].get<std::string>();
}

// ---- output handlers -------------------------------------------------------

void run_map_output(const Scenario& base, const json& out, const std::string& ctx,
                    const ComputeOptions& copts, ArtifactSink& sink) {
  expect_keys(out, ctx,
              {"kind", "path", "grid", "pgm_path", "blind_report_path",
               "threshold_db", "preset", "source_groups", "single_element_index"});
  const Scenario s = variant_scenario(base, out, ctx);
  const GridSpec grid = out.contains("grid") ? grid_from(out["grid"], ctx + ".grid")
                                             : GridSpec{};
  const PowerMap map = power_map(s, grid, copts);
  sink.add(path_of(out, "path", ctx), power_map_to_csv(map), ctx);
  if (out.contains("pgm_path"))
    sink.add(out["pgm_path"].get<std::string>(), power_map_to_pgm(map), ctx);
  if (out.contains("blind_report_path")) {
    const double thr =
        out.contains("threshold_db") ? out["threshold_db"].get<double>() : 10.0;
    sink.add(out["blind_report_path"].get<std::string>(),
             blind_report_to_json(detect_blind_spots(map, thr)), ctx);
  }
}

void run_timesim_output(const Scenario& base, const json& out,
                        const std::string& ctx, const ComputeOptions& copts,
                        ArtifactSink& sink) {
  expect_keys(out, ctx,
              {"kind", "path", "grid", "window", "pgm_path", "blind_report_path",
               "threshold_db", "preset", "source_groups", "single_element_index"});
  const Scenario s = variant_scenario(base, out, ctx);
  const Trajectory& traj = require_trajectory(s, ctx);
  const GridSpec grid = out.contains("grid") ? grid_from(out["grid"], ctx + ".grid")
                                             : GridSpec{};
  const double window = out.contains("window") ? out["window"].get<double>() : 0.4;
  const PowerMap map = time_averaged_map(s, traj, window, grid, copts);
  sink.add(path_of(out, "path", ctx), power_map_to_csv(map), ctx);
  if (out.contains("pgm_path"))
    sink.add(out["pgm_path"].get<std::string>(), power_map_to_pgm(map), ctx);
  if (out.contains("blind_report_path")) {
    const double thr =
        out.contains("threshold_db") ? out["threshold_db"].get<double>() : 10.0;
    sink.add(out["blind_report_path"].get<std::string>(),
             blind_report_to_json(detect_blind_spots(map, thr)), ctx);
  }
}

void run_sweep_output(const Scenario& base, const json& out, const std::string& ctx,
                      const ComputeOptions& copts, ArtifactSink& sink) {
  expect_keys(out, ctx,
              {"kind", "path", "radius", "step_deg", "averaged", "window",
               "stats_path", "preset", "source_groups", "single_element_index"});
  const Scenario s = variant_scenario(base, out, ctx);
  const double radius = out.contains("radius") ? out["radius"].get<double>() : 1.0;
  const double step = out.contains("step_deg") ? out["step_deg"].get<double>() : 2.0;
  AngularProfile prof;
  if (out.contains("averaged") && out["averaged"].get<bool>()) {
    const Trajectory& traj = require_trajectory(s, ctx);
    const double window = out.contains("window") ? out["window"].get<double>() : 0.4;
    prof = motion_averaged_profile(s, traj, radius, step, window, kMicPlaneZ, copts);
  } else {
    prof = angular_sweep(s, radius, step);
  }
  sink.add(path_of(out, "path", ctx), profile_to_csv(prof), ctx);
  if (out.contains("stats_path"))
    sink.add(out["stats_path"].get<std::string>(),
             coverage_stats_to_json(coverage_stats(prof)), ctx);
}

void run_sweep_compare_output(const Scenario& base, const json& out,
                              const std::string& ctx, const ComputeOptions& copts,
                              ArtifactSink& sink) {
  expect_keys(out, ctx,
              {"kind", "path", "motion_path", "stats_path", "radius", "step_deg",
               "window", "preset", "source_groups", "single_element_index"});
  const Scenario s = variant_scenario(base, out, ctx);
  const Trajectory& traj = require_trajectory(s, ctx);
  const double radius = out.contains("radius") ? out["radius"].get<double>() : 1.0;
  const double step = out.contains("step_deg") ? out["step_deg"].get<double>() : 2.0;
  const double window = out.contains("window") ? out["window"].get<double>() : 0.4;

  const AngularProfile st = angular_sweep(s, radius, step);
  const AngularProfile mv =
      motion_averaged_profile(s, traj, radius, step, window, kMicPlaneZ, copts);
  sink.add(path_of(out, "path", ctx), profile_to_csv(st), ctx);
  sink.add(path_of(out, "motion_path", ctx), profile_to_csv(mv), ctx);

  const CoverageStats st_stats = coverage_stats(st);
  const CoverageStats mv_stats = coverage_stats(mv);
  ordered j;
  j["static"] = {{"mean_db", st_stats.mean_db},
                 {"std_db", st_stats.std_db},
                 {"min_db", st_stats.min_db},
                 {"frac_above_minus10", st_stats.frac_above_minus10}};
  j["motion"] = {{"mean_db", mv_stats.mean_db},
                 {"std_db", mv_stats.std_db},
                 {"min_db", mv_stats.min_db},
                 {"frac_above_minus10", mv_stats.frac_above_minus10}};
  j["std_ratio"] = st_stats.std_db > 0.0 ? mv_stats.std_db / st_stats.std_db : 0.0;
  sink.add(path_of(out, "stats_path", ctx), j.dump(2) + "\n", ctx);
}

void run_blind_counts_output(const Scenario& base, const json& out,
                             const std::string& ctx, const ComputeOptions& copts,
                             ArtifactSink& sink) {
  expect_keys(out, ctx,
              {"kind", "path", "grid", "threshold_db", "source_groups_list",
               "preset", "single_element_index"});
  const GridSpec grid = out.contains("grid") ? grid_from(out["grid"], ctx + ".grid")
                                             : GridSpec{};
  const double thr =
      out.contains("threshold_db") ? out["threshold_db"].get<double>() : 10.0;
  std::vector<int> groups = {1, 2, 24};
  if (out.contains("source_groups_list"))
    groups = out["source_groups_list"].get<std::vector<int>>();

  ordered rows = ordered::array();
  for (int g : groups) {
    json variant = out;
    variant.erase("source_groups_list");
    variant["source_groups"] = g;
    const Scenario s = variant_scenario(base, variant, ctx);
    const PowerMap map = power_map(s, grid, copts);
    const BlindSpotReport report = detect_blind_spots(map, thr);
    ordered row;
    row["source_groups"] = g;
    row["blind_cells"] = report.cells.size();
    row["blind_regions"] = report.regions.size();
    rows.push_back(row);
  }
  ordered j;
  j["threshold_db"] = thr;
  j["counts"] = rows;
  sink.add(path_of(out, "path", ctx), j.dump(2) + "\n", ctx);
}

ordered wer_json(const WerEstimate& w) {
  ordered j;
  j["wer"] = w.wer;
  j["disrupted_words"] = w.disrupted_words;
  j["total_words"] = w.total_words;
  return j;
}

void run_gesture_wer_output(const Scenario& base, const json& out,
                            const std::string& ctx, ArtifactSink& sink) {
  expect_keys(out, ctx, {"kind", "path", "duration", "seed"});
  const double duration = out.contains("duration") ? out["duration"].get<double>() : 12.0;
  const uint64_t seed = out.contains("seed") ? out["seed"].get<uint64_t>() : base.seed;
  const GestureWerResult r = gesture_wer_suite(duration, seed);
  ordered j;
  j["tau_db"] = r.calibration.tau_db;
  j["tau_attainable"] = r.calibration.attainable;
  j["onaxis_sjr_db"] = r.calibration.onaxis_sjr_db;
  j["guard_sjr_db"] = r.calibration.guard_sjr_db;
  j["blind_angle_deg"] = r.blind_angle_deg;
  j["blind_sjr_db"] = r.blind_sjr_db;
  j["static"] = wer_json(r.static_wer);
  for (const auto& [name, wer] : r.gesture_wer) j[name] = wer_json(wer);
  sink.add(path_of(out, "path", ctx), j.dump(2) + "\n", ctx);
}

void run_occlusion_output(const Scenario& base, const json& out,
                          const std::string& ctx, ArtifactSink& sink) {
  expect_keys(out, ctx, {"kind", "path", "duration", "seed"});
  const double duration = out.contains("duration") ? out["duration"].get<double>() : 12.0;
  const uint64_t seed = out.contains("seed") ? out["seed"].get<uint64_t>() : base.seed;

  const TauCalibration cal =
      calibrate_tau(make_bench_scenario(PresetId::backdoor_3x3, 0.0));
  Scenario s = make_bench_scenario(PresetId::bracelet_24, 0.0);
  const auto traj = gen_gesture_trajectory(TrajectoryKind::random_rotation,
                                           duration, 100.0, seed,
                                           s.jammers.front().pose);
  const double word = s.speech ? s.speech->word_duration : 0.4;

  ordered rows = ordered::array();
  auto score = [&](const std::string& name) {
    const auto series = sjr_timeseries(s, traj, 0);
    double mean_sjr = 0.0;
    for (double v : series.sjr_db) mean_sjr += v;
    mean_sjr /= series.sjr_db.size();
    const auto words = word_disruption(series, word, cal.tau_db, 0.5);
    const WerEstimate wer = wer_proxy(words, cal.tau_db, 0.5, 0.30);
    ordered row;
    row["occlusion"] = name;
    row["mean_sjr_db"] = mean_sjr;
    row["wer"] = wer.wer;
    row["speech_quality"] = speech_quality_proxy(mean_sjr);
    rows.push_back(row);
  };
  s.mics.front().occlusion.reset();
  score("none");
  for (const auto& occ : default_occlusion_table()) {
    s.mics.front().occlusion = occ;
    score(occ.name);
  }
  ordered j;
  j["tau_db"] = cal.tau_db;
  j["rows"] = rows;
  sink.add(path_of(out, "path", ctx), j.dump(2) + "\n", ctx);
}

void run_wer_output(const Scenario& base, const json& out, const std::string& ctx,
                    ArtifactSink& sink) {
  expect_keys(out, ctx,
              {"kind", "path", "mic", "tau_db", "calibrate", "duration", "preset",
               "source_groups", "single_element_index"});
  const Scenario s = variant_scenario(base, out, ctx);
  const std::size_t mic = out.contains("mic") ? out["mic"].get<std::size_t>() : 0;
  if (mic >= s.mics.size()) throw SchemaError(ctx + ": mic index out of range");
  double tau;
  if (out.contains("tau_db")) {
    tau = out["tau_db"].get<double>();
  } else {
    tau = calibrate_tau(make_bench_scenario(PresetId::backdoor_3x3, 0.0)).tau_db;
  }
  const double duration =
      out.contains("duration") ? out["duration"].get<double>() : 4.8;
  WerEstimate wer;
  if (s.jammers.front().trajectory) {
    const Trajectory& traj = *s.jammers.front().trajectory;
    const auto series = sjr_timeseries(s, traj, mic);
    const double word = s.speech ? s.speech->word_duration : 0.4;
    wer = wer_proxy(word_disruption(series, word, tau, 0.5), tau, 0.5, 0.30);
  } else {
    wer = static_wer(s, mic, tau, duration);
  }
  sink.add(path_of(out, "path", ctx), wer_to_json(wer), ctx);
}

void run_spl_output(const Scenario& base, const json& out, const std::string& ctx,
                    ArtifactSink& sink) {
  expect_keys(out, ctx,
              {"kind", "path", "point", "cal_spl_db", "cal_distance", "preset",
               "source_groups", "single_element_index"});
  const Scenario s = variant_scenario(base, out, ctx);
  const auto& pj = out.at("point");
  if (!pj.is_array() || pj.size() != 3)
    throw SchemaError(ctx + ".point must be [x, y, z]");
  const Vec3 p{pj[0].get<double>(), pj[1].get<double>(), pj[2].get<double>()};
  double spl;
  if (out.contains("cal_spl_db")) {
    const double d =
        out.contains("cal_distance") ? out["cal_distance"].get<double>() : 0.01;
    spl = spl_at_calibrated(s, p, out["cal_spl_db"].get<double>(), d);
  } else {
    spl = spl_at(s, p);
  }
  ordered j;
  j["point"] = {p.x, p.y, p.z};
  j["spl_db"] = spl;
  sink.add(path_of(out, "path", ctx), j.dump(2) + "\n", ctx);
}

void run_recording_output(const Scenario& base, const json& out,
                          const std::string& ctx, ArtifactSink& sink) {
  expect_keys(out, ctx,
              {"kind", "path", "mic", "duration", "encoding", "preset",
               "source_groups", "single_element_index"});
  const Scenario s = variant_scenario(base, out, ctx);
  const std::size_t mic_i = out.contains("mic") ? out["mic"].get<std::size_t>() : 0;
  if (mic_i >= s.mics.size()) throw SchemaError(ctx + ": mic index out of range");
  const MicPlacement& mic = s.mics[mic_i];
  const double duration =
      out.contains("duration") ? out["duration"].get<double>() : 1.0;
  const double fs_pass = 192000.0;

  const auto& jam = s.jammers.front();
  const FieldPoint f = field_at_point(s, mic.pose.position);
  const double jam_amp = std::sqrt(f.total_power_linear());
  auto envelope = gen_bandlimited_noise(jam.signal.noise_bandwidth, duration,
                                        48000.0, jam.signal.seed);
  auto jam_wave = am_modulate(envelope, jam.signal, fs_pass);
  for (auto& v : jam_wave.samples) v *= jam_amp;

  SampledSignal speech_wave;
  speech_wave.sample_rate = fs_pass;
  speech_wave.samples.assign(jam_wave.samples.size(), 0.0);
  if (s.speech) {
    const double r = (mic.pose.position - s.speech->position).norm();
    if (!(r > 0.0)) throw DomainError("speech source coincides with the mic");
    const double amp =
        amplitude_from_spl(s.speech->level_dba_at_1m - 20.0 * std::log10(r));
    speech_wave = synth_speech(duration, fs_pass, s.speech->word_duration,
                               mix64(s.seed ^ 0x5be5u));
    for (auto& v : speech_wave.samples) v *= amp;
  }
  if (mic.occlusion) apply_occlusion(*mic.occlusion, &jam_wave, &speech_wave);
  Recording rec = mix_and_record(mic.model, jam_wave, speech_wave,
                                 mix64(s.seed + mic_i));
  rec.scenario_id = s.id;
  rec.mic_id = mic.id;
  const std::string enc =
      out.contains("encoding") ? out["encoding"].get<std::string>() : "float32";
  if (enc != "float32" && enc != "pcm16")
    throw SchemaError(ctx + ": encoding must be float32 or pcm16");
  sink.add(path_of(out, "path", ctx),
           wav_bytes(rec.audio,
                     enc == "pcm16" ? WavEncoding::pcm16 : WavEncoding::float32),
           ctx);
}

}  // namespace

// ---- recipes ---------------------------------------------------------------

const std::vector<RecipeInfo>& list_recipes() {
  static const std::vector<RecipeInfo> recipes = {
      {"fig3",
       "Angular coverage of the stationary jammers (backdoor_3x3, its single "
       "element, i4): 1 m sweeps plus summary stats",
       {"fig3_backdoor_3x3.csv", "fig3_backdoor_1x1.csv", "fig3_i4.csv",
        "fig3_stats.json"}},
      {"fig6",
       "Simulated jamming power of backdoor_3x3 over a 1 m x 1 m area with "
       "blind-stripe detection",
       {"fig6_map.csv", "fig6_map.pgm", "fig6_blind_report.json"}},
      {"fig7",
       "Static bracelet_24 power maps with 24, 2 and 1 input sources and "
       "blind-spot counts",
       {"fig7_map_24src.csv", "fig7_map_24src.pgm", "fig7_map_2src.csv",
        "fig7_map_2src.pgm", "fig7_map_1src.csv", "fig7_map_1src.pgm",
        "fig7_blind_counts.json"}},
      {"fig9",
       "Single-source bracelet_24 map averaged over 0.4 s windows of random "
       "rotation, next to the static map",
       {"fig9_static_map.csv", "fig9_static_map.pgm", "fig9_motion_map.csv",
        "fig9_motion_map.pgm", "fig9_blind_counts.json"}},
      {"fig11",
       "Angular coverage of the wearable jammer, static versus under random "
       "rotation",
       {"fig11_static_profile.csv", "fig11_motion_profile.csv",
        "fig11_stats.json"}},
      {"fig12",
       "Word-error-rate proxy for a mic in the bracelet blind spot: static "
       "and the point/wave/rotate gestures",
       {"fig12_wer.json"}},
      {"fig14",
       "Jamming and speech degradation for microphones covered by the "
       "occlusion table",
       {"fig14_occlusion.json"}},
  };
  return recipes;
}

std::string recipes_table() {
  std::ostringstream out;
  for (const auto& r : list_recipes()) {
    out << r.id << "\n  " << r.description << "\n  artifacts:";
    for (const auto& a : r.artifacts) out << " " << a;
    out << "\n";
  }
  return out.str();
}

std::string recipes_json() {
  ordered arr = ordered::array();
  for (const auto& r : list_recipes()) {
    ordered e;
    e["id"] = r.id;
    e["description"] = r.description;
    e["artifacts"] = r.artifacts;
    arr.push_back(e);
  }
  return arr.dump(2) + "\n";
}

std::string expand_recipe(const std::string& recipe_id, uint64_t seed) {
  ordered cfg;
  cfg["recipe"] = recipe_id;
  cfg["seed"] = seed;
  ordered scenario;
  ordered outputs = ordered::array();

  auto bench_scenario = [&](const char* preset, double z) {
    ordered s;
    s["seed"] = seed;
    s["jammers"] = ordered::array(
        {ordered{{"preset", preset},
                 {"pose", ordered{{"position", {0.0, 0.0, z}}}}}});
    s["mics"] = ordered::array(
        {ordered{{"pose", ordered{{"position", {0.0, 1.0, kMicPlaneZ}}}}}});
    s["speech"] = ordered{{"position", {0.0, 0.0, kMicPlaneZ}}};
    return s;
  };

  if (recipe_id == "fig3") {
    scenario = bench_scenario("backdoor_3x3", kMicPlaneZ);
    outputs.push_back(ordered{{"kind", "sweep"},
                              {"path", "fig3_backdoor_3x3.csv"},
                              {"radius", 1.0},
                              {"step_deg", 2.0},
                              {"stats_path", "fig3_stats.json"}});
    outputs.push_back(ordered{{"kind", "sweep"},
                              {"path", "fig3_backdoor_1x1.csv"},
                              {"radius", 1.0},
                              {"step_deg", 2.0},
                              {"single_element_index", 4}});
    outputs.push_back(ordered{{"kind", "sweep"},
                              {"path", "fig3_i4.csv"},
                              {"radius", 1.0},
                              {"step_deg", 2.0},
                              {"preset", "i4"}});
  } else if (recipe_id == "fig6") {
    scenario = bench_scenario("backdoor_3x3", kMicPlaneZ);
    outputs.push_back(ordered{
        {"kind", "map"},
        {"path", "fig6_map.csv"},
        {"pgm_path", "fig6_map.pgm"},
        {"blind_report_path", "fig6_blind_report.json"},
        {"grid", ordered{{"origin", {0.0, 0.0}}, {"nx", 101}, {"ny", 101}}}});
  } else if (recipe_id == "fig7") {
    scenario = bench_scenario("bracelet_24", kWristHeight);
    for (int g : {24, 2, 1}) {
      const std::string stem = "fig7_map_" + std::to_string(g) + "src";
      outputs.push_back(ordered{{"kind", "map"},
                                {"path", stem + ".csv"},
                                {"pgm_path", stem + ".pgm"},
                                {"source_groups", g}});
    }
    outputs.push_back(ordered{{"kind", "blind_counts"},
                              {"path", "fig7_blind_counts.json"},
                              {"source_groups_list", {1, 2, 24}}});
  } else if (recipe_id == "fig9") {
    scenario = bench_scenario("bracelet_24", kWristHeight);
    scenario["jammers"][0]["trajectory"] =
        ordered{{"kind", "random_rotation"}, {"duration", 4.0}, {"frame_rate", 100.0}};
    outputs.push_back(ordered{{"kind", "map"},
                              {"path", "fig9_static_map.csv"},
                              {"pgm_path", "fig9_static_map.pgm"}});
    outputs.push_back(ordered{{"kind", "timesim"},
                              {"path", "fig9_motion_map.csv"},
                              {"pgm_path", "fig9_motion_map.pgm"},
                              {"window", 0.4}});
    outputs.push_back(ordered{{"kind", "blind_counts"},
                              {"path", "fig9_blind_counts.json"},
                              {"source_groups_list", {1}}});
  } else if (recipe_id == "fig11") {
    scenario = bench_scenario("bracelet_24", kWristHeight);
    scenario["jammers"][0]["trajectory"] =
        ordered{{"kind", "random_rotation"}, {"duration", 4.0}, {"frame_rate", 100.0}};
    outputs.push_back(ordered{{"kind", "sweep_compare"},
                              {"path", "fig11_static_profile.csv"},
                              {"motion_path", "fig11_motion_profile.csv"},
                              {"stats_path", "fig11_stats.json"},
                              {"radius", 1.0},
                              {"step_deg", 2.0},
                              {"window", 0.4}});
  } else if (recipe_id == "fig12") {
    scenario = bench_scenario("bracelet_24", kWristHeight);
    outputs.push_back(ordered{{"kind", "gesture_wer_suite"},
                              {"path", "fig12_wer.json"},
                              {"duration", 12.0},
                              {"seed", seed}});
  } else if (recipe_id == "fig14") {
    scenario = bench_scenario("bracelet_24", kWristHeight);
    outputs.push_back(ordered{{"kind", "occlusion_suite"},
                              {"path", "fig14_occlusion.json"},
                              {"duration", 12.0},
                              {"seed", seed}});
  } else {
    throw SchemaError("unknown recipe: " + recipe_id);
  }

  cfg["scenario"] = scenario;
  cfg["outputs"] = outputs;
  return cfg.dump(2) + "\n";
}

// ---- run -------------------------------------------------------------------

RunResult run_config_text(const std::string& config_json, const RunOptions& opts) {
  json cfg;
  try {
    cfg = json::parse(config_json);
  } catch (const std::exception& e) {
    throw SchemaError(std::string("run config: ") + e.what());
  }
  if (!cfg.is_object()) throw SchemaError("run config must be an object");
  expect_keys(cfg, "run config", {"recipe", "scenario", "outputs", "seed"});

  if (cfg.contains("recipe") && !cfg.contains("scenario")) {
    // Bare recipe reference: expand and run the concrete config.
    const uint64_t seed = opts.seed_override
                              ? *opts.seed_override
                              : (cfg.contains("seed") ? cfg["seed"].get<uint64_t>()
                                                      : 42);
    RunOptions inner = opts;
    inner.seed_override.reset();
    return run_config_text(expand_recipe(cfg["recipe"].get<std::string>(), seed),
                           inner);
  }
  if (!cfg.contains("scenario")) throw SchemaError("run config: missing 'scenario'");
  if (!cfg.contains("outputs")) throw SchemaError("run config: missing 'outputs'");

  std::optional<uint64_t> seed = opts.seed_override;
  if (!seed && cfg.contains("seed")) seed = cfg["seed"].get<uint64_t>();
  const Scenario scenario = scenario_from_json(cfg["scenario"].dump(), seed);
  {
    const auto violations = validate_scenario(scenario);
    if (!violations.empty()) {
      std::string msg = "scenario invalid:";
      for (const auto& v : violations) msg += " [" + v + "]";
      throw SchemaError(msg);
    }
  }

  ComputeOptions copts;
  copts.threads = opts.threads;

  ArtifactSink sink;
  int i = 0;
  for (const auto& out : cfg["outputs"]) {
    const std::string ctx = "outputs[" + std::to_string(i++) + "]";
    if (!out.is_object() || !out.contains("kind"))
      throw SchemaError(ctx + ": needs a 'kind'");
    const std::string kind = out["kind"].get<std::string>();
    if (kind == "map") {
      run_map_output(scenario, out, ctx, copts, sink);
    } else if (kind == "timesim") {
      run_timesim_output(scenario, out, ctx, copts, sink);
    } else if (kind == "sweep") {
      run_sweep_output(scenario, out, ctx, copts, sink);
    } else if (kind == "sweep_compare") {
      run_sweep_compare_output(scenario, out, ctx, copts, sink);
    } else if (kind == "blind_counts") {
      run_blind_counts_output(scenario, out, ctx, copts, sink);
    } else if (kind == "gesture_wer_suite") {
      run_gesture_wer_output(scenario, out, ctx, sink);
    } else if (kind == "occlusion_suite") {
      run_occlusion_output(scenario, out, ctx, sink);
    } else if (kind == "wer") {
      run_wer_output(scenario, out, ctx, sink);
    } else if (kind == "spl") {
      run_spl_output(scenario, out, ctx, sink);
    } else if (kind == "recording") {
      run_recording_output(scenario, out, ctx, sink);
    } else {
      throw SchemaError(ctx + ": unknown kind '" + kind + "'");
    }
  }

  // Everything computed; write artifacts and the manifest.
  namespace fs = std::filesystem;
  fs::create_directories(opts.out_dir);
  RunResult result;
  ordered manifest;
  manifest["schema"] = "jamfield-manifest-v1";
  manifest["version"] = kVersion;
  if (cfg.contains("recipe")) manifest["recipe"] = cfg["recipe"].get<std::string>();
  manifest["seed"] = seed ? *seed : scenario.seed;
  manifest["config_fnv1a64"] = to_hex(fnv1a64(config_json));
  ordered arts = ordered::array();
  std::vector<Artifact>& artifacts = sink.artifacts();
  std::sort(artifacts.begin(), artifacts.end(),
            [](const Artifact& a, const Artifact& b) { return a.path < b.path; });
  for (const auto& a : artifacts) {
    const fs::path full = fs::path(opts.out_dir) / a.path;
    if (full.has_parent_path()) fs::create_directories(full.parent_path());
    write_file_atomic(full.string(), a.bytes);
    ordered e;
    e["path"] = a.path;
    e["bytes"] = a.bytes.size();
    e["fnv1a64"] = to_hex(fnv1a64(a.bytes));
    arts.push_back(e);
    result.artifact_paths.push_back(a.path);
  }
  manifest["artifacts"] = arts;
  const fs::path manifest_path = fs::path(opts.out_dir) / "manifest.json";
  write_file_atomic(manifest_path.string(), manifest.dump(2) + "\n");
  result.manifest_path = manifest_path.string();
  return result;
}

RunResult run_config_file(const std::string& path, const RunOptions& opts) {
  return run_config_text(read_file(path), opts);
}

RunResult run_recipe(const std::string& recipe_id, const RunOptions& opts) {
  const uint64_t seed = opts.seed_override ? *opts.seed_override : 42;
  RunOptions inner = opts;
  inner.seed_override.reset();
  return run_config_text(expand_recipe(recipe_id, seed), inner);
}

}  // namespace jamfield
