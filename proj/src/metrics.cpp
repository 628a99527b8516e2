#include "jamfield/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "vendor_json.hpp"

#include "jamfield/errors.hpp"

namespace jamfield {

BlindSpotReport detect_blind_spots(const PowerMap& map, double threshold_db,
                                   double neighborhood_radius_m) {
  if (map.nx <= 0 || map.ny <= 0) throw DomainError("blind spots: empty map");
  if (neighborhood_radius_m < std::min(map.dx, map.dy))
    throw DomainError("blind spots: neighborhood smaller than one cell");

  BlindSpotReport report;
  report.threshold_db = threshold_db;
  report.neighborhood_radius_m = neighborhood_radius_m;

  const int rx = static_cast<int>(std::floor(neighborhood_radius_m / map.dx));
  const int ry = static_cast<int>(std::floor(neighborhood_radius_m / map.dy));
  const double r2 = neighborhood_radius_m * neighborhood_radius_m;

  std::vector<int> cell_of(static_cast<std::size_t>(map.nx) * map.ny, -1);
  std::vector<double> nb;
  nb.reserve(static_cast<std::size_t>(2 * rx + 1) * (2 * ry + 1));
  for (int iy = 0; iy < map.ny; ++iy) {
    for (int ix = 0; ix < map.nx; ++ix) {
      const double v = map.at(ix, iy);
      if (std::isnan(v)) continue;
      nb.clear();
      for (int jy = std::max(0, iy - ry); jy <= std::min(map.ny - 1, iy + ry); ++jy)
        for (int jx = std::max(0, ix - rx); jx <= std::min(map.nx - 1, ix + rx); ++jx) {
          if (jx == ix && jy == iy) continue;
          const double ddx = (jx - ix) * map.dx;
          const double ddy = (jy - iy) * map.dy;
          if (ddx * ddx + ddy * ddy > r2) continue;
          const double w = map.at(jx, jy);
          if (!std::isnan(w)) nb.push_back(w);
        }
      if (nb.empty()) continue;
      const std::size_t mid = nb.size() / 2;
      std::nth_element(nb.begin(), nb.begin() + mid, nb.end());
      double median = nb[mid];
      if (nb.size() % 2 == 0) {
        const double lower = *std::max_element(nb.begin(), nb.begin() + mid);
        median = 0.5 * (median + lower);
      }
      if (v <= median - threshold_db) {
        cell_of[iy * map.nx + ix] = static_cast<int>(report.cells.size());
        report.cells.push_back({ix, iy, map.x_at(ix), map.y_at(iy), median - v});
      }
    }
  }

  // 8-connected components over the flagged cells.
  std::vector<char> seen(report.cells.size(), 0);
  for (std::size_t c = 0; c < report.cells.size(); ++c) {
    if (seen[c]) continue;
    BlindSpotRegion region;
    std::vector<int> stack = {static_cast<int>(c)};
    seen[c] = 1;
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      region.cell_indices.push_back(cur);
      const auto& cell = report.cells[cur];
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int jx = cell.ix + dx, jy = cell.iy + dy;
          if (jx < 0 || jy < 0 || jx >= map.nx || jy >= map.ny) continue;
          const int other = cell_of[jy * map.nx + jx];
          if (other >= 0 && !seen[other]) {
            seen[other] = 1;
            stack.push_back(other);
          }
        }
    }
    std::sort(region.cell_indices.begin(), region.cell_indices.end());
    region.area_m2 = region.cell_indices.size() * map.dx * map.dy;
    report.regions.push_back(std::move(region));
  }
  return report;
}

CoverageStats coverage_stats(const AngularProfile& profile) {
  const std::size_t n = profile.values_db.size();
  if (n < 8) throw DomainError("coverage stats need at least 8 samples");
  CoverageStats st;
  double sum = 0.0;
  st.min_db = profile.values_db.front();
  std::size_t above = 0;
  for (double v : profile.values_db) {
    sum += v;
    st.min_db = std::min(st.min_db, v);
    if (v > -10.0) ++above;
  }
  st.mean_db = sum / n;
  double var = 0.0;
  for (double v : profile.values_db) var += (v - st.mean_db) * (v - st.mean_db);
  st.std_db = std::sqrt(var / n);
  st.frac_above_minus10 = static_cast<double>(above) / n;
  return st;
}

std::vector<bool> word_disruption(const SJRSeries& sjr, double word_duration_s,
                                  double tau_db, double rho) {
  if (sjr.sjr_db.empty()) throw DomainError("word disruption: empty series");
  if (sjr.times_s.size() < 2) throw DomainError("word disruption: series too short");
  const double dt = sjr.times_s[1] - sjr.times_s[0];
  const std::size_t frames_per_word = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(word_duration_s / dt)));
  if (sjr.sjr_db.size() < frames_per_word)
    throw DomainError("word disruption: series shorter than one word");
  const std::size_t words = sjr.sjr_db.size() / frames_per_word;
  std::vector<bool> out(words);
  for (std::size_t w = 0; w < words; ++w) {
    std::size_t hot = 0;
    for (std::size_t f = 0; f < frames_per_word; ++f)
      if (sjr.sjr_db[w * frames_per_word + f] > tau_db) ++hot;
    out[w] = static_cast<double>(hot) >=
             rho * static_cast<double>(frames_per_word) - 1e-12;
  }
  return out;
}

WerEstimate wer_proxy(const std::vector<bool>& disrupted, double tau_db,
                      double rho, double baseline) {
  if (disrupted.empty()) throw DomainError("wer proxy: no words");
  WerEstimate est;
  est.total_words = static_cast<int>(disrupted.size());
  est.disrupted_words =
      static_cast<int>(std::count(disrupted.begin(), disrupted.end(), true));
  est.tau_db = tau_db;
  est.rho = rho;
  est.baseline = baseline;
  const double frac = static_cast<double>(est.disrupted_words) / est.total_words;
  est.wer = std::clamp(baseline + (1.0 - baseline) * frac, 0.0, 1.0);
  return est;
}

namespace {

Scenario rotate_mic_about_jammer(const Scenario& s, double delta_deg) {
  Scenario out = s;
  const Vec3 c = jammer_centroid(out.jammers.front());
  Vec3& mp = out.mics.front().pose.position;
  const Vec3 rel{mp.x - c.x, mp.y - c.y, 0.0};
  const Vec3 rot = rotate_z(rel, deg_to_rad(delta_deg));
  mp = {c.x + rot.x, c.y + rot.y, mp.z};
  return out;
}

}  // namespace

WerEstimate static_wer(const Scenario& s, std::size_t mic_index, double tau_db,
                       double duration_s, double rho, double baseline) {
  const double word =
      s.speech ? s.speech->word_duration : 0.4;
  Trajectory traj;
  traj.frame_rate = 100.0;
  traj.kind = TrajectoryKind::static_pose;
  const std::size_t n = static_cast<std::size_t>(std::lround(duration_s * 100.0));
  traj.frames.assign(n, s.jammers.front().pose);
  const auto series = sjr_timeseries(s, traj, mic_index);
  return wer_proxy(word_disruption(series, word, tau_db, rho), tau_db, rho, baseline);
}

TauCalibration calibrate_tau(const Scenario& scenario_onaxis, double target_wer) {
  if (scenario_onaxis.jammers.empty() || scenario_onaxis.mics.empty())
    throw DomainError("calibration scenario needs a jammer and a mic");
  TauCalibration cal;
  cal.onaxis_sjr_db = static_sjr_db(scenario_onaxis, 0);
  const Scenario guard = rotate_mic_about_jammer(scenario_onaxis, 50.0);
  cal.guard_sjr_db = static_sjr_db(guard, 0);

  const double baseline = 0.30;
  auto wer_at = [&](const Scenario& sc, double tau) {
    return static_wer(sc, 0, tau, 4.8, 0.5, baseline).wer;
  };

  if (cal.guard_sjr_db >= cal.onaxis_sjr_db) {
    // Degenerate geometry: no tau separates the anchors.
    cal.attainable = false;
    cal.tau_db = cal.onaxis_sjr_db - 0.1;
    cal.achievable_max_wer = wer_at(scenario_onaxis, cal.tau_db);
    cal.onaxis_wer = cal.achievable_max_wer;
    return cal;
  }

  // Feasible taus form the open interval (guard, onaxis); binary-search its
  // lower edge at 0.1 dB resolution.
  double lo = cal.guard_sjr_db, hi = cal.onaxis_sjr_db;
  auto feasible = [&](double tau) {
    return wer_at(scenario_onaxis, tau) >= target_wer &&
           wer_at(guard, tau) <= baseline + 0.15;
  };
  while (hi - lo > 0.05) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid))
      hi = mid;
    else
      lo = mid;
  }
  cal.tau_db = std::round(hi * 10.0) / 10.0;
  if (!feasible(cal.tau_db)) cal.tau_db += 0.1;
  cal.onaxis_wer = wer_at(scenario_onaxis, cal.tau_db);
  cal.achievable_max_wer = cal.onaxis_wer;
  cal.attainable = cal.onaxis_wer >= target_wer;
  return cal;
}

double speech_quality_proxy(double sjr_mean_db) {
  // Fixed endpoints: -40 dB (no jamming) -> 4.5, +40 dB -> -0.5.
  const double t = std::clamp((sjr_mean_db + 40.0) / 80.0, 0.0, 1.0);
  return 4.5 - 5.0 * t;
}

std::string blind_report_to_json(const BlindSpotReport& report) {
  nlohmann::ordered_json j;
  j["threshold_db"] = report.threshold_db;
  j["neighborhood_radius_m"] = report.neighborhood_radius_m;
  j["cell_count"] = report.cells.size();
  j["region_count"] = report.regions.size();
  auto regions = nlohmann::ordered_json::array();
  for (const auto& r : report.regions) {
    nlohmann::ordered_json e;
    e["cells"] = r.cell_indices.size();
    e["area_m2"] = r.area_m2;
    regions.push_back(e);
  }
  j["regions"] = regions;
  auto cells = nlohmann::ordered_json::array();
  for (const auto& c : report.cells) {
    nlohmann::ordered_json e;
    e["x"] = c.x;
    e["y"] = c.y;
    e["depth_db"] = c.depth_db;
    cells.push_back(e);
  }
  j["cells"] = cells;
  return j.dump(2) + "\n";
}

std::string coverage_stats_to_json(const CoverageStats& stats) {
  nlohmann::ordered_json j;
  j["mean_db"] = stats.mean_db;
  j["std_db"] = stats.std_db;
  j["min_db"] = stats.min_db;
  j["frac_above_minus10"] = stats.frac_above_minus10;
  return j.dump(2) + "\n";
}

std::string wer_to_json(const WerEstimate& wer) {
  nlohmann::ordered_json j;
  j["wer"] = wer.wer;
  j["disrupted_words"] = wer.disrupted_words;
  j["total_words"] = wer.total_words;
  j["tau_db"] = wer.tau_db;
  j["rho"] = wer.rho;
  j["baseline"] = wer.baseline;
  return j.dump(2) + "\n";
}

GestureWerResult gesture_wer_suite(double duration_s, uint64_t seed) {
  GestureWerResult out;
  out.calibration = calibrate_tau(make_bench_scenario(PresetId::backdoor_3x3, 0.0));

  Scenario bench = make_bench_scenario(PresetId::bracelet_24, 0.0);
  const auto profile = angular_sweep(bench, 1.0, 1.0);
  std::size_t deepest = 0;
  for (std::size_t i = 1; i < profile.values_db.size(); ++i)
    if (profile.values_db[i] < profile.values_db[deepest]) deepest = i;
  out.blind_angle_deg = profile.angles_deg[deepest];

  Scenario s = make_bench_scenario(PresetId::bracelet_24, out.blind_angle_deg);
  out.blind_sjr_db = static_sjr_db(s, 0);
  out.static_wer = static_wer(s, 0, out.calibration.tau_db, duration_s);

  const std::pair<const char*, TrajectoryKind> kinds[] = {
      {"point", TrajectoryKind::point},
      {"wave", TrajectoryKind::wave},
      {"rotate", TrajectoryKind::rotate},
  };
  const double word = s.speech ? s.speech->word_duration : 0.4;
  for (const auto& [name, kind] : kinds) {
    const auto traj = gen_gesture_trajectory(kind, duration_s, 100.0, seed,
                                             s.jammers.front().pose);
    const auto series = sjr_timeseries(s, traj, 0);
    const auto words = word_disruption(series, word, out.calibration.tau_db, 0.5);
    out.gesture_wer.emplace_back(
        name, wer_proxy(words, out.calibration.tau_db, 0.5, 0.30));
  }
  return out;
}

Scenario make_bench_scenario(PresetId preset, double mic_angle_deg,
                             double mic_radius_m, int source_groups) {
  Scenario s;
  JammerConfig j = build_preset(preset);
  if (source_groups > 1) assign_source_groups(j, source_groups);
  const bool wearable =
      preset == PresetId::bracelet_12 || preset == PresetId::bracelet_24;
  j.pose.position = {0.0, 0.0, wearable ? kWristHeight : kMicPlaneZ};
  s.jammers.push_back(std::move(j));

  MicPlacement mic;
  const Vec3 dir = direction_from_angles(deg_to_rad(mic_angle_deg), 0.0);
  mic.pose.position = {mic_radius_m * dir.x, mic_radius_m * dir.y, kMicPlaneZ};
  mic.id = "mic0";
  s.mics.push_back(std::move(mic));

  SpeechSource speech;
  speech.position = {0.0, 0.0, kMicPlaneZ};
  s.speech = speech;
  return s;
}

}  // namespace jamfield
