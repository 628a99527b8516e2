#include "jamfield/motion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jamfield/capture.hpp"
#include "jamfield/errors.hpp"
#include "jamfield/util.hpp"

namespace jamfield {

namespace {

// Per-point median across windows of per-window mean linear power.
std::vector<double> windowed_median_power(const Scenario& s,
                                          const Trajectory& traj, double window_s,
                                          const std::vector<Vec3>& points,
                                          const ComputeOptions& opts) {
  if (traj.frames.empty()) throw DomainError("trajectory has no frames");
  if (!(window_s > 0.0)) throw DomainError("window must be > 0");
  const double duration = traj.duration();
  if (window_s > duration + 1e-9 && duration > 0.0)
    throw DomainError("window longer than the trajectory");

  const std::size_t frames_per_window = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(window_s * traj.frame_rate)));
  const std::size_t n_windows =
      std::max<std::size_t>(1, traj.frames.size() / frames_per_window);
  const std::size_t n_frames = n_windows * frames_per_window;

  const std::size_t n_pts = points.size();
  std::vector<double> sums(n_windows * n_pts, 0.0);
  std::vector<Pose> poses(s.jammers.size());
  for (std::size_t ji = 0; ji < s.jammers.size(); ++ji) poses[ji] = s.jammers[ji].pose;

  for (std::size_t f = 0; f < n_frames; ++f) {
    const std::size_t fi = std::min(f, traj.frames.size() - 1);
    poses[0] = traj.frames[fi];
    FieldScene scene(s, poses);
    const std::size_t w = f / frames_per_window;
    double* row = &sums[w * n_pts];
    parallel_for(n_pts, opts.threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t p = lo; p < hi; ++p)
        row[p] += scene.power_linear_at(points[p]);
    });
  }

  std::vector<double> out(n_pts);
  std::vector<double> scratch(n_windows);
  const double inv = 1.0 / static_cast<double>(frames_per_window);
  for (std::size_t p = 0; p < n_pts; ++p) {
    for (std::size_t w = 0; w < n_windows; ++w) scratch[w] = sums[w * n_pts + p] * inv;
    std::sort(scratch.begin(), scratch.end());
    out[p] = n_windows % 2 == 1
                 ? scratch[n_windows / 2]
                 : 0.5 * (scratch[n_windows / 2 - 1] + scratch[n_windows / 2]);
  }
  return out;
}

}  // namespace

PowerMap time_averaged_map(const Scenario& s, const Trajectory& traj,
                           double window_s, const GridSpec& grid,
                           const ComputeOptions& opts) {
  if (grid.nx <= 0 || grid.ny <= 0) throw DomainError("power map grid is empty");
  if (s.jammers.empty()) throw DomainError("power map needs at least one jammer");

  std::vector<Vec3> points;
  points.reserve(static_cast<std::size_t>(grid.nx) * grid.ny);
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix)
      points.push_back({grid.x_at(ix), grid.y_at(iy), grid.z});

  // Exclusion follows the trajectory: a cell is unset if any frame brings a
  // jammer centroid within the near-field radius.
  std::vector<char> excluded(points.size(), 0);
  std::vector<Pose> poses(s.jammers.size());
  for (std::size_t ji = 0; ji < s.jammers.size(); ++ji) poses[ji] = s.jammers[ji].pose;
  std::vector<Vec3> centroids;
  for (const auto& f : traj.frames) {
    poses[0] = f;
    centroids.clear();
    for (std::size_t ji = 0; ji < s.jammers.size(); ++ji)
      centroids.push_back(jammer_centroid(s.jammers[ji], poses[ji]));
    for (std::size_t p = 0; p < points.size(); ++p) {
      if (excluded[p]) continue;
      for (const auto& c : centroids)
        if (std::hypot(points[p].x - c.x, points[p].y - c.y) < kNearFieldExclusion) {
          excluded[p] = 1;
          break;
        }
    }
  }

  const auto median_power = windowed_median_power(s, traj, window_s, points, opts);

  PowerMap map;
  map.origin_x = grid.origin_x;
  map.origin_y = grid.origin_y;
  map.dx = grid.dx;
  map.dy = grid.dy;
  map.nx = grid.nx;
  map.ny = grid.ny;
  map.z = grid.z;
  map.values_db.assign(points.size(), std::numeric_limits<double>::quiet_NaN());
  double peak = 0.0;
  for (std::size_t p = 0; p < points.size(); ++p)
    if (!excluded[p]) peak = std::max(peak, median_power[p]);
  if (!(peak > 0.0)) throw DomainError("time-averaged map has no usable cells");
  for (std::size_t p = 0; p < points.size(); ++p)
    if (!excluded[p]) map.values_db[p] = db_from_power(median_power[p] / peak);
  return map;
}

AngularProfile motion_averaged_profile(const Scenario& s, const Trajectory& traj,
                                       double radius_m, double step_deg,
                                       double window_s, double ring_z,
                                       const ComputeOptions& opts) {
  if (!(radius_m > 0.0)) throw DomainError("sweep radius must be > 0");
  if (!(step_deg > 0.0)) throw DomainError("sweep step must be > 0");
  if (s.jammers.empty()) throw DomainError("sweep needs at least one jammer");

  const Vec3 center = jammer_centroid(s.jammers.front());
  const double yaw0 = s.jammers.front().pose.yaw;
  AngularProfile prof;
  prof.radius = radius_m;
  std::vector<Vec3> points;
  const int count = static_cast<int>(std::floor(180.0 / step_deg + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) {
    const double alpha = i * step_deg;
    prof.angles_deg.push_back(alpha);
    const Vec3 dir = direction_from_angles(yaw0 + deg_to_rad(alpha), 0.0);
    points.push_back({center.x + radius_m * dir.x, center.y + radius_m * dir.y, ring_z});
  }
  const auto median_power = windowed_median_power(s, traj, window_s, points, opts);
  const double ref = median_power[0];
  if (!(ref > 0.0)) throw DomainError("sweep reference sample has zero power");
  prof.values_db.resize(count);
  for (int i = 0; i < count; ++i)
    prof.values_db[i] = db_from_power(median_power[i] / ref);
  return prof;
}

SJRSeries sjr_timeseries(const Scenario& s, const Trajectory& traj,
                         std::size_t mic_index) {
  if (mic_index >= s.mics.size()) throw DomainError("mic index out of range");
  if (!s.speech) throw DomainError("scenario has no speech source");
  const MicPlacement& mic = s.mics[mic_index];
  const double m = s.jammers.empty() ? 1.0 : s.jammers.front().signal.modulation_depth;

  // Audible path: spherical spreading only; atmospheric absorption at speech
  // frequencies is negligible at room scale.
  const double r_speech = (mic.pose.position - s.speech->position).norm();
  if (!(r_speech > 0.0)) throw DomainError("speech source coincides with the mic");
  double speech_level = s.speech->level_dba_at_1m - 20.0 * std::log10(r_speech);
  if (mic.occlusion) speech_level -= mic.occlusion->atten_audible_db;
  const double speech_rec_db =
      recorded_speech_power_db(mic.model, speech_level - kSplReferenceDb);

  std::vector<Pose> poses(s.jammers.size());
  for (std::size_t ji = 0; ji < s.jammers.size(); ++ji) poses[ji] = s.jammers[ji].pose;

  SJRSeries series;
  series.times_s.reserve(traj.frames.size());
  series.sjr_db.reserve(traj.frames.size());
  for (std::size_t f = 0; f < traj.frames.size(); ++f) {
    poses[0] = traj.frames[f];
    FieldScene scene(s, poses);
    double jam_power = scene.power_linear_at(mic.pose.position);
    double jam_db = db_from_power(jam_power);
    if (mic.occlusion) jam_db -= mic.occlusion->atten_ultrasonic_db;
    const double jam_rec_db = recorded_jam_power_db(mic.model, m, jam_db);
    series.times_s.push_back(f / traj.frame_rate);
    series.sjr_db.push_back(jam_rec_db - speech_rec_db);
  }
  return series;
}

double static_sjr_db(const Scenario& s, std::size_t mic_index) {
  if (s.jammers.empty()) throw DomainError("scenario has no jammer");
  Trajectory one;
  one.frame_rate = 1.0;
  one.kind = TrajectoryKind::static_pose;
  one.frames = {s.jammers.front().pose};
  return sjr_timeseries(s, one, mic_index).sjr_db.front();
}

}  // namespace jamfield
