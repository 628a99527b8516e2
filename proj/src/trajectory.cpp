#include "jamfield/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "jamfield/errors.hpp"
#include "jamfield/rng.hpp"

namespace jamfield {

TrajectoryKind trajectory_kind_from_string(const std::string& s) {
  if (s == "static") return TrajectoryKind::static_pose;
  if (s == "point") return TrajectoryKind::point;
  if (s == "wave") return TrajectoryKind::wave;
  if (s == "rotate") return TrajectoryKind::rotate;
  if (s == "walk") return TrajectoryKind::walk;
  if (s == "random_rotation") return TrajectoryKind::random_rotation;
  if (s == "imported") return TrajectoryKind::imported;
  throw SchemaError("unknown trajectory kind: " + s);
}

std::string to_string(TrajectoryKind k) {
  switch (k) {
    case TrajectoryKind::static_pose: return "static";
    case TrajectoryKind::point: return "point";
    case TrajectoryKind::wave: return "wave";
    case TrajectoryKind::rotate: return "rotate";
    case TrajectoryKind::walk: return "walk";
    case TrajectoryKind::random_rotation: return "random_rotation";
    case TrajectoryKind::imported: return "imported";
  }
  return "static";
}

namespace {

std::size_t frame_count(double duration_s, double frame_rate) {
  return static_cast<std::size_t>(std::lround(duration_s * frame_rate)) + 1;
}

// Ornstein-Uhlenbeck yaw offsets on a fixed 50 Hz control grid, reflected at
// the amplitude bound.
std::vector<double> ou_control_points(double duration_s, uint64_t seed,
                                      const GestureParams& p) {
  const double ctrl_rate = 50.0;
  const std::size_t n = frame_count(duration_s, ctrl_rate);
  const double dt = 1.0 / ctrl_rate;
  const double decay = std::exp(-dt / p.random_tau_s);
  const double sigma = deg_to_rad(p.random_sigma_deg);
  const double bound = deg_to_rad(p.random_amplitude_deg);
  const double step_std = sigma * std::sqrt(1.0 - decay * decay);
  CounterRng rng(seed, /*stream=*/0x0bea7u);
  std::vector<double> yaw(n);
  double v = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    yaw[i] = v;
    v = v * decay + step_std * rng.gaussian(i);
    if (v > bound) v = 2.0 * bound - v;
    if (v < -bound) v = -2.0 * bound - v;
    v = std::clamp(v, -bound, bound);
  }
  return yaw;
}

double interp_control(const std::vector<double>& ctrl, double ctrl_rate, double t) {
  const double ft = t * ctrl_rate;
  const std::size_t i0 = std::min<std::size_t>(
      ctrl.size() - 1, static_cast<std::size_t>(std::floor(ft)));
  const std::size_t i1 = std::min<std::size_t>(ctrl.size() - 1, i0 + 1);
  const double f = std::clamp(ft - static_cast<double>(i0), 0.0, 1.0);
  return ctrl[i0] + f * (ctrl[i1] - ctrl[i0]);
}

}  // namespace

Trajectory gen_gesture_trajectory(TrajectoryKind kind, double duration_s,
                                  double frame_rate, uint64_t seed,
                                  const Pose& base, const GestureParams& p) {
  if (!(duration_s > 0.0)) throw DomainError("trajectory duration must be > 0");
  if (!(frame_rate > 0.0)) throw DomainError("trajectory frame rate must be > 0");
  if (kind == TrajectoryKind::walk || kind == TrajectoryKind::imported)
    throw DomainError("gen_gesture_trajectory: unsupported kind " + to_string(kind));

  Trajectory traj;
  traj.frame_rate = frame_rate;
  traj.kind = kind;
  const std::size_t n = frame_count(duration_s, frame_rate);
  traj.frames.reserve(n);

  std::vector<double> ou;
  if (kind == TrajectoryKind::random_rotation) ou = ou_control_points(duration_s, seed, p);

  for (std::size_t i = 0; i < n; ++i) {
    const double t = i / frame_rate;
    Pose f = base;
    switch (kind) {
      case TrajectoryKind::static_pose:
        break;
      case TrajectoryKind::point:
        f.yaw += deg_to_rad(p.point_yaw_deg) *
                 std::sin(2.0 * M_PI * p.point_rate_hz * t);
        break;
      case TrajectoryKind::wave: {
        const double phase = 2.0 * M_PI * p.wave_rate_hz * t;
        f.yaw += deg_to_rad(p.wave_yaw_deg) * std::sin(phase);
        // lateral slide perpendicular to the initial boresight
        const Vec3 lateral = rotate_z(Vec3{1.0, 0.0, 0.0}, base.yaw);
        f.position = f.position + lateral * (p.wave_lateral_m * std::cos(phase));
        break;
      }
      case TrajectoryKind::rotate: {
        // wrist roll as ring-axis precession: the axis traces a cone whose
        // half-angle ramps up to the bound while the tilt direction rotates
        const double phase = 2.0 * M_PI * p.rotate_rate_hz * t;
        const double cone =
            deg_to_rad(p.rotate_pitch_deg) * std::sin(0.5 * phase);
        f.pitch += cone;
        f.yaw += phase;  // tilt direction (and ring spin) precesses
        break;
      }
      case TrajectoryKind::random_rotation:
        f.yaw += interp_control(ou, 50.0, t);
        break;
      default:
        break;
    }
    f.normalize();
    traj.frames.push_back(f);
  }
  return traj;
}

Trajectory gen_walk_trajectory(double path_length_m, double speed_mps,
                               double frame_rate, const Pose& base,
                               double duration_s) {
  if (!(speed_mps > 0.0)) throw DomainError("walk speed must be > 0");
  if (!(frame_rate > 0.0)) throw DomainError("trajectory frame rate must be > 0");
  if (path_length_m < 0.0) throw DomainError("walk path length must be >= 0");
  path_length_m = std::min(path_length_m, 0.8);
  const double leg = path_length_m > 0.0 ? path_length_m / speed_mps : 0.0;
  if (duration_s <= 0.0) duration_s = std::max(2.0 * leg, 1.0);

  Trajectory traj;
  traj.frame_rate = frame_rate;
  traj.kind = TrajectoryKind::walk;
  const std::size_t n = frame_count(duration_s, frame_rate);
  traj.frames.reserve(n);
  const Vec3 dir = rotate_z(Vec3{1.0, 0.0, 0.0}, base.yaw);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = i / frame_rate;
    Pose f = base;
    if (leg > 0.0) {
      const double cycle = std::fmod(t, 2.0 * leg);
      const double s = cycle < leg ? cycle * speed_mps
                                   : (2.0 * leg - cycle) * speed_mps;
      f.position = f.position + dir * s;
      f.yaw += deg_to_rad(20.0) * std::sin(2.0 * M_PI * 1.0 * t);  // arm swing
    }
    f.normalize();
    traj.frames.push_back(f);
  }
  return traj;
}

Pose pose_at(const Trajectory& traj, double t) {
  if (traj.frames.empty()) throw DomainError("pose_at: empty trajectory");
  const double dur = traj.duration();
  if (t < -1e-12 || t > dur + 1e-12)
    throw DomainError("pose_at: time outside the trajectory");
  t = std::clamp(t, 0.0, dur);
  const double ft = t * traj.frame_rate;
  const std::size_t i0 = std::min<std::size_t>(
      traj.frames.size() - 1, static_cast<std::size_t>(std::floor(ft)));
  const std::size_t i1 = std::min<std::size_t>(traj.frames.size() - 1, i0 + 1);
  const double f = std::clamp(ft - static_cast<double>(i0), 0.0, 1.0);
  const Pose& a = traj.frames[i0];
  const Pose& b = traj.frames[i1];
  Pose out;
  out.position = a.position + (b.position - a.position) * f;

  // slerp between the boresight directions
  const Vec3 da = a.boresight();
  const Vec3 db = b.boresight();
  const double c = std::clamp(da.dot(db), -1.0, 1.0);
  const double ang = std::acos(c);
  Vec3 d;
  if (ang < 1e-9) {
    d = da;
  } else {
    const double sa = std::sin((1.0 - f) * ang) / std::sin(ang);
    const double sb = std::sin(f * ang) / std::sin(ang);
    d = da * sa + db * sb;
  }
  out.yaw = std::atan2(d.x, d.y);
  out.pitch = std::atan2(d.z, std::hypot(d.x, d.y));
  out.normalize();
  return out;
}

std::string trajectory_to_csv(const Trajectory& traj) {
  std::ostringstream out;
  out << "t,x,y,z,yaw_deg,pitch_deg\n";
  char line[160];
  for (std::size_t i = 0; i < traj.frames.size(); ++i) {
    const Pose& f = traj.frames[i];
    std::snprintf(line, sizeof(line), "%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                  i / traj.frame_rate, f.position.x, f.position.y, f.position.z,
                  rad_to_deg(f.yaw), rad_to_deg(f.pitch));
    out << line;
  }
  return out.str();
}

Trajectory trajectory_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,x,y,z", 0) != 0)
    throw SchemaError("trajectory CSV must start with header t,x,y,z,yaw_deg,pitch_deg");
  Trajectory traj;
  traj.kind = TrajectoryKind::imported;
  std::vector<double> times;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double t, x, y, z, yaw_deg, pitch_deg;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &t, &x, &y, &z,
                    &yaw_deg, &pitch_deg) != 6)
      throw SchemaError("trajectory CSV: malformed row '" + line + "'");
    times.push_back(t);
    Pose p;
    p.position = {x, y, z};
    p.yaw = deg_to_rad(yaw_deg);
    p.pitch = deg_to_rad(pitch_deg);
    p.normalize();
    traj.frames.push_back(p);
  }
  if (traj.frames.empty()) throw SchemaError("trajectory CSV has no frames");
  if (times.size() >= 2) {
    const double dt = times[1] - times[0];
    if (!(dt > 0.0)) throw SchemaError("trajectory CSV times must increase");
    for (std::size_t i = 1; i < times.size(); ++i)
      if (std::fabs(times[i] - times[i - 1] - dt) > 1e-6)
        throw SchemaError("trajectory CSV requires uniform frame spacing");
    traj.frame_rate = 1.0 / dt;
  }
  return traj;
}

}  // namespace jamfield
