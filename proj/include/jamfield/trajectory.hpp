#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jamfield/geometry.hpp"

namespace jamfield {

enum class TrajectoryKind {
  static_pose,
  point,
  wave,
  rotate,
  walk,
  random_rotation,
  imported,
};

TrajectoryKind trajectory_kind_from_string(const std::string& s);
std::string to_string(TrajectoryKind k);

struct Trajectory {
  double frame_rate = 100.0;  // Hz
  std::vector<Pose> frames;   // jammer centroid pose per frame
  TrajectoryKind kind = TrajectoryKind::static_pose;

  double duration() const {
    return frames.empty() ? 0.0 : (frames.size() - 1) / frame_rate;
  }
};

// Gesture kinematics. The paper names the gestures; the amplitudes and rates
// here are stand-ins and stay configurable.
struct GestureParams {
  double point_yaw_deg = 30.0;
  double point_rate_hz = 0.5;
  double wave_yaw_deg = 45.0;
  double wave_rate_hz = 1.0;
  double wave_lateral_m = 0.02;
  double rotate_pitch_deg = 45.0;
  double rotate_yaw_deg = 15.0;
  double rotate_rate_hz = 0.5;
  double random_amplitude_deg = 45.0;  // hard bound on |yaw - initial yaw|
  double random_tau_s = 0.4;           // OU relaxation time
  double random_sigma_deg = 22.0;      // OU stationary std
};

// Stochastic kinds are generated on a fixed 50 Hz control grid from the seed
// and then sampled at frame_rate, so changing frame_rate does not change the
// underlying path.
Trajectory gen_gesture_trajectory(TrajectoryKind kind, double duration_s,
                                  double frame_rate, uint64_t seed,
                                  const Pose& base,
                                  const GestureParams& params = {});

// Back-and-forth segment through base with sinusoidal arm swing; every
// position stays within 0.8 m of base.
Trajectory gen_walk_trajectory(double path_length_m, double speed_mps,
                               double frame_rate, const Pose& base,
                               double duration_s = 0.0);

// Linear interpolation of position, spherical interpolation of orientation.
Pose pose_at(const Trajectory& traj, double t);

std::string trajectory_to_csv(const Trajectory& traj);
Trajectory trajectory_from_csv(const std::string& text);

}  // namespace jamfield
