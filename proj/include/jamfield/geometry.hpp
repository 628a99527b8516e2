#pragma once

#include <cmath>

namespace jamfield {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

// Wrap an angle to (-pi, pi].
inline double normalize_angle(double a) {
  const double two_pi = 2.0 * M_PI;
  a = std::fmod(a, two_pi);
  if (a <= -M_PI) a += two_pi;
  if (a > M_PI) a -= two_pi;
  return a;
}

inline double deg_to_rad(double d) { return d * M_PI / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / M_PI; }

// Boresight for yaw = pitch = 0 points along +y; yaw rotates toward +x,
// pitch tilts toward +z.
inline Vec3 direction_from_angles(double yaw, double pitch) {
  const double cp = std::cos(pitch);
  return {std::sin(yaw) * cp, std::cos(yaw) * cp, std::sin(pitch)};
}

struct Pose {
  Vec3 position;
  double yaw = 0.0;    // radians, (-pi, pi]
  double pitch = 0.0;  // radians, (-pi, pi]

  Vec3 boresight() const { return direction_from_angles(yaw, pitch); }
  void normalize() {
    yaw = normalize_angle(yaw);
    pitch = normalize_angle(pitch);
  }
};

// Rotation taking the local +y axis onto direction_from_angles(yaw, pitch):
// pitch about local x first, then yaw about z.
inline Vec3 rotate_by(double yaw, double pitch, const Vec3& v) {
  const double cp = std::cos(pitch), sp = std::sin(pitch);
  const Vec3 p{v.x, cp * v.y - sp * v.z, sp * v.y + cp * v.z};
  const double cy = std::cos(yaw), sy = std::sin(yaw);
  return {cy * p.x + sy * p.y, -sy * p.x + cy * p.y, p.z};
}

inline Vec3 rotate_z(const Vec3& v, double yaw) { return rotate_by(yaw, 0.0, v); }

// World pose of `local` expressed in the frame `frame`.
inline Pose compose(const Pose& frame, const Pose& local) {
  Pose out;
  out.position = frame.position + rotate_by(frame.yaw, frame.pitch, local.position);
  const Vec3 d = rotate_by(frame.yaw, frame.pitch, local.boresight());
  out.yaw = std::atan2(d.x, d.y);
  const double h = std::hypot(d.x, d.y);
  out.pitch = std::atan2(d.z, h);
  out.normalize();
  return out;
}

}  // namespace jamfield
