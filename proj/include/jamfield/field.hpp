#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jamfield/scenario.hpp"

namespace jamfield {

struct ComputeOptions {
  int threads = 1;  // 0 -> JAMFIELD_THREADS / hardware default
};

struct FieldPoint {
  // One complex amplitude per source group, in normalized pressure units
  // (94 dB SPL <-> 1.0). Groups are (jammer, source_id) pairs flattened in
  // declaration order.
  std::vector<std::complex<double>> group_amplitudes;
  double total_power_db = 0.0;  // 10 log10(sum |amp|^2)

  double total_power_linear() const;
};

struct GridSpec {
  double origin_x = -0.5;
  double origin_y = -0.5;
  double dx = 0.01;
  double dy = 0.01;
  int nx = 101;
  int ny = 101;
  double z = kMicPlaneZ;

  double x_at(int ix) const { return origin_x + ix * dx; }
  double y_at(int iy) const { return origin_y + iy * dy; }
};

struct PowerMap {
  double origin_x = 0.0, origin_y = 0.0;
  double dx = 0.0, dy = 0.0;
  int nx = 0, ny = 0;
  double z = 0.0;
  // Row-major [iy * nx + ix], dB normalized so the maximum cell is 0 dB;
  // NaN marks unset (near-field excluded) cells.
  std::vector<double> values_db;

  double x_at(int ix) const { return origin_x + ix * dx; }
  double y_at(int iy) const { return origin_y + iy * dy; }
  double at(int ix, int iy) const { return values_db[iy * nx + ix]; }
};

struct AngularProfile {
  double radius = 1.0;
  std::vector<double> angles_deg;
  std::vector<double> values_db;  // normalized to the alpha = 0 sample
};

// Directivity of a pattern at off-axis angle theta (radians, [0, pi]).
double directivity_gain(const EmissionPattern& pattern, double theta,
                        double carrier_hz, const Medium& medium);

// (1 m / r) 10^(-absorption (r-1) / 20) * exp(-j k r); throws for r <= 0.
std::complex<double> path_factor(double r, const Medium& medium, double freq_hz);

// Scenario prepared for repeated field queries. Within a source group the
// member contributions add coherently; groups (and jammers) add in power.
class FieldScene {
 public:
  explicit FieldScene(const Scenario& s);
  FieldScene(const Scenario& s, std::span<const Pose> jammer_pose_override);

  FieldPoint at(const Vec3& point) const;
  double power_linear_at(const Vec3& point) const;
  int group_count() const { return group_count_; }

  struct Element {
    Vec3 pos;
    Vec3 axis;
    double amp;
    int group;
    int table;
  };
  const std::vector<Element>& elements() const { return elements_; }

 private:
  void build(const Scenario& s, std::span<const Pose> poses);
  std::vector<Element> elements_;
  std::vector<std::vector<double>> tables_;  // gain vs cos(theta) in [-1, 1]
  std::vector<double> wavenumbers_;          // per element
  Medium medium_;
  int group_count_ = 0;
};

FieldPoint field_at_point(const Scenario& s, const Vec3& point);

PowerMap power_map(const Scenario& s, const GridSpec& grid,
                   const ComputeOptions& opts = {});

// Ring samples around jammer 0's centroid at height ring_z, alpha measured
// from the jammer boresight, normalized to the alpha = 0 sample.
AngularProfile angular_sweep(const Scenario& s, double radius_m,
                             double step_deg, double ring_z = kMicPlaneZ);

// Absolute SPL from the drive levels; optional point calibration overrides
// the per-transducer drive (spl_db measured at distance_m on boresight).
double spl_at(const Scenario& s, const Vec3& point);
double spl_at_calibrated(const Scenario& s, const Vec3& point, double cal_spl_db,
                         double cal_distance_m);

std::string power_map_to_csv(const PowerMap& map);
// P2 heatmap; [-40 dB, 0 dB] maps to gray [0, 255], unset cells to 0.
std::string power_map_to_pgm(const PowerMap& map);
std::string profile_to_csv(const AngularProfile& profile);

}  // namespace jamfield
