#pragma once

#include <cmath>
#include <memory>
#include <utility>
#include <vector>

namespace jamfield {

struct Medium {
  double sound_speed = 343.0;          // m/s
  double absorption_db_per_m = 0.9;    // at the carrier frequency
};

inline double wavenumber(double freq_hz, const Medium& m) {
  return 2.0 * M_PI * freq_hz / m.sound_speed;
}

// Per-element angular gain. Piston: |2 J1(ka sin t) / (ka sin t)| over the
// front hemisphere, held at the 90-degree value behind the element (the
// baffled-piston formula is front-hemisphere only). Tabulated: linear
// interpolation over (off-axis angle deg, linear gain) samples, constant
// beyond the last sample; gains are normalized so the 0-degree sample is 1.
class EmissionPattern {
 public:
  static std::shared_ptr<const EmissionPattern> piston(double radius_m);
  static std::shared_ptr<const EmissionPattern> tabulated(
      std::vector<std::pair<double, double>> samples_deg_gain);

  // theta in [0, pi]; carrier and medium fix ka for the piston model.
  double gain(double theta, double carrier_hz, const Medium& medium) const;

  bool is_piston() const { return tab_.empty(); }
  double piston_radius() const { return radius_; }
  const std::vector<std::pair<double, double>>& samples() const { return tab_; }

 private:
  EmissionPattern() = default;
  double radius_ = 0.0;
  std::vector<std::pair<double, double>> tab_;
};

double piston_gain(double ka, double theta);  // exact formula, clamped rear

}  // namespace jamfield
