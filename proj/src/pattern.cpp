#include "jamfield/pattern.hpp"

#include <algorithm>
#include <cmath>

#include "jamfield/errors.hpp"

namespace jamfield {

double piston_gain(double ka, double theta) {
  if (theta > M_PI / 2.0) theta = M_PI / 2.0;
  const double x = ka * std::sin(theta);
  if (x < 1e-9) return 1.0;
  return std::fabs(2.0 * std::cyl_bessel_j(1, x) / x);
}

std::shared_ptr<const EmissionPattern> EmissionPattern::piston(double radius_m) {
  if (!(radius_m > 0.0)) throw DomainError("piston radius must be > 0");
  auto p = std::shared_ptr<EmissionPattern>(new EmissionPattern());
  p->radius_ = radius_m;
  return p;
}

std::shared_ptr<const EmissionPattern> EmissionPattern::tabulated(
    std::vector<std::pair<double, double>> samples) {
  if (samples.empty()) throw DomainError("tabulated pattern needs samples");
  if (samples.front().first != 0.0)
    throw DomainError("tabulated pattern must start at 0 degrees");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].first > samples[i - 1].first))
      throw DomainError("tabulated pattern angles must be strictly increasing");
    if (samples[i].first > 180.0)
      throw DomainError("tabulated pattern angles must be within [0, 180]");
  }
  const double g0 = samples.front().second;
  if (!(g0 > 0.0)) throw DomainError("tabulated pattern boresight gain must be > 0");
  for (auto& s : samples) {
    s.second /= g0;
    if (s.second < 0.0 || s.second > 1.0 + 1e-12)
      throw DomainError("tabulated pattern gains must lie in [0, 1] after normalization");
  }
  auto p = std::shared_ptr<EmissionPattern>(new EmissionPattern());
  p->tab_ = std::move(samples);
  return p;
}

double EmissionPattern::gain(double theta, double carrier_hz,
                             const Medium& medium) const {
  theta = std::fabs(theta);
  if (is_piston()) {
    const double ka = wavenumber(carrier_hz, medium) * radius_;
    return piston_gain(ka, theta);
  }
  const double deg = theta * 180.0 / M_PI;
  if (deg <= tab_.front().first) return tab_.front().second;
  if (deg >= tab_.back().first) return tab_.back().second;
  auto it = std::upper_bound(
      tab_.begin(), tab_.end(), deg,
      [](double v, const std::pair<double, double>& s) { return v < s.first; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double f = (deg - lo.first) / (hi.first - lo.first);
  return lo.second + f * (hi.second - lo.second);
}

}  // namespace jamfield
