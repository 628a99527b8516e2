#include "jamfield/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "jamfield/errors.hpp"
#include "jamfield/util.hpp"

namespace jamfield {

double FieldPoint::total_power_linear() const {
  double p = 0.0;
  for (const auto& a : group_amplitudes) p += std::norm(a);
  return p;
}

double directivity_gain(const EmissionPattern& pattern, double theta,
                        double carrier_hz, const Medium& medium) {
  if (theta < 0.0 || theta > M_PI + 1e-12)
    throw DomainError("directivity: theta must lie in [0, pi]");
  return pattern.gain(theta, carrier_hz, medium);
}

std::complex<double> path_factor(double r, const Medium& medium, double freq_hz) {
  if (!(r > 0.0)) throw DomainError("path factor undefined for r <= 0");
  const double mag = (1.0 / r) *
                     std::pow(10.0, -medium.absorption_db_per_m * (r - 1.0) / 20.0);
  return std::polar(mag, -wavenumber(freq_hz, medium) * r);
}

namespace {

constexpr int kDirTableSize = 8193;  // gain samples over cos(theta) in [-1, 1]

std::vector<double> build_gain_table(const EmissionPattern& p, double carrier,
                                     const Medium& medium) {
  std::vector<double> table(kDirTableSize);
  for (int i = 0; i < kDirTableSize; ++i) {
    const double c = -1.0 + 2.0 * i / (kDirTableSize - 1);
    table[i] = p.gain(std::acos(std::clamp(c, -1.0, 1.0)), carrier, medium);
  }
  table.back() = p.gain(0.0, carrier, medium);  // exact boresight gain
  return table;
}

double table_gain(const std::vector<double>& table, double cos_theta) {
  const double u = (std::clamp(cos_theta, -1.0, 1.0) + 1.0) * 0.5 *
                   (kDirTableSize - 1);
  const int i0 = std::min(kDirTableSize - 2, static_cast<int>(u));
  const double f = u - i0;
  return table[i0] + f * (table[i0 + 1] - table[i0]);
}

}  // namespace

FieldScene::FieldScene(const Scenario& s) { build(s, {}); }

FieldScene::FieldScene(const Scenario& s, std::span<const Pose> poses) {
  build(s, poses);
}

void FieldScene::build(const Scenario& s, std::span<const Pose> poses) {
  if (!poses.empty() && poses.size() != s.jammers.size())
    throw DomainError("pose override count must match jammer count");
  std::map<std::pair<const EmissionPattern*, double>, int> table_index;
  std::map<std::pair<int, int>, int> group_index;
  for (std::size_t ji = 0; ji < s.jammers.size(); ++ji) {
    const auto& j = s.jammers[ji];
    const Pose frame = poses.empty() ? j.pose : poses[ji];
    const double amp = amplitude_from_spl(j.drive_level_db);
    for (const auto& t : j.transducers) {
      Element e;
      const Pose world = compose(frame, t.pose);
      e.pos = world.position;
      e.axis = world.boresight();
      e.amp = amp;
      const auto gkey = std::make_pair(static_cast<int>(ji), t.source_id);
      auto git = group_index.find(gkey);
      if (git == group_index.end())
        git = group_index.emplace(gkey, group_count_++).first;
      e.group = git->second;
      const auto tkey = std::make_pair(t.pattern.get(), t.carrier_freq);
      auto tit = table_index.find(tkey);
      if (tit == table_index.end()) {
        tit = table_index.emplace(tkey, static_cast<int>(tables_.size())).first;
        tables_.push_back(build_gain_table(*t.pattern, t.carrier_freq, s.medium));
      }
      e.table = tit->second;
      wavenumbers_.push_back(wavenumber(t.carrier_freq, s.medium));
      elements_.push_back(e);
    }
  }
  medium_ = s.medium;
}

FieldPoint FieldScene::at(const Vec3& point) const {
  FieldPoint out;
  out.group_amplitudes.assign(group_count_, {0.0, 0.0});
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const Element& e = elements_[i];
    const Vec3 d = point - e.pos;
    const double r = d.norm();
    if (r < 1e-9)
      throw DomainError("field undefined at a transducer position");
    const double cos_theta = d.dot(e.axis) / r;
    const double gain = table_gain(tables_[e.table], cos_theta);
    const double mag =
        e.amp * gain * (1.0 / r) *
        std::pow(10.0, -medium_.absorption_db_per_m * (r - 1.0) / 20.0);
    out.group_amplitudes[e.group] += std::polar(mag, -wavenumbers_[i] * r);
  }
  const double p = out.total_power_linear();
  out.total_power_db =
      p > 0.0 ? db_from_power(p) : -std::numeric_limits<double>::infinity();
  return out;
}

double FieldScene::power_linear_at(const Vec3& point) const {
  return at(point).total_power_linear();
}

FieldPoint field_at_point(const Scenario& s, const Vec3& point) {
  return FieldScene(s).at(point);
}

PowerMap power_map(const Scenario& s, const GridSpec& grid,
                   const ComputeOptions& opts) {
  if (grid.nx <= 0 || grid.ny <= 0) throw DomainError("power map grid is empty");
  if (s.jammers.empty()) throw DomainError("power map needs at least one jammer");
  FieldScene scene(s);
  std::vector<Vec3> centroids;
  for (const auto& j : s.jammers) centroids.push_back(jammer_centroid(j));

  PowerMap map;
  map.origin_x = grid.origin_x;
  map.origin_y = grid.origin_y;
  map.dx = grid.dx;
  map.dy = grid.dy;
  map.nx = grid.nx;
  map.ny = grid.ny;
  map.z = grid.z;
  const std::size_t n = static_cast<std::size_t>(grid.nx) * grid.ny;
  std::vector<double> linear(n, std::numeric_limits<double>::quiet_NaN());
  parallel_for(n, opts.threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t idx = lo; idx < hi; ++idx) {
      const int ix = static_cast<int>(idx % grid.nx);
      const int iy = static_cast<int>(idx / grid.nx);
      const Vec3 p{grid.x_at(ix), grid.y_at(iy), grid.z};
      bool excluded = false;
      for (const auto& c : centroids) {
        if (std::hypot(p.x - c.x, p.y - c.y) < kNearFieldExclusion) {
          excluded = true;
          break;
        }
      }
      if (!excluded) linear[idx] = scene.power_linear_at(p);
    }
  });

  double peak = 0.0;
  for (double v : linear)
    if (!std::isnan(v)) peak = std::max(peak, v);
  if (!(peak > 0.0)) throw DomainError("power map has no usable cells");
  map.values_db.resize(n, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isnan(linear[i])) map.values_db[i] = db_from_power(linear[i] / peak);
  return map;
}

AngularProfile angular_sweep(const Scenario& s, double radius_m, double step_deg,
                             double ring_z) {
  if (!(radius_m > 0.0)) throw DomainError("sweep radius must be > 0");
  if (!(step_deg > 0.0)) throw DomainError("sweep step must be > 0");
  if (s.jammers.empty()) throw DomainError("sweep needs at least one jammer");
  FieldScene scene(s);
  const Vec3 center = jammer_centroid(s.jammers.front());
  const double yaw0 = s.jammers.front().pose.yaw;

  AngularProfile prof;
  prof.radius = radius_m;
  const int count = static_cast<int>(std::floor(180.0 / step_deg + 1e-9)) + 1;
  std::vector<double> linear(count);
  for (int i = 0; i < count; ++i) {
    const double alpha = i * step_deg;
    prof.angles_deg.push_back(alpha);
    const Vec3 dir = direction_from_angles(yaw0 + deg_to_rad(alpha), 0.0);
    const Vec3 p{center.x + radius_m * dir.x, center.y + radius_m * dir.y, ring_z};
    linear[i] = scene.power_linear_at(p);
  }
  const double ref = linear[0];
  if (!(ref > 0.0)) throw DomainError("sweep reference sample has zero power");
  prof.values_db.resize(count);
  for (int i = 0; i < count; ++i) prof.values_db[i] = db_from_power(linear[i] / ref);
  return prof;
}

double spl_at(const Scenario& s, const Vec3& point) {
  const FieldPoint f = field_at_point(s, point);
  return kSplReferenceDb + f.total_power_db;
}

double spl_at_calibrated(const Scenario& s, const Vec3& point, double cal_spl_db,
                         double cal_distance_m) {
  Scenario adj = s;
  const double drive = drive_level_from_point_calibration(
      cal_spl_db, cal_distance_m, s.medium, 0.0);
  for (auto& j : adj.jammers) j.drive_level_db = drive;
  return spl_at(adj, point);
}

std::string power_map_to_csv(const PowerMap& map) {
  std::ostringstream out;
  out << "x,y,db\n";
  char line[96];
  for (int iy = 0; iy < map.ny; ++iy)
    for (int ix = 0; ix < map.nx; ++ix) {
      const double v = map.at(ix, iy);
      if (std::isnan(v)) {
        std::snprintf(line, sizeof(line), "%.6f,%.6f,\n", map.x_at(ix), map.y_at(iy));
      } else {
        std::snprintf(line, sizeof(line), "%.6f,%.6f,%.4f\n", map.x_at(ix),
                      map.y_at(iy), v);
      }
      out << line;
    }
  return out.str();
}

std::string power_map_to_pgm(const PowerMap& map) {
  std::ostringstream out;
  out << "P2\n" << map.nx << " " << map.ny << "\n255\n";
  for (int iy = map.ny - 1; iy >= 0; --iy) {  // image top is +y
    for (int ix = 0; ix < map.nx; ++ix) {
      const double v = map.at(ix, iy);
      int gray = 0;
      if (!std::isnan(v)) {
        const double clamped = std::clamp(v, -40.0, 0.0);
        gray = static_cast<int>(std::lround((clamped + 40.0) / 40.0 * 255.0));
      }
      out << gray << (ix + 1 == map.nx ? '\n' : ' ');
    }
  }
  return out.str();
}

std::string profile_to_csv(const AngularProfile& profile) {
  std::ostringstream out;
  out << "alpha_deg,db\n";
  char line[64];
  for (std::size_t i = 0; i < profile.angles_deg.size(); ++i) {
    std::snprintf(line, sizeof(line), "%.2f,%.4f\n", profile.angles_deg[i],
                  profile.values_db[i]);
    out << line;
  }
  return out.str();
}

}  // namespace jamfield
