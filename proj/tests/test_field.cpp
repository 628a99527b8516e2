#include <cmath>
#include <complex>

#include "doctest.h"

#include "jamfield/errors.hpp"
#include "jamfield/field.hpp"
#include "jamfield/metrics.hpp"

using namespace jamfield;

namespace {

Scenario single_transducer_scenario(double z = kMicPlaneZ) {
  Scenario s;
  JammerConfig j;
  Transducer t;
  t.pattern = EmissionPattern::piston(kPistonRadius);
  j.transducers.push_back(t);
  j.pose.position = {0.0, 0.0, z};
  s.jammers.push_back(j);
  s.medium.absorption_db_per_m = 0.0;
  return s;
}

// Transducer aimed straight at a point so its directivity there is exactly 1.
Transducer aimed_at(const Vec3& pos, const Vec3& target) {
  Transducer t;
  t.pattern = EmissionPattern::piston(kPistonRadius);
  t.pose.position = pos;
  const Vec3 d = target - pos;
  t.pose.yaw = std::atan2(d.x, d.y);
  t.pose.pitch = std::atan2(d.z, std::hypot(d.x, d.y));
  return t;
}

}  // namespace

TEST_CASE("piston directivity boresight and symmetry") {
  const auto p = EmissionPattern::piston(0.008);
  Medium m;
  CHECK(directivity_gain(*p, 0.0, 25000.0, m) == 1.0);
  for (double th : {0.1, 0.4, 1.0})
    CHECK(directivity_gain(*p, th, 25000.0, m) ==
          doctest::Approx(p->gain(std::fabs(-th), 25000.0, m)));
  CHECK_THROWS_AS(directivity_gain(*p, -0.1, 25000.0, m), DomainError);
}

TEST_CASE("piston -3 dB angle matches a Bessel root-find oracle") {
  // Solve 2 J1(x)/x = 1/sqrt(2) by bisection, independently of the library.
  auto jinc = [](double x) { return 2.0 * std::cyl_bessel_j(1, x) / x; };
  double lo = 1e-6, hi = 3.8;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (jinc(mid) > 1.0 / std::sqrt(2.0))
      lo = mid;
    else
      hi = mid;
  }
  const double x3db = 0.5 * (lo + hi);
  const Medium m{343.0, 0.0};
  const double ka = 2.0 * M_PI * 25000.0 / 343.0 * 0.008;
  const double theta3db = std::asin(x3db / ka);

  const auto p = EmissionPattern::piston(0.008);
  CHECK(p->gain(theta3db, 25000.0, m) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
  // monotone decrease out to that angle
  double prev = 2.0;
  for (double th = 0.0; th <= theta3db; th += theta3db / 50.0) {
    const double g = p->gain(th, 25000.0, m);
    CHECK(g <= prev + 1e-12);
    prev = g;
  }
}

TEST_CASE("piston rear hemisphere is held at the 90 degree value") {
  const auto p = EmissionPattern::piston(0.008);
  const Medium m{343.0, 0.0};
  const double side = p->gain(M_PI / 2.0, 25000.0, m);
  CHECK(p->gain(deg_to_rad(120.0), 25000.0, m) == doctest::Approx(side));
  CHECK(p->gain(M_PI, 25000.0, m) == doctest::Approx(side));
  CHECK(side < 0.06);  // ~-28.5 dB for ka of 3.66
}

TEST_CASE("path factor reference, spreading, and errors") {
  Medium m;
  m.absorption_db_per_m = 0.0;
  CHECK(std::abs(path_factor(1.0, m, 25000.0)) == doctest::Approx(1.0));
  const double drop_db =
      20.0 * std::log10(std::abs(path_factor(2.0, m, 25000.0)));
  CHECK(drop_db == doctest::Approx(-6.02).epsilon(0.002));
  CHECK_THROWS_AS(path_factor(0.0, m, 25000.0), DomainError);
  CHECK_THROWS_AS(path_factor(-1.0, m, 25000.0), DomainError);

  m.absorption_db_per_m = 0.9;
  const double with_abs =
      20.0 * std::log10(std::abs(path_factor(2.0, m, 25000.0)));
  CHECK(with_abs == doctest::Approx(-6.02 - 0.9).epsilon(0.01));
  // phase is -k r
  const auto f = path_factor(0.5, m, 25000.0);
  const double k = 2.0 * M_PI * 25000.0 / m.sound_speed;
  CHECK(std::arg(f) == doctest::Approx(normalize_angle(-k * 0.5)));
}

TEST_CASE("coherent pair gains +6.02 dB, incoherent +3.01 dB") {
  const Vec3 target{0.0, 1.0, 0.0};
  Scenario one;
  one.medium.absorption_db_per_m = 0.0;
  JammerConfig j;
  j.transducers.push_back(aimed_at({0.0, 0.0, 0.0}, target));
  one.jammers.push_back(j);
  const double p1 = field_at_point(one, target).total_power_db;

  // same position twice, one source -> amplitude doubles
  Scenario two = one;
  two.jammers[0].transducers.push_back(two.jammers[0].transducers[0]);
  const double p2 = field_at_point(two, target).total_power_db;
  CHECK(p2 - p1 == doctest::Approx(6.0206).epsilon(1e-6));

  // independent sources -> power doubles
  Scenario two_inc = two;
  two_inc.jammers[0].transducers[1].source_id = 1;
  const double p2i = field_at_point(two_inc, target).total_power_db;
  CHECK(p2i - p1 == doctest::Approx(3.0103).epsilon(1e-6));
}

TEST_CASE("coherent K-fold stacking yields K^2 power, incoherent K-fold K") {
  const Vec3 target{0.0, 2.0, 0.0};
  for (int k_count : {2, 3, 12, 24}) {
    Scenario s;
    s.medium.absorption_db_per_m = 0.0;
    JammerConfig j;
    for (int i = 0; i < k_count; ++i)
      j.transducers.push_back(aimed_at({0.0, 0.0, 0.0}, target));
    s.jammers.push_back(j);
    Scenario base = s;
    base.jammers[0].transducers.resize(1);
    const double p1 = field_at_point(base, target).total_power_db;
    const double pk = field_at_point(s, target).total_power_db;
    CHECK(pk - p1 == doctest::Approx(20.0 * std::log10(k_count)).epsilon(1e-9));

    Scenario inc = s;
    for (int i = 0; i < k_count; ++i) inc.jammers[0].transducers[i].source_id = i;
    const double pki = field_at_point(inc, target).total_power_db;
    CHECK(pki - p1 == doctest::Approx(10.0 * std::log10(k_count)).epsilon(1e-9));
  }
}

TEST_CASE("half wavelength same-source pair nulls below -40 dB") {
  // Both elements aimed at the target (boresight gain 1); path lengths differ
  // by exactly lambda/2. Complex-sum oracle: |1/r1 - 1/r2| vs 1/r1.
  const Medium medium{343.0, 0.0};
  const double lambda = medium.sound_speed / 25000.0;
  const Vec3 target{0.0, 2.0, 0.0};
  const double r1 = 2.0, r2 = 2.0 + lambda / 2.0;

  Scenario s;
  s.medium = medium;
  JammerConfig j;
  j.transducers.push_back(aimed_at({0.0, 0.0, 0.0}, target));
  j.transducers.push_back(aimed_at({0.0, 2.0 - r2, 0.0}, target));
  s.jammers.push_back(j);

  Scenario single = s;
  single.jammers[0].transducers.resize(1);
  const double pair_db = field_at_point(s, target).total_power_db;
  const double one_db = field_at_point(single, target).total_power_db;
  CHECK(pair_db - one_db <= -40.0);

  const double expected =
      20.0 * std::log10(std::fabs(1.0 / r1 - 1.0 / r2) / (1.0 / r1));
  CHECK(pair_db - one_db == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("field_at_point rejects coincident query points") {
  Scenario s = single_transducer_scenario();
  const Vec3 at =
      s.jammers[0].transducers[0].pose.position + s.jammers[0].pose.position;
  CHECK_THROWS_AS(field_at_point(s, at), DomainError);
}

TEST_CASE("FieldPoint total power matches the group sum") {
  Scenario s = make_bench_scenario(PresetId::bracelet_24, 0.0, 1.0, 24);
  const FieldPoint f = field_at_point(s, {0.3, 0.4, 0.05});
  CHECK(f.group_amplitudes.size() == 24);
  double p = 0.0;
  for (const auto& a : f.group_amplitudes) p += std::norm(a);
  CHECK(f.total_power_db == doctest::Approx(10.0 * std::log10(p)).epsilon(1e-12));
}

TEST_CASE("power map normalization and exclusion") {
  Scenario s = make_bench_scenario(PresetId::backdoor_3x3, 0.0);
  GridSpec grid;
  grid.origin_x = 0.0;
  grid.origin_y = 0.0;
  grid.nx = 51;
  grid.ny = 51;
  grid.dx = 0.02;
  grid.dy = 0.02;
  const PowerMap map = power_map(s, grid);
  double peak = -1e9;
  int unset = 0;
  for (double v : map.values_db) {
    if (std::isnan(v)) {
      ++unset;
      continue;
    }
    CHECK(v <= 0.0);
    peak = std::max(peak, v);
  }
  CHECK(peak == 0.0);
  CHECK(unset > 0);  // near-field cells around the jammer at the origin
}

TEST_CASE("empty grid rejected") {
  Scenario s = make_bench_scenario(PresetId::backdoor_3x3, 0.0);
  GridSpec grid;
  grid.nx = 0;
  CHECK_THROWS_AS(power_map(s, grid), DomainError);
}

TEST_CASE("power map invariant under uniform drive scaling") {
  Scenario s = make_bench_scenario(PresetId::bracelet_24, 0.0);
  GridSpec grid;
  grid.nx = 21;
  grid.ny = 21;
  grid.dx = 0.05;
  grid.dy = 0.05;
  const PowerMap a = power_map(s, grid);
  s.jammers[0].drive_level_db += 17.3;
  const PowerMap b = power_map(s, grid);
  for (std::size_t i = 0; i < a.values_db.size(); ++i) {
    if (std::isnan(a.values_db[i])) {
      CHECK(std::isnan(b.values_db[i]));
    } else {
      CHECK(std::fabs(a.values_db[i] - b.values_db[i]) < 1e-9);
    }
  }
}

TEST_CASE("rotational equivariance about z") {
  Scenario s = make_bench_scenario(PresetId::bracelet_24, 0.0);
  const Vec3 probe{0.3, 0.7, 0.05};
  const double before = field_at_point(s, probe).total_power_db;
  const double ang = deg_to_rad(37.0);
  s.jammers[0].pose.yaw = normalize_angle(s.jammers[0].pose.yaw + ang);
  // rotating the jammer by +ang carries the pattern to rotate_z(p, +ang)
  const Vec3 rotated = rotate_z(probe, ang);
  const double after = field_at_point(s, rotated).total_power_db;
  CHECK(std::fabs(after - before) < 1e-9);
}

TEST_CASE("angular sweep normalization and monotone single element") {
  Scenario s = single_transducer_scenario();
  const AngularProfile prof = angular_sweep(s, 1.0, 2.0);
  CHECK(prof.values_db[0] == 0.0);
  REQUIRE(prof.angles_deg.back() == 180.0);
  // piston main lobe has no sidelobe for ka < 3.83: monotone to 90 degrees
  for (std::size_t i = 1; i < prof.angles_deg.size(); ++i) {
    if (prof.angles_deg[i] > 90.0) break;
    CHECK(prof.values_db[i] <= prof.values_db[i - 1] + 1e-9);
  }
}

TEST_CASE("backdoor_3x3 sweep drops 25 dB beyond 60 degrees") {
  Scenario s = make_bench_scenario(PresetId::backdoor_3x3, 0.0);
  const AngularProfile prof = angular_sweep(s, 1.0, 2.0);
  double acc = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < prof.angles_deg.size(); ++i) {
    if (prof.angles_deg[i] >= 60.0) {
      acc += prof.values_db[i];
      ++count;
    }
  }
  CHECK(acc / count <= -25.0);
}

TEST_CASE("backdoor_3x3 sweep shows 5 dB jumps at 2 degree sampling") {
  Scenario s = make_bench_scenario(PresetId::backdoor_3x3, 0.0);
  const AngularProfile prof = angular_sweep(s, 1.0, 2.0);
  bool found = false;
  for (std::size_t i = 1; i < prof.angles_deg.size(); ++i) {
    if (prof.angles_deg[i] > 40.0) break;
    if (std::fabs(prof.values_db[i] - prof.values_db[i - 1]) >= 5.0) found = true;
  }
  CHECK(found);
}

TEST_CASE("SPL calibration predicts the safety figure") {
  Scenario s = single_transducer_scenario(0.0);
  s.jammers[0].transducers[0].pose = {};  // at origin, boresight +y
  const double spl = spl_at_calibrated(s, {0.0, 0.25, 0.0}, 100.0, 0.01);
  CHECK(spl == doctest::Approx(72.0).epsilon(0.0015));  // 100 - 20 log10(25)
}

TEST_CASE("SPL drops 6.02 dB per distance doubling") {
  Scenario s = single_transducer_scenario(0.0);
  s.jammers[0].transducers[0].pose = {};
  const double a = spl_at(s, {0.0, 0.7, 0.0});
  const double b = spl_at(s, {0.0, 1.4, 0.0});
  CHECK(a - b == doctest::Approx(6.0206).epsilon(1e-6));
}

TEST_CASE("more sources never lower the SPL") {
  Scenario full = make_bench_scenario(PresetId::bracelet_24, 0.0, 1.0, 24);
  Scenario single = full;
  single.jammers[0].transducers.resize(1);
  for (double ang : {0.0, 45.0, 110.0, 180.0}) {
    const Vec3 dir = direction_from_angles(deg_to_rad(ang), 0.0);
    const Vec3 p{dir.x, dir.y, 0.05};
    CHECK(spl_at(full, p) >= spl_at(single, p));
  }
}

TEST_CASE("CSV and PGM exports") {
  Scenario s = make_bench_scenario(PresetId::backdoor_3x3, 0.0);
  GridSpec grid;
  grid.origin_x = 0.0;
  grid.origin_y = 0.0;
  grid.nx = 11;
  grid.ny = 11;
  grid.dx = 0.1;
  grid.dy = 0.1;
  const PowerMap map = power_map(s, grid);
  const std::string csv = power_map_to_csv(map);
  CHECK(csv.rfind("x,y,db\n", 0) == 0);
  // unset cell -> empty field (the origin cell is near-field excluded)
  CHECK(csv.find("0.000000,0.000000,\n") != std::string::npos);
  const std::string pgm = power_map_to_pgm(map);
  CHECK(pgm.rfind("P2\n11 11\n255\n", 0) == 0);

  const AngularProfile prof = angular_sweep(s, 1.0, 30.0);
  const std::string pcsv = profile_to_csv(prof);
  CHECK(pcsv.rfind("alpha_deg,db\n", 0) == 0);
  CHECK(pcsv.find("0.00,0.0000\n") != std::string::npos);
}
