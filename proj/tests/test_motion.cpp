#include <cmath>

#include "doctest.h"

#include "jamfield/errors.hpp"
#include "jamfield/field.hpp"
#include "jamfield/metrics.hpp"
#include "jamfield/motion.hpp"
#include "jamfield/trajectory.hpp"

using namespace jamfield;

namespace {

GridSpec coarse_grid() {
  GridSpec g;
  g.origin_x = -0.5;
  g.origin_y = -0.5;
  g.dx = 0.025;
  g.dy = 0.025;
  g.nx = 41;
  g.ny = 41;
  return g;
}

}  // namespace

TEST_CASE("static trajectory keeps every frame identical") {
  Pose base;
  base.position = {0.0, 0.0, 0.1};
  base.yaw = 0.3;
  const auto traj =
      gen_gesture_trajectory(TrajectoryKind::static_pose, 1.0, 50.0, 1, base);
  REQUIRE(traj.frames.size() == 51);
  for (const auto& f : traj.frames) {
    CHECK(f.position.x == base.position.x);
    CHECK(f.yaw == base.yaw);
  }
}

TEST_CASE("random rotation stays within the 45 degree bound") {
  Pose base;
  base.yaw = deg_to_rad(10.0);
  for (uint64_t seed : {1, 7, 99}) {
    const auto traj = gen_gesture_trajectory(TrajectoryKind::random_rotation,
                                             20.0, 100.0, seed, base);
    for (const auto& f : traj.frames) {
      CHECK(std::fabs(normalize_angle(f.yaw - base.yaw)) <=
            deg_to_rad(45.0) + 1e-9);
    }
  }
}

TEST_CASE("trajectories are deterministic in the seed") {
  Pose base;
  const auto a = gen_gesture_trajectory(TrajectoryKind::random_rotation, 3.0,
                                        100.0, 5, base);
  const auto b = gen_gesture_trajectory(TrajectoryKind::random_rotation, 3.0,
                                        100.0, 5, base);
  REQUIRE(a.frames.size() == b.frames.size());
  for (std::size_t i = 0; i < a.frames.size(); ++i)
    CHECK(a.frames[i].yaw == b.frames[i].yaw);

  const auto c = gen_gesture_trajectory(TrajectoryKind::random_rotation, 3.0,
                                        100.0, 6, base);
  bool same = true;
  for (std::size_t i = 0; i < a.frames.size(); ++i)
    if (a.frames[i].yaw != c.frames[i].yaw) {
      same = false;
      break;
    }
  CHECK_FALSE(same);
}

TEST_CASE("gesture kinds move the expected axes") {
  Pose base;
  const auto point =
      gen_gesture_trajectory(TrajectoryKind::point, 2.0, 100.0, 1, base);
  double max_yaw = 0.0;
  for (const auto& f : point.frames) max_yaw = std::max(max_yaw, std::fabs(f.yaw));
  CHECK(max_yaw == doctest::Approx(deg_to_rad(30.0)).epsilon(0.01));

  const auto wave =
      gen_gesture_trajectory(TrajectoryKind::wave, 2.0, 100.0, 1, base);
  double max_lat = 0.0, max_wyaw = 0.0;
  for (const auto& f : wave.frames) {
    max_lat = std::max(max_lat, std::fabs(f.position.x));
    max_wyaw = std::max(max_wyaw, std::fabs(f.yaw));
  }
  CHECK(max_lat == doctest::Approx(0.02).epsilon(0.01));
  CHECK(max_wyaw == doctest::Approx(deg_to_rad(45.0)).epsilon(0.01));

  const auto rotate =
      gen_gesture_trajectory(TrajectoryKind::rotate, 2.0, 100.0, 1, base);
  double max_pitch = 0.0;
  for (const auto& f : rotate.frames)
    max_pitch = std::max(max_pitch, std::fabs(f.pitch));
  CHECK(max_pitch == doctest::Approx(deg_to_rad(45.0)).epsilon(0.01));

  CHECK_THROWS_AS(
      gen_gesture_trajectory(TrajectoryKind::walk, 2.0, 100.0, 1, base),
      DomainError);
}

TEST_CASE("walk trajectory bounds and leg timing") {
  Pose base;
  const double path = 0.6, speed = 0.5;
  const auto traj = gen_walk_trajectory(path, speed, 100.0, base, 6.0);
  for (const auto& f : traj.frames)
    CHECK((f.position - base.position).norm() <= 0.8 + 1e-9);

  // one leg takes path/speed within one frame
  double peak_t = 0.0, peak_x = -1.0;
  for (std::size_t i = 0; i < traj.frames.size(); ++i) {
    const double t = i / traj.frame_rate;
    if (t > 2.0 * path / speed) break;
    if (traj.frames[i].position.x > peak_x) {
      peak_x = traj.frames[i].position.x;
      peak_t = t;
    }
  }
  CHECK(std::fabs(peak_t - path / speed) <= 1.0 / traj.frame_rate + 1e-9);

  // zero-length path equals static
  const auto still = gen_walk_trajectory(0.0, 0.5, 100.0, base, 1.0);
  for (const auto& f : still.frames) {
    CHECK(f.position.x == base.position.x);
    CHECK(f.yaw == base.yaw);
  }
}

TEST_CASE("pose_at interpolation") {
  Trajectory traj;
  traj.frame_rate = 10.0;
  Pose a, b;
  a.position = {0.0, 0.0, 0.0};
  b.position = {1.0, 0.0, 0.0};
  b.yaw = deg_to_rad(40.0);
  traj.frames = {a, b};

  const Pose at0 = pose_at(traj, 0.0);
  CHECK(at0.position.x == 0.0);
  const Pose mid = pose_at(traj, 0.05);
  CHECK(mid.position.x == doctest::Approx(0.5));
  CHECK(mid.yaw == doctest::Approx(deg_to_rad(20.0)).epsilon(1e-9));
  const Pose at_end = pose_at(traj, 0.1);
  CHECK(at_end.position.x == doctest::Approx(1.0));
  CHECK_THROWS_AS(pose_at(traj, 0.2), DomainError);
  CHECK_THROWS_AS(pose_at(traj, -0.01), DomainError);
}

TEST_CASE("trajectory CSV round trip") {
  Pose base;
  base.position = {0.1, 0.2, 0.3};
  const auto traj =
      gen_gesture_trajectory(TrajectoryKind::point, 1.0, 50.0, 3, base);
  const std::string csv = trajectory_to_csv(traj);
  CHECK(csv.rfind("t,x,y,z,yaw_deg,pitch_deg\n", 0) == 0);
  const Trajectory back = trajectory_from_csv(csv);
  REQUIRE(back.frames.size() == traj.frames.size());
  CHECK(back.frame_rate == doctest::Approx(traj.frame_rate));
  for (std::size_t i = 0; i < traj.frames.size(); i += 9) {
    CHECK(back.frames[i].position.x ==
          doctest::Approx(traj.frames[i].position.x).epsilon(1e-5));
    CHECK(back.frames[i].yaw == doctest::Approx(traj.frames[i].yaw).epsilon(1e-4));
  }
  CHECK_THROWS_AS(trajectory_from_csv("x,y\n1,2\n"), SchemaError);
}

TEST_CASE("time-averaged map of a static trajectory equals the power map") {
  Scenario s = make_bench_scenario(PresetId::bracelet_24, 0.0);
  const GridSpec grid = coarse_grid();
  const auto traj = gen_gesture_trajectory(TrajectoryKind::static_pose, 1.0,
                                           100.0, 1, s.jammers[0].pose);
  const PowerMap averaged = time_averaged_map(s, traj, 0.4, grid);
  const PowerMap direct = power_map(s, grid);
  REQUIRE(averaged.values_db.size() == direct.values_db.size());
  for (std::size_t i = 0; i < averaged.values_db.size(); ++i) {
    if (std::isnan(direct.values_db[i])) {
      CHECK(std::isnan(averaged.values_db[i]));
    } else {
      CHECK(std::fabs(averaged.values_db[i] - direct.values_db[i]) < 1e-9);
    }
  }
}

TEST_CASE("windowed average matches a hand-rolled two-frame oracle") {
  // The contract pins averaging in linear power, not in dB.
  Scenario s = make_bench_scenario(PresetId::bracelet_12, 0.0);
  Pose a = s.jammers[0].pose;
  Pose b = a;
  b.yaw = deg_to_rad(20.0);
  Trajectory traj;
  traj.frame_rate = 2.0;
  traj.kind = TrajectoryKind::imported;
  traj.frames = {a, b};

  // one frame per window; the median across the two windows is the mean
  const double radius = 0.72;
  const AngularProfile averaged =
      motion_averaged_profile(s, traj, radius, 45.0, 0.5);

  Scenario sa = s, sb = s;
  sa.jammers[0].pose = a;
  sb.jammers[0].pose = b;
  const Vec3 center = jammer_centroid(s.jammers[0]);
  auto mean_linear_at = [&](double angle_deg) {
    const Vec3 dir = direction_from_angles(deg_to_rad(angle_deg), 0.0);
    const Vec3 p{center.x + radius * dir.x, center.y + radius * dir.y, 0.05};
    return 0.5 * (field_at_point(sa, p).total_power_linear() +
                  field_at_point(sb, p).total_power_linear());
  };
  const double ref = mean_linear_at(0.0);
  bool differs_from_db_mean = false;
  for (std::size_t i = 0; i < averaged.angles_deg.size(); ++i) {
    const double expected =
        10.0 * std::log10(mean_linear_at(averaged.angles_deg[i]) / ref);
    CHECK(averaged.values_db[i] == doctest::Approx(expected).epsilon(1e-9));

    const Vec3 dir =
        direction_from_angles(deg_to_rad(averaged.angles_deg[i]), 0.0);
    const Vec3 p{center.x + radius * dir.x, center.y + radius * dir.y, 0.05};
    const double pa = field_at_point(sa, p).total_power_linear();
    const double pb = field_at_point(sb, p).total_power_linear();
    const double db_mean =
        0.5 * (10.0 * std::log10(pa) + 10.0 * std::log10(pb)) -
        10.0 * std::log10(ref);
    if (std::fabs(db_mean - averaged.values_db[i]) > 0.1)
      differs_from_db_mean = true;
  }
  CHECK(differs_from_db_mean);  // dB averaging would be a different map
}

TEST_CASE("motion smooths the angular profile (std halves)") {
  Scenario s = make_bench_scenario(PresetId::bracelet_24, 0.0);
  const auto traj = gen_gesture_trajectory(TrajectoryKind::random_rotation, 4.0,
                                           100.0, 2, s.jammers[0].pose);
  const AngularProfile st = angular_sweep(s, 1.0, 2.0);
  const AngularProfile mv = motion_averaged_profile(s, traj, 1.0, 2.0, 0.4);
  const CoverageStats stat_static = coverage_stats(st);
  const CoverageStats stat_motion = coverage_stats(mv);
  CHECK(stat_motion.std_db <= 0.5 * stat_static.std_db);
}

TEST_CASE("doubling the frame rate barely changes the averaged map") {
  Scenario s = make_bench_scenario(PresetId::bracelet_24, 0.0);
  GridSpec g;
  g.origin_x = -0.4;
  g.origin_y = 0.1;
  g.dx = 0.05;
  g.dy = 0.05;
  g.nx = 13;
  g.ny = 13;
  const auto t100 = gen_gesture_trajectory(TrajectoryKind::random_rotation, 4.0,
                                           100.0, 3, s.jammers[0].pose);
  const auto t200 = gen_gesture_trajectory(TrajectoryKind::random_rotation, 4.0,
                                           200.0, 3, s.jammers[0].pose);
  const PowerMap a = time_averaged_map(s, t100, 0.4, g);
  const PowerMap b = time_averaged_map(s, t200, 0.4, g);
  for (std::size_t i = 0; i < a.values_db.size(); ++i) {
    if (std::isnan(a.values_db[i])) continue;
    CHECK(std::fabs(a.values_db[i] - b.values_db[i]) <= 0.2);
  }
}

TEST_CASE("blind cells shrink monotonically with rotation range") {
  Scenario s = make_bench_scenario(PresetId::bracelet_24, 0.0);
  GridSpec grid;  // 1 cm cells resolve the interference stripes
  grid.origin_x = -0.35;
  grid.origin_y = -0.35;
  grid.dx = 0.01;
  grid.dy = 0.01;
  grid.nx = 71;
  grid.ny = 71;
  std::size_t prev = SIZE_MAX;
  for (double amp : {0.0, 15.0, 30.0, 45.0}) {
    GestureParams params;
    params.random_amplitude_deg = amp;
    params.random_sigma_deg = std::max(amp / 2.0, 1e-3);
    const auto traj =
        amp == 0.0
            ? gen_gesture_trajectory(TrajectoryKind::static_pose, 4.0, 100.0, 11,
                                     s.jammers[0].pose)
            : gen_gesture_trajectory(TrajectoryKind::random_rotation, 4.0, 100.0,
                                     11, s.jammers[0].pose, params);
    const PowerMap map = time_averaged_map(s, traj, 0.4, grid, {4});
    const auto report = detect_blind_spots(map, 10.0, 0.05);
    if (amp == 0.0) CHECK(report.cells.size() > 0);
    CHECK(report.cells.size() <= prev);
    prev = report.cells.size();
  }
}

TEST_CASE("ring power sum is pose invariant (energy conservation)") {
  Scenario s = make_bench_scenario(PresetId::bracelet_24, 0.0);
  const Vec3 center = jammer_centroid(s.jammers[0]);
  auto ring_sum = [&](const Pose& pose) {
    Scenario posed = s;
    posed.jammers[0].pose = pose;
    FieldScene scene(posed);
    double acc = 0.0;
    for (int i = 0; i < 360; ++i) {
      const Vec3 dir = direction_from_angles(deg_to_rad(i), 0.0);
      acc += scene.power_linear_at(
          {center.x + 1.0 * dir.x, center.y + 1.0 * dir.y, 0.05});
    }
    return 10.0 * std::log10(acc);
  };
  Pose base = s.jammers[0].pose;
  const double ref = ring_sum(base);
  for (double yaw_deg : {15.0, 37.0, 90.0, 180.0}) {
    Pose p = base;
    p.yaw = deg_to_rad(yaw_deg);
    CHECK(std::fabs(ring_sum(p) - ref) <= 0.5);
  }
  Pose slid = base;  // wave-gesture lateral offset
  slid.position.x += 0.02;
  CHECK(std::fabs(ring_sum(slid) - ref) <= 0.5);
}

TEST_CASE("SJR series per frame and speech-level shift") {
  Scenario s = make_bench_scenario(PresetId::bracelet_24, 40.0);
  const auto traj = gen_gesture_trajectory(TrajectoryKind::random_rotation, 2.0,
                                           100.0, 5, s.jammers[0].pose);
  const SJRSeries series = sjr_timeseries(s, traj, 0);
  CHECK(series.sjr_db.size() == traj.frames.size());
  CHECK(series.times_s.size() == traj.frames.size());

  // doubling the speech level shifts every frame by exactly -6.02 dB
  Scenario louder = s;
  louder.speech->level_dba_at_1m += 6.0206;
  const SJRSeries shifted = sjr_timeseries(louder, traj, 0);
  for (std::size_t i = 0; i < series.sjr_db.size(); i += 17)
    CHECK(shifted.sjr_db[i] - series.sjr_db[i] ==
          doctest::Approx(-6.0206).epsilon(1e-9));

  Scenario no_speech = s;
  no_speech.speech.reset();
  CHECK_THROWS_AS(sjr_timeseries(no_speech, traj, 0), DomainError);
}

TEST_CASE("window longer than the trajectory is rejected") {
  Scenario s = make_bench_scenario(PresetId::bracelet_12, 0.0);
  const auto traj = gen_gesture_trajectory(TrajectoryKind::static_pose, 1.0,
                                           100.0, 1, s.jammers[0].pose);
  GridSpec g;
  g.nx = 3;
  g.ny = 3;
  g.dx = 0.2;
  g.dy = 0.2;
  g.origin_x = 0.2;
  g.origin_y = 0.2;
  CHECK_THROWS_AS(time_averaged_map(s, traj, 2.0, g), DomainError);
}
