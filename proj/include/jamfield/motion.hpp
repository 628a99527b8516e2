#pragma once

#include "jamfield/field.hpp"
#include "jamfield/scenario.hpp"
#include "jamfield/trajectory.hpp"

namespace jamfield {

// Per-frame jam-to-speech ratio at a microphone, measured on recorded
// (post-nonlinearity) powers: the jamming path follows the quadratic
// demodulation law, speech the linear one.
struct SJRSeries {
  std::vector<double> times_s;
  std::vector<double> sjr_db;
};

// Mean linear power per cell over consecutive `window_s` windows covering the
// whole trajectory, per-cell median across windows, then max-normalized.
// The trajectory drives jammer 0.
PowerMap time_averaged_map(const Scenario& s, const Trajectory& traj,
                           double window_s, const GridSpec& grid,
                           const ComputeOptions& opts = {});

// Same statistic on ring samples; normalized to the alpha = 0 sample.
AngularProfile motion_averaged_profile(const Scenario& s, const Trajectory& traj,
                                       double radius_m, double step_deg,
                                       double window_s, double ring_z = kMicPlaneZ,
                                       const ComputeOptions& opts = {});

SJRSeries sjr_timeseries(const Scenario& s, const Trajectory& traj,
                         std::size_t mic_index);

// Static-geometry SJR at a mic (single value, used for calibration anchors).
double static_sjr_db(const Scenario& s, std::size_t mic_index);

}  // namespace jamfield
