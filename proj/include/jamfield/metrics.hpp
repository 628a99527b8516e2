#pragma once

#include <string>
#include <vector>

#include "jamfield/field.hpp"
#include "jamfield/motion.hpp"
#include "jamfield/scenario.hpp"

namespace jamfield {

struct BlindSpotCell {
  int ix = 0, iy = 0;
  double x = 0.0, y = 0.0;
  double depth_db = 0.0;  // drop below the neighborhood median
};

struct BlindSpotRegion {
  std::vector<int> cell_indices;  // into BlindSpotReport::cells
  double area_m2 = 0.0;
};

struct BlindSpotReport {
  std::vector<BlindSpotCell> cells;
  std::vector<BlindSpotRegion> regions;  // 8-connected components
  double threshold_db = 10.0;
  double neighborhood_radius_m = 0.05;
};

// A cell is blind iff its value <= (median of cells within the neighborhood
// radius, excluding itself) - threshold. Unset cells are ignored.
BlindSpotReport detect_blind_spots(const PowerMap& map, double threshold_db = 10.0,
                                   double neighborhood_radius_m = 0.05);

struct CoverageStats {
  double mean_db = 0.0;
  double std_db = 0.0;
  double min_db = 0.0;
  double frac_above_minus10 = 0.0;
};

CoverageStats coverage_stats(const AngularProfile& profile);

// Consecutive word windows; a word is disrupted iff >= rho of its frames have
// SJR above tau.
std::vector<bool> word_disruption(const SJRSeries& sjr, double word_duration_s,
                                  double tau_db, double rho = 0.5);

struct WerEstimate {
  double wer = 0.0;
  int disrupted_words = 0;
  int total_words = 0;
  double tau_db = 0.0;
  double rho = 0.5;
  double baseline = 0.30;
};

WerEstimate wer_proxy(const std::vector<bool>& disrupted, double tau_db,
                      double rho, double baseline = 0.30);

struct TauCalibration {
  double tau_db = 0.0;
  bool attainable = false;
  double onaxis_sjr_db = 0.0;
  double guard_sjr_db = 0.0;   // alpha = 50 deg companion geometry
  double onaxis_wer = 0.0;
  double achievable_max_wer = 0.0;
};

// Smallest tau (0.1 dB resolution) keeping the on-axis anchor at the target
// WER while the 50-degree companion geometry stays at the no-jamming
// baseline. The mic of scenario_onaxis defines alpha = 0; the guard geometry
// is the same mic rotated 50 degrees about the jammer centroid.
TauCalibration calibrate_tau(const Scenario& scenario_onaxis,
                             double target_wer = 0.95);

// WER of a static geometry under a calibrated tau (helper for sweeps).
WerEstimate static_wer(const Scenario& s, std::size_t mic_index, double tau_db,
                       double duration_s = 4.8, double rho = 0.5,
                       double baseline = 0.30);

// Monotone decreasing piecewise-linear map from mean SJR to the PESQ-like
// range [-0.5, 4.5]. Not a PESQ implementation.
double speech_quality_proxy(double sjr_mean_db);

std::string blind_report_to_json(const BlindSpotReport& report);
std::string coverage_stats_to_json(const CoverageStats& stats);
std::string wer_to_json(const WerEstimate& wer);

// Fig. 2 style bench: jammer preset at the origin facing +y, mic on a ring at
// mic_angle_deg, speech source at the jammer centroid.
Scenario make_bench_scenario(PresetId preset, double mic_angle_deg,
                             double mic_radius_m = 1.0, int source_groups = 1);

// Wearable bench: calibrate tau on the backdoor_3x3 anchor, place a mic in
// the deepest static blind direction of the single-source bracelet_24 at 1 m,
// then score the static case and each gesture kind.
struct GestureWerResult {
  TauCalibration calibration;
  double blind_angle_deg = 0.0;
  double blind_sjr_db = 0.0;
  WerEstimate static_wer;
  std::vector<std::pair<std::string, WerEstimate>> gesture_wer;
};

GestureWerResult gesture_wer_suite(double duration_s = 12.0, uint64_t seed = 1);

}  // namespace jamfield
