#pragma once

#include <vector>

#include "stabctl/augmented.hpp"
#include "stabctl/integrator.hpp"
#include "stabctl/limit_cycle.hpp"

namespace stabctl {

enum class OutcomeTag { ToFixedPoint, ToLimitCycle, Diverged, Undetermined };

const char* to_string(OutcomeTag t);

/// Asymptotic fate of one trajectory. `t_decided` is the time at which the
/// sustained criterion completed (or the termination time otherwise).
/// `target_index` identifies the stable root for 1D sweeps, -1 elsewhere.
struct Outcome {
  OutcomeTag tag = OutcomeTag::Undetermined;
  double t_decided = 0.0;
  Vec4 final_state = Vec4::Zero();
  int target_index = -1;
};

/// Decision thresholds. A criterion must hold at every check (spaced
/// dt_check apart) over a full dwell_time window before it decides.
struct Thresholds {
  double eps_fp = 1e-3;
  double eps_cycle = 5e-3;
  double dwell_time = 10.0;
  double dt_check = 0.1;
  double horizon = 1000.0;

  bool operator==(const Thresholds&) const = default;
};

/// Classifies the forward orbit of s0: sustained proximity to the fixed
/// point (z*, 0) wins ToFixedPoint, sustained distance-to-cycle below
/// eps_cycle wins ToLimitCycle, norm blowup wins Diverged; horizon
/// exhaustion (or integrator stiffness failure) leaves Undetermined.
/// When `record` is non-null every accepted step is appended to it.
Outcome classify(const AugSystem& sys, const Vec4& s0, const ClosedOrbit& gamma_s,
                 const Vec2& z_star, const Thresholds& thresholds,
                 const IntegrationSpec& integ = {}, Trajectory<4>* record = nullptr);

struct MapCell {
  OutcomeTag tag = OutcomeTag::Undetermined;
  int target_index = -1;
  double t_decided = 0.0;
};

/// Outcome grid over a rectangle of initial values. For planar sweeps the
/// axes are (q1, q2) at a fixed base state; for 1D sweeps they are (x, q).
/// Cells are row-major with the second axis increasing along rows.
struct ClassificationMap {
  Vec2 base = Vec2::Zero();
  double u_min = 0, u_max = 0, v_min = 0, v_max = 0;
  int n1 = 0, n2 = 0;
  std::vector<MapCell> cells;

  const MapCell& at(int i, int j) const { return cells[std::size_t(j) * n1 + i]; }
  double u_value(int i) const {
    return n1 > 1 ? u_min + (u_max - u_min) * i / double(n1 - 1) : u_min;
  }
  double v_value(int j) const {
    return n2 > 1 ? v_min + (v_max - v_min) * j / double(n2 - 1) : v_min;
  }

  double undetermined_fraction() const;
  /// True when every decided cell has at least one 4-neighbor with the
  /// same tag (and target index).
  bool tags_open_connected() const;
  /// Number of 4-connected components among decided cells, where cells
  /// belong together iff tag and target index agree.
  int connected_region_count() const;
  /// Component label per cell (-1 for undetermined), matching the count.
  std::vector<int> region_labels() const;
};

struct GridSpec {
  double u_min = -5.0, u_max = 5.0;
  double v_min = -5.0, v_max = 5.0;
  int n1 = 101, n2 = 101;
};

/// Classifies the (q1, q2) grid at fixed (x0, y0). Cells are independent;
/// `jobs` worker threads pull cells from a shared counter and write to
/// preallocated slots, so the result is identical for any job count.
ClassificationMap sweep(const AugSystem& sys, const Vec2& base, const GridSpec& grid,
                        const ClosedOrbit& gamma_s, const Vec2& z_star,
                        const Thresholds& thresholds, const IntegrationSpec& integ = {},
                        int jobs = 0);

/// Classifies the forward orbit of the 1D system from (x, q).
Outcome classify_1d(const ScalarField& f, double rho, const Vec2& s0,
                    const Thresholds& thresholds, const IntegrationSpec& integ = {});

/// Sweeps the (x, q) plane of the 1D system. ToFixedPoint cells carry the
/// index of the stable root they converge to.
ClassificationMap sweep_1d(const ScalarField& f, double rho, const GridSpec& grid,
                           const Thresholds& thresholds, const IntegrationSpec& integ = {},
                           int jobs = 0);

}  // namespace stabctl
