#pragma once

#include <stdexcept>
#include <vector>

#include "stabctl/integrator.hpp"
#include "stabctl/planar_field.hpp"

namespace stabctl {

enum class CycleStability { Stable, Unstable };

/// Sampled periodic orbit of the planar system. `points` traverses one
/// period; the last sample is the flow return to the first (their gap is
/// the numerical closure residual). Immutable once built.
struct ClosedOrbit {
  std::vector<Vec2> points;
  double period = 0.0;
  CycleStability stability = CycleStability::Stable;

  double x_min() const;
  double x_max() const;
};

struct NoCycleFound : std::runtime_error {
  explicit NoCycleFound(const std::string& what) : std::runtime_error(what) {}
};

/// Knobs for cycle extraction.
struct CycleSearch {
  double transient = 100.0;     // discarded settling time
  double horizon = 600.0;       // crossing-collection budget after transient
  int samples = 800;            // arclength-uniform resampling count
  double period_rtol = 1e-7;    // successive period estimates agreement
  double closure_tol = 1e-6;    // |last - first| requirement
  IntegrationSpec integ;        // tolerances; direction is overridden
};

/// Extracts a limit cycle by settling onto it (forward flow for a stable
/// cycle, backward flow for an unstable one), detecting the period with a
/// Poincare half-line section anchored at the loop centroid, and
/// resampling one period uniformly by arclength.
/// Throws NoCycleFound when no converged period is detected in the budget.
ClosedOrbit find_cycle(const PlanarField& field, const Vec2& seed, Direction direction,
                       const CycleSearch& search = {});

/// 4D distance d((z,q), orbit) = min over orbit samples w of |(z,q)-(w,0)|,
/// with exact point-segment projection along the polyline.
double distance_to_orbit(const Vec4& s, const ClosedOrbit& orbit);

/// Planar specialization (q = 0).
double planar_distance_to_orbit(const Vec2& z, const ClosedOrbit& orbit);

}  // namespace stabctl
