#pragma once

#include <string>
#include <vector>

#include "stabctl/classifier.hpp"
#include "stabctl/equilibria.hpp"
#include "stabctl/integrator.hpp"
#include "stabctl/limit_cycle.hpp"

namespace stabctl {

/// Floating-point text formatting used by every writer and report
/// (9 significant digits).
std::string format_g9(double v);

/// Trajectory CSV: header `t,x,y,q1,q2`, one row per accepted step.
void write_trajectory_csv(const std::string& path, const Trajectory<4>& trajectory);

/// Map CSV: header `<u>,<v>,tag,t_decided` (u,v = q1,q2 or x,q), row-major
/// in the map's cell order. 1D fixed-point tags carry the root index as
/// `fixed_point:<k>`.
void write_map_csv(const std::string& path, const ClassificationMap& map,
                   const std::string& u_name = "q1", const std::string& v_name = "q2");

/// Binary PGM (P5, maxval 255): fixed point 0, limit cycle 255,
/// diverged 128, undetermined 64; row-major with the v axis increasing
/// downward.
void write_map_pgm(const std::string& path, const ClassificationMap& map);

/// Cycle polyline CSV: header `x,y`.
void write_orbit_csv(const std::string& path, const ClosedOrbit& orbit);

/// Equilibria CSV: `kind,x,y,q1,q2,re1,im1,re2,im2,re3,im3,re4,im4,lambda0,a3`.
void write_equilibria_csv(const std::string& path,
                          const std::vector<EquilibriumReport>& reports);

/// Generic polyline CSV with a custom header, e.g. separatrix branches.
void write_polyline_csv(const std::string& path, const std::vector<Vec2>& line,
                        const std::string& header = "x,q");

std::string map_tag_string(const MapCell& cell);

}  // namespace stabctl
