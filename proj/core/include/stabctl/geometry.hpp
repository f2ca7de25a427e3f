#pragma once

#include <vector>

#include "stabctl/planar_field.hpp"

namespace stabctl {

/// Squared distance from point p to segment [a, b] (exact projection).
double segment_point_dist2(const Vec2& a, const Vec2& b, const Vec2& p);

/// Ray-cast point-in-polygon test; the polygon is a closed polyline
/// (last vertex connects back to the first).
bool point_in_polygon(const std::vector<Vec2>& poly, const Vec2& p);

/// Total signed turns of the polygon around p (approximately +-1 for a
/// simple loop enclosing p, 0 otherwise).
int winding_number(const std::vector<Vec2>& poly, const Vec2& p);

/// Proper crossing test for segments [a,b] and [c,d]; shared endpoints and
/// touching configurations do not count.
bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

/// Resamples an open polyline at n points uniformly spaced in arclength
/// (endpoints preserved).
std::vector<Vec2> arclength_resample(const std::vector<Vec2>& line, int n);

}  // namespace stabctl
