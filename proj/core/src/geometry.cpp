#include "stabctl/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace stabctl {

double segment_point_dist2(const Vec2& a, const Vec2& b, const Vec2& p) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).squaredNorm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).squaredNorm();
}

bool point_in_polygon(const std::vector<Vec2>& poly, const Vec2& p) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& pi = poly[i];
    const Vec2& pj = poly[j];
    if ((pi.y() > p.y()) != (pj.y() > p.y())) {
      const double x_cross = pj.x() + (p.y() - pj.y()) / (pi.y() - pj.y()) * (pi.x() - pj.x());
      if (p.x() < x_cross) inside = !inside;
    }
  }
  return inside;
}

int winding_number(const std::vector<Vec2>& poly, const Vec2& p) {
  double angle = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 u = poly[i] - p;
    const Vec2 v = poly[(i + 1) % n] - p;
    angle += std::atan2(u.x() * v.y() - u.y() * v.x(), u.dot(v));
  }
  return int(std::lround(angle / (2.0 * M_PI)));
}

namespace {
double orient(const Vec2& a, const Vec2& b, const Vec2& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}
}  // namespace

bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const double o1 = orient(a, b, c);
  const double o2 = orient(a, b, d);
  const double o3 = orient(c, d, a);
  const double o4 = orient(c, d, b);
  return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 &&
         o4 != 0;
}

std::vector<Vec2> arclength_resample(const std::vector<Vec2>& line, int n) {
  if (line.size() < 2 || n < 2) return line;
  std::vector<double> s(line.size(), 0.0);
  for (std::size_t i = 1; i < line.size(); ++i)
    s[i] = s[i - 1] + (line[i] - line[i - 1]).norm();
  const double total = s.back();

  std::vector<Vec2> out;
  out.reserve(n);
  std::size_t j = 0;
  for (int i = 0; i < n; ++i) {
    const double target = total * double(i) / double(n - 1);
    while (j + 1 < s.size() && s[j + 1] < target) ++j;
    if (j + 1 >= line.size()) {
      out.push_back(line.back());
      continue;
    }
    const double seg = s[j + 1] - s[j];
    const double w = seg > 0.0 ? (target - s[j]) / seg : 0.0;
    out.push_back(line[j] + w * (line[j + 1] - line[j]));
  }
  return out;
}

}  // namespace stabctl
