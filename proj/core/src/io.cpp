#include "stabctl/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace stabctl {

const char* to_string(Termination t) {
  switch (t) {
    case Termination::ReachedTmax: return "reached_tmax";
    case Termination::Blowup: return "blowup";
    case Termination::EventHit: return "event_hit";
    case Termination::StiffnessFailure: return "stiffness_failure";
  }
  return "?";
}

std::string format_g9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

namespace {

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

}  // namespace

void write_trajectory_csv(const std::string& path, const Trajectory<4>& trajectory) {
  auto out = open_or_throw(path);
  out << "t,x,y,q1,q2\n";
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    const auto& s = trajectory.states[i];
    out << format_g9(trajectory.times[i]) << ',' << format_g9(s[0]) << ',' << format_g9(s[1])
        << ',' << format_g9(s[2]) << ',' << format_g9(s[3]) << '\n';
  }
}

std::string map_tag_string(const MapCell& cell) {
  std::string tag = to_string(cell.tag);
  if (cell.tag == OutcomeTag::ToFixedPoint && cell.target_index >= 0)
    tag += ":" + std::to_string(cell.target_index);
  return tag;
}

void write_map_csv(const std::string& path, const ClassificationMap& map,
                   const std::string& u_name, const std::string& v_name) {
  auto out = open_or_throw(path);
  out << u_name << ',' << v_name << ",tag,t_decided\n";
  for (int j = 0; j < map.n2; ++j) {
    for (int i = 0; i < map.n1; ++i) {
      const MapCell& c = map.at(i, j);
      out << format_g9(map.u_value(i)) << ',' << format_g9(map.v_value(j)) << ','
          << map_tag_string(c) << ',' << format_g9(c.t_decided) << '\n';
    }
  }
}

void write_map_pgm(const std::string& path, const ClassificationMap& map) {
  auto out = open_or_throw(path);
  out << "P5\n" << map.n1 << ' ' << map.n2 << "\n255\n";
  std::vector<unsigned char> row(map.n1);
  for (int j = 0; j < map.n2; ++j) {
    for (int i = 0; i < map.n1; ++i) {
      switch (map.at(i, j).tag) {
        case OutcomeTag::ToFixedPoint: row[i] = 0; break;
        case OutcomeTag::ToLimitCycle: row[i] = 255; break;
        case OutcomeTag::Diverged: row[i] = 128; break;
        case OutcomeTag::Undetermined: row[i] = 64; break;
      }
    }
    out.write(reinterpret_cast<const char*>(row.data()), row.size());
  }
}

void write_orbit_csv(const std::string& path, const ClosedOrbit& orbit) {
  auto out = open_or_throw(path);
  out << "x,y\n";
  for (const auto& p : orbit.points)
    out << format_g9(p.x()) << ',' << format_g9(p.y()) << '\n';
}

void write_equilibria_csv(const std::string& path,
                          const std::vector<EquilibriumReport>& reports) {
  auto out = open_or_throw(path);
  out << "kind,x,y,q1,q2,re1,im1,re2,im2,re3,im3,re4,im4,lambda0,a3\n";
  for (const auto& r : reports) {
    out << (r.kind == EquilibriumKind::Trivial ? "trivial" : "nontrivial") << ','
        << format_g9(r.z.x()) << ',' << format_g9(r.z.y()) << ',' << format_g9(r.q.x()) << ','
        << format_g9(r.q.y());
    for (const auto& e : r.eigenvalues)
      out << ',' << format_g9(e.real()) << ',' << format_g9(e.imag());
    out << ',' << format_g9(r.lambda0) << ',' << (r.a3_satisfied ? 1 : 0) << '\n';
  }
}

void write_polyline_csv(const std::string& path, const std::vector<Vec2>& line,
                        const std::string& header) {
  auto out = open_or_throw(path);
  out << header << '\n';
  for (const auto& p : line) out << format_g9(p.x()) << ',' << format_g9(p.y()) << '\n';
}

}  // namespace stabctl
