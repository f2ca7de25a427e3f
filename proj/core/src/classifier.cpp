#include "stabctl/classifier.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "stabctl/geometry.hpp"

namespace stabctl {

const char* to_string(OutcomeTag t) {
  switch (t) {
    case OutcomeTag::ToFixedPoint: return "fixed_point";
    case OutcomeTag::ToLimitCycle: return "limit_cycle";
    case OutcomeTag::Diverged: return "diverged";
    case OutcomeTag::Undetermined: return "undetermined";
  }
  return "?";
}

namespace {

// Flat segment table for fast repeated "is d(z, orbit) < eps" queries.
struct OrbitProximity {
  std::vector<double> ax, ay, bx, by;
  double x_lo, x_hi, y_lo, y_hi;

  explicit OrbitProximity(const ClosedOrbit& orbit) {
    const auto& p = orbit.points;
    x_lo = x_hi = p.front().x();
    y_lo = y_hi = p.front().y();
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      ax.push_back(p[i].x());
      ay.push_back(p[i].y());
      bx.push_back(p[i + 1].x());
      by.push_back(p[i + 1].y());
    }
    for (const auto& v : p) {
      x_lo = std::min(x_lo, v.x());
      x_hi = std::max(x_hi, v.x());
      y_lo = std::min(y_lo, v.y());
      y_hi = std::max(y_hi, v.y());
    }
  }

  bool within(const Vec2& z, double q_norm2, double eps) const {
    const double eps2 = eps * eps;
    if (q_norm2 >= eps2) return false;
    // bounding-box prune
    const double margin = eps;
    if (z.x() < x_lo - margin || z.x() > x_hi + margin || z.y() < y_lo - margin ||
        z.y() > y_hi + margin)
      return false;
    const double budget = eps2 - q_norm2;
    for (std::size_t i = 0; i < ax.size(); ++i) {
      const double abx = bx[i] - ax[i];
      const double aby = by[i] - ay[i];
      const double px = z.x() - ax[i];
      const double py = z.y() - ay[i];
      const double len2 = abx * abx + aby * aby;
      double t = len2 > 0.0 ? (px * abx + py * aby) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      const double dx = px - t * abx;
      const double dy = py - t * aby;
      if (dx * dx + dy * dy < budget) return true;
    }
    return false;
  }

  double min_planar_distance(const Vec2& z) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ax.size(); ++i) {
      const double abx = bx[i] - ax[i];
      const double aby = by[i] - ay[i];
      const double px = z.x() - ax[i];
      const double py = z.y() - ay[i];
      const double len2 = abx * abx + aby * aby;
      double t = len2 > 0.0 ? (px * abx + py * aby) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      const double dx = px - t * abx;
      const double dy = py - t * aby;
      best = std::min(best, dx * dx + dy * dy);
    }
    return std::sqrt(best);
  }
};

struct StreakClock {
  double start = -1.0;
  bool update(bool holds, double t, double dwell) {
    if (!holds) {
      start = -1.0;
      return false;
    }
    if (start < 0.0) start = t;
    return t - start >= dwell;
  }
};

Outcome classify_impl(const AugSystem& sys, const Vec4& s0, const OrbitProximity& prox,
                      const Vec2& z_star, const Thresholds& th, IntegrationSpec integ,
                      Trajectory<4>* record) {
  integ.direction = Direction::Forward;
  integ.t_max = th.horizon;

  Outcome out;
  StreakClock fp_clock, cycle_clock;
  double next_check = 0.0;

  // States closer to z* than this cannot be within eps_cycle of the cycle,
  // so the segment scan is skipped for the whole slow approach to z*.
  const double separation = prox.min_planar_distance(z_star);

  auto rhs = [&sys](double, const Vec4& s, Vec4& ds) { ds = aug_rhs(sys, s); };

  auto on_accept = [&](double t, const Vec4& s) {
    if (record) {
      record->times.push_back(t);
      record->states.push_back(s);
    }
    if (t + 1e-12 < next_check) return false;
    next_check = t + th.dt_check;

    const Vec2 z = s.head<2>();
    const double q_norm = s.tail<2>().norm();
    const double fp_dist = (z - z_star).norm();
    const bool near_fp = fp_dist + q_norm < th.eps_fp;
    if (fp_clock.update(near_fp, t, th.dwell_time)) {
      out.tag = OutcomeTag::ToFixedPoint;
      out.t_decided = t;
      return true;
    }
    const bool maybe_cycle = fp_dist + th.eps_cycle >= separation &&
                             prox.within(z, q_norm * q_norm, th.eps_cycle);
    if (cycle_clock.update(maybe_cycle, t, th.dwell_time)) {
      out.tag = OutcomeTag::ToLimitCycle;
      out.t_decided = t;
      return true;
    }
    return false;
  };

  double tf = 0.0;
  Vec4 sf = s0;
  IntegrationSpec window = integ;
  window.max_step = std::min(integ.max_step, th.dt_check);
  const Termination term = drive<4>(rhs, s0, window, on_accept, tf, sf);
  out.final_state = sf;

  switch (term) {
    case Termination::EventHit:
      break;  // tag/t_decided already set
    case Termination::Blowup:
      out.tag = OutcomeTag::Diverged;
      out.t_decided = tf;
      break;
    case Termination::ReachedTmax:
    case Termination::StiffnessFailure:
      out.tag = OutcomeTag::Undetermined;
      out.t_decided = tf;
      break;
  }
  return out;
}

}  // namespace

Outcome classify(const AugSystem& sys, const Vec4& s0, const ClosedOrbit& gamma_s,
                 const Vec2& z_star, const Thresholds& thresholds, const IntegrationSpec& integ,
                 Trajectory<4>* record) {
  const OrbitProximity prox(gamma_s);
  return classify_impl(sys, s0, prox, z_star, thresholds, integ, record);
}

double ClassificationMap::undetermined_fraction() const {
  if (cells.empty()) return 0.0;
  std::size_t n = 0;
  for (const auto& c : cells)
    if (c.tag == OutcomeTag::Undetermined) ++n;
  return double(n) / double(cells.size());
}

bool ClassificationMap::tags_open_connected() const {
  for (int j = 0; j < n2; ++j) {
    for (int i = 0; i < n1; ++i) {
      const MapCell& c = at(i, j);
      if (c.tag == OutcomeTag::Undetermined) continue;
      bool has_neighbor = false;
      const int di[] = {1, -1, 0, 0};
      const int dj[] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int ii = i + di[k], jj = j + dj[k];
        if (ii < 0 || ii >= n1 || jj < 0 || jj >= n2) continue;
        const MapCell& nb = at(ii, jj);
        if (nb.tag == c.tag && nb.target_index == c.target_index) {
          has_neighbor = true;
          break;
        }
      }
      if (!has_neighbor) return false;
    }
  }
  return true;
}

std::vector<int> ClassificationMap::region_labels() const {
  std::vector<int> label(cells.size(), -1);
  int next = 0;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < cells.size(); ++start) {
    if (label[start] >= 0 || cells[start].tag == OutcomeTag::Undetermined) continue;
    label[start] = next;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      const int i = int(idx % n1), j = int(idx / n1);
      const int di[] = {1, -1, 0, 0};
      const int dj[] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int ii = i + di[k], jj = j + dj[k];
        if (ii < 0 || ii >= n1 || jj < 0 || jj >= n2) continue;
        const std::size_t nidx = std::size_t(jj) * n1 + ii;
        if (label[nidx] >= 0 || cells[nidx].tag == OutcomeTag::Undetermined) continue;
        if (cells[nidx].tag == cells[idx].tag &&
            cells[nidx].target_index == cells[idx].target_index) {
          label[nidx] = next;
          stack.push_back(nidx);
        }
      }
    }
    ++next;
  }
  return label;
}

int ClassificationMap::connected_region_count() const {
  const auto labels = region_labels();
  int maxl = -1;
  for (int l : labels) maxl = std::max(maxl, l);
  return maxl + 1;
}

namespace {

template <class CellFn>
void run_cells(ClassificationMap& map, int jobs, const CellFn& cell_fn) {
  const std::size_t total = map.cells.size();
  if (jobs <= 0) jobs = int(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min<int>(jobs, int(total)));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= total) return;
      cell_fn(idx);
    }
  };
  if (jobs == 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace

ClassificationMap sweep(const AugSystem& sys, const Vec2& base, const GridSpec& grid,
                        const ClosedOrbit& gamma_s, const Vec2& z_star,
                        const Thresholds& thresholds, const IntegrationSpec& integ, int jobs) {
  ClassificationMap map;
  map.base = base;
  map.u_min = grid.u_min;
  map.u_max = grid.u_max;
  map.v_min = grid.v_min;
  map.v_max = grid.v_max;
  map.n1 = grid.n1;
  map.n2 = grid.n2;
  map.cells.resize(std::size_t(grid.n1) * grid.n2);

  const OrbitProximity prox(gamma_s);
  run_cells(map, jobs, [&](std::size_t idx) {
    const int i = int(idx % map.n1), j = int(idx / map.n1);
    const Vec4 s0(base.x(), base.y(), map.u_value(i), map.v_value(j));
    const Outcome oc = classify_impl(sys, s0, prox, z_star, thresholds, integ, nullptr);
    map.cells[idx] = MapCell{oc.tag, oc.target_index, oc.t_decided};
  });
  return map;
}

Outcome classify_1d(const ScalarField& f, double rho, const Vec2& s0, const Thresholds& th,
                    const IntegrationSpec& integ_in) {
  IntegrationSpec integ = integ_in;
  integ.direction = Direction::Forward;
  integ.t_max = th.horizon;
  integ.max_step = std::min(integ.max_step, th.dt_check);

  Outcome out;
  std::vector<StreakClock> clocks(f.stable_roots.size());
  double next_check = 0.0;
  auto rhs = [&](double, const Vec2& s, Vec2& ds) { ds = rhs_1d(f, rho, s); };
  auto on_accept = [&](double t, const Vec2& s) {
    if (t + 1e-12 < next_check) return false;
    next_check += th.dt_check;
    for (std::size_t k = 0; k < f.stable_roots.size(); ++k) {
      const bool near = std::abs(s.x() - f.stable_roots[k]) + std::abs(s.y()) < th.eps_fp;
      if (clocks[k].update(near, t, th.dwell_time)) {
        out.tag = OutcomeTag::ToFixedPoint;
        out.target_index = int(k);
        out.t_decided = t;
        return true;
      }
    }
    return false;
  };

  double tf = 0.0;
  Vec2 sf = s0;
  const Termination term = drive<2>(rhs, s0, integ, on_accept, tf, sf);
  out.final_state = Vec4(sf.x(), sf.y(), 0.0, 0.0);
  switch (term) {
    case Termination::EventHit: break;
    case Termination::Blowup:
      out.tag = OutcomeTag::Diverged;
      out.t_decided = tf;
      break;
    default:
      out.tag = OutcomeTag::Undetermined;
      out.t_decided = tf;
      break;
  }
  return out;
}

ClassificationMap sweep_1d(const ScalarField& f, double rho, const GridSpec& grid,
                           const Thresholds& thresholds, const IntegrationSpec& integ,
                           int jobs) {
  ClassificationMap map;
  map.u_min = grid.u_min;
  map.u_max = grid.u_max;
  map.v_min = grid.v_min;
  map.v_max = grid.v_max;
  map.n1 = grid.n1;
  map.n2 = grid.n2;
  map.cells.resize(std::size_t(grid.n1) * grid.n2);

  run_cells(map, jobs, [&](std::size_t idx) {
    const int i = int(idx % map.n1), j = int(idx / map.n1);
    const Vec2 s0(map.u_value(i), map.v_value(j));
    const Outcome oc = classify_1d(f, rho, s0, thresholds, integ);
    map.cells[idx] = MapCell{oc.tag, oc.target_index, oc.t_decided};
  });
  return map;
}

}  // namespace stabctl
