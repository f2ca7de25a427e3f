#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stabctl/augmented.hpp"
#include "stabctl/limit_cycle.hpp"

namespace stabctl {

/// Definiteness of -[rho I + D_F(z)] via its symmetric part.
struct DefinitenessResult {
  Vec2 point;
  double sym_eigs[2];  // ascending
  bool negative_definite = false;
  bool positive_definite = false;
};

DefinitenessResult in_D_rho(const PlanarField& field, double rho, const Vec2& z);

/// The closed-form x-strip bound for the Bonhoeffer-van der Pol model:
/// membership in D_rho is |x| < x_bound. Empty when c*rho - b <= 0 or the
/// radicand is negative.
struct DRhoInterval {
  bool empty = true;
  double x_bound = 0.0;
  std::string reason;
};

DRhoInterval bvp_D_rho_interval(const BvpParams& params, double rho);

enum class CheckStatus { Pass, Fail, NotChecked, HeuristicPass, HeuristicSuspect };

const char* to_string(CheckStatus s);

struct AssumptionCheck {
  std::string id;      // "A1".."A5", "AA"
  CheckStatus status = CheckStatus::NotChecked;
  std::string detail;  // witnesses, counts, thresholds
};

/// Candidate Lyapunov data for the A4 check; both the value and its
/// gradient must be supplied.
struct LyapunovCandidate {
  std::function<double(const Vec2&)> value;
  std::function<Vec2(const Vec2&)> gradient;
};

struct AuditOptions {
  Vec2 k_lo{-3.0, -2.0};
  Vec2 k_hi{3.0, 2.0};
  std::optional<LyapunovCandidate> lyapunov;
  int fill_resolution = 200;   // interior grid for A1
  int boundary_samples = 1000; // exterior samples for A4/A5
  int recurrence_seeds = 40;   // AA heuristic
  double q_bound = 5.0;        // AA costate box half-width
  double recurrence_horizon = 100.0;
};

struct AssumptionReport {
  std::vector<AssumptionCheck> checks;
  CheckStatus status(const std::string& id) const;
  const AssumptionCheck& check(const std::string& id) const;
};

/// Numerically audits the separation assumptions for the augmented system:
///   A1 cycle interior inside D_rho, A2 exactly two nontrivial equilibria,
///   A3 the inequality at each of them, A4 a user-supplied Lyapunov
///   candidate (NotChecked when absent), A5 positive definiteness outside
///   the K box, AA an absence-of-recurrence heuristic (never certified).
AssumptionReport audit(const AugSystem& sys, const ClosedOrbit& gamma_s,
                       const AuditOptions& options = {});

}  // namespace stabctl
