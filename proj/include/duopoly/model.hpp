#pragma once

#include <algorithm>
#include <cmath>

#include "duopoly/errors.hpp"

namespace duopoly {

/// Two-realization uncertainty set over the inverse-demand parameters.
///
/// The payoff-relevant realizations are (b_hi, g_lo) and (b_lo, g_hi), with
/// b_hi >= g_hi >= b_lo >= g_lo >= 0 and choke price a > 0. Immutable after
/// construction.
class UncertaintySet {
 public:
  UncertaintySet(double b_hi, double b_lo, double g_hi, double g_lo, double a = 1.0)
      : b_hi_(b_hi), b_lo_(b_lo), g_hi_(g_hi), g_lo_(g_lo), a_(a) {
    if (!std::isfinite(a) || !(a > 0.0))
      throw NonPositiveChoke("choke price must be positive and finite");
    if (!std::isfinite(b_hi) || !std::isfinite(b_lo) || !std::isfinite(g_hi) ||
        !std::isfinite(g_lo))
      throw OrderingViolation("sensitivities must be finite");
    if (!(b_hi >= g_hi && g_hi >= b_lo && b_lo >= g_lo && g_lo >= 0.0))
      throw OrderingViolation("need b_hi >= g_hi >= b_lo >= g_lo >= 0");
    if (!(b_hi > 0.0)) throw OrderingViolation("need b_hi > 0");
  }

  double b_hi() const noexcept { return b_hi_; }
  double b_lo() const noexcept { return b_lo_; }
  double g_hi() const noexcept { return g_hi_; }
  double g_lo() const noexcept { return g_lo_; }
  double a() const noexcept { return a_; }

  /// True when both parameters are pinned down exactly (complete information).
  bool is_singleton() const noexcept { return b_hi_ == b_lo_ && g_hi_ == g_lo_; }

 private:
  double b_hi_, b_lo_, g_hi_, g_lo_, a_;
};

/// max{a - b*x - g*y, 0}: price of the good produced in quantity x when the
/// competitor produces y.
inline double inverse_demand(double x, double y, double b, double gamma, double a = 1.0) {
  if (!(x >= 0.0) || !(y >= 0.0)) throw NegativeInput("quantities must be >= 0");
  if (!(b >= 0.0) || !(gamma >= 0.0)) throw InvalidParameters("sensitivities must be >= 0");
  if (!(a > 0.0)) throw NonPositiveChoke("choke price must be positive");
  return std::max(a - b * x - gamma * y, 0.0);
}

/// Profit of the firm producing x against competitor output y. The competitor's
/// profit is payoff(y, x, ...).
inline double payoff(double x, double y, double b, double gamma, double a = 1.0) {
  return inverse_demand(x, y, b, gamma, a) * x;
}

enum class PayoffMode { worst, best };

/// Extremal profit over the two realizations of the uncertainty set.
inline double extremal_payoff(const UncertaintySet& u, double x, double y, PayoffMode mode) {
  const double on_duopoly_side = payoff(x, y, u.b_hi(), u.g_lo(), u.a());
  const double on_oligopoly_side = payoff(x, y, u.b_lo(), u.g_hi(), u.a());
  return mode == PayoffMode::worst ? std::min(on_duopoly_side, on_oligopoly_side)
                                   : std::max(on_duopoly_side, on_oligopoly_side);
}

/// Best reply under complete information (a = 1): (1 - gamma*x) / (2b) up to
/// the choke quantity, zero beyond. Fixed point at 1 / (2b + gamma).
inline double complete_info_reply(double b, double gamma, double x) {
  if (!(b > 0.0) || !(gamma >= 0.0) || !(gamma <= b))
    throw InvalidParameters("need b > 0 and 0 <= gamma <= b");
  if (!(x >= 0.0)) throw NegativeInput("quantity must be >= 0");
  if (gamma > 0.0 && x >= 1.0 / gamma) return 0.0;
  return (1.0 - gamma * x) / (2.0 * b);
}

struct LinearBranch {
  double intercept = 0.0;
  double slope = 0.0;
  double operator()(double x) const noexcept { return intercept + slope * x; }
};

enum class BranchId { left, middle, right, zero };

inline const char* to_string(BranchId b) noexcept {
  switch (b) {
    case BranchId::left: return "left";
    case BranchId::middle: return "middle";
    case BranchId::right: return "right";
    case BranchId::zero: return "zero";
  }
  return "?";
}

/// Worst-case best reply derived from a two-sided uncertainty set.
///
/// Piecewise linear: a decreasing left branch up to kink_lo, a rising middle
/// branch of slope mid_slope up to kink_hi, a decreasing right branch up to
/// the cutoff, and zero beyond. Branch coefficients and kinks are computed
/// once here; evaluation only selects the active branch. At a kink the branch
/// starting there is the active one (domains are closed on the left), which
/// is value-irrelevant since adjacent branches agree at kinks.
class BestReplyMap {
 public:
  explicit BestReplyMap(const UncertaintySet& u) : set_(u) {
    if (u.is_singleton())
      throw SingletonSet("uncertainty set is a singleton; use complete_info_reply");
    if (u.g_hi() == 0.0) throw DegenerateMap("g_hi = 0 leaves the cutoff undefined");
    if (u.b_hi() == u.b_lo() || u.g_hi() == u.g_lo())
      throw SingletonSet("one-sided uncertainty reduces to a complete-information reply");
    mid_slope_ = (u.g_hi() - u.g_lo()) / (u.b_hi() - u.b_lo());
    kink_lo_ = u.a() / (u.g_lo() + 2.0 * u.b_hi() * mid_slope_);
    kink_hi_ = u.a() / (u.g_hi() + 2.0 * u.b_lo() * mid_slope_);
    cutoff_ = u.a() / u.g_hi();
    left_ = {u.a() / (2.0 * u.b_hi()), 0.0 - u.g_lo() / (2.0 * u.b_hi())};
    middle_ = {0.0, mid_slope_};
    // b_lo = 0 empties the right side (kink_hi == cutoff); keep a zero branch
    // there so no coefficient divides by zero.
    right_ = u.b_lo() > 0.0
                 ? LinearBranch{u.a() / (2.0 * u.b_lo()), 0.0 - u.g_hi() / (2.0 * u.b_lo())}
                 : LinearBranch{0.0, 0.0};
  }

  const UncertaintySet& set() const noexcept { return set_; }
  double mid_slope() const noexcept { return mid_slope_; }
  double kink_lo() const noexcept { return kink_lo_; }
  double kink_hi() const noexcept { return kink_hi_; }
  double cutoff() const noexcept { return cutoff_; }
  const LinearBranch& left() const noexcept { return left_; }
  const LinearBranch& middle() const noexcept { return middle_; }
  const LinearBranch& right() const noexcept { return right_; }

  BranchId branch_at(double x) const {
    if (!(x >= 0.0) || !std::isfinite(x))
      throw NegativeInput("map argument must be finite and >= 0");
    if (x < kink_lo_) return BranchId::left;
    if (x < kink_hi_) return BranchId::middle;
    if (x < cutoff_) return BranchId::right;
    return BranchId::zero;
  }

  double operator()(double x) const {
    switch (branch_at(x)) {
      case BranchId::left: return left_(x);
      case BranchId::middle: return middle_(x);
      case BranchId::right: return right_(x);
      case BranchId::zero: return 0.0;
    }
    return 0.0;
  }

  /// Slope of the branch active at x.
  double slope_at(double x) const {
    switch (branch_at(x)) {
      case BranchId::left: return left_.slope;
      case BranchId::middle: return middle_.slope;
      case BranchId::right: return right_.slope;
      case BranchId::zero: return 0.0;
    }
    return 0.0;
  }

 private:
  UncertaintySet set_;
  double mid_slope_, kink_lo_, kink_hi_, cutoff_;
  LinearBranch left_, middle_, right_;
};

}  // namespace duopoly
