#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "duopoly/model.hpp"

namespace duopoly {

/// Tolerance deciding the measure-zero boundary cases mid_slope == 1 and
/// g_hi == 2*b_lo (and eigenvalue magnitude == 1). Exact-boundary studies need
/// inputs that land within this tolerance of the boundary.
inline constexpr double kBoundaryTol = 1e-10;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const noexcept { return hi - lo; }
  bool contains(double x, double tol = 0.0) const noexcept {
    return x >= lo - tol && x <= hi + tol;
  }
};

/// Midpoint of cell i of a range split into n equal cells.
inline double cell_center(Interval range, int i, int n) {
  return range.lo + (static_cast<double>(i) + 0.5) * range.width() / static_cast<double>(n);
}

enum class Stability { attracting, marginal, repelling };

inline const char* to_string(Stability s) noexcept {
  switch (s) {
    case Stability::attracting: return "attracting";
    case Stability::marginal: return "marginal";
    case Stability::repelling: return "repelling";
  }
  return "?";
}

inline Stability stability_from_eigenvalue(double ev, double tol = kBoundaryTol) {
  const double mag = std::abs(ev);
  if (std::abs(mag - 1.0) <= tol) return Stability::marginal;
  return mag < 1.0 ? Stability::attracting : Stability::repelling;
}

/// Fixed points of the best-reply map. Below unit middle slope the unique
/// fixed point sits on the left branch, above it on the right branch; at unit
/// slope the whole middle side [kink_lo, kink_hi] is fixed.
struct FixedPointReport {
  enum class Kind { unique_left, unique_right, segment };
  Kind kind = Kind::unique_left;
  double point = std::numeric_limits<double>::quiet_NaN();  // unique_* kinds
  Interval segment;                                         // segment kind
  double eigenvalue = 0.0;
  Stability stability = Stability::attracting;
};

inline const char* to_string(FixedPointReport::Kind k) noexcept {
  switch (k) {
    case FixedPointReport::Kind::unique_left: return "unique-left";
    case FixedPointReport::Kind::unique_right: return "unique-right";
    case FixedPointReport::Kind::segment: return "segment";
  }
  return "?";
}

inline FixedPointReport fixed_points(const BestReplyMap& m) {
  const UncertaintySet& u = m.set();
  FixedPointReport rep;
  if (std::abs(m.mid_slope() - 1.0) <= kBoundaryTol) {
    rep.kind = FixedPointReport::Kind::segment;
    rep.segment = {m.kink_lo(), m.kink_hi()};
    rep.eigenvalue = 1.0;
    rep.stability = Stability::marginal;
    return rep;
  }
  if (m.mid_slope() < 1.0) {
    rep.kind = FixedPointReport::Kind::unique_left;
    rep.point = u.a() / (u.g_lo() + 2.0 * u.b_hi());
    rep.eigenvalue = 0.0 - u.g_lo() / (2.0 * u.b_hi());
  } else {
    rep.kind = FixedPointReport::Kind::unique_right;
    rep.point = u.a() / (u.g_hi() + 2.0 * u.b_lo());
    rep.eigenvalue = u.b_lo() > 0.0 ? 0.0 - u.g_hi() / (2.0 * u.b_lo())
                                    : -std::numeric_limits<double>::infinity();
  }
  rep.stability = stability_from_eigenvalue(rep.eigenvalue);
  return rep;
}

enum class RegimeCase { I, II, IIIa, IIIb, IIIc, IIId };

inline const char* to_string(RegimeCase c) noexcept {
  switch (c) {
    case RegimeCase::I: return "I";
    case RegimeCase::II: return "II";
    case RegimeCase::IIIa: return "IIIa";
    case RegimeCase::IIIb: return "IIIb";
    case RegimeCase::IIIc: return "IIIc";
    case RegimeCase::IIId: return "IIId";
  }
  return "?";
}

/// Dynamical regime; the attracting set in cases IIIc/IIId consists of 2^k
/// cyclically permuted intervals (k = 0 in IIId).
struct Regime {
  RegimeCase tag = RegimeCase::I;
  int k = 0;
};

namespace detail {

// Image of the upper kink under middle-right-middle branch composition. It
// crossing the right fixed point marks the merging of the chaotic pieces
// into a single interval.
inline double homoclinic_image(const BestReplyMap& m) {
  double v = m.middle()(m.kink_hi());
  v = m.right()(v);
  return m.middle()(v);
}

inline double right_fixed_point(const BestReplyMap& m) {
  return m.set().a() / (m.set().g_hi() + 2.0 * m.set().b_lo());
}

}  // namespace detail

/// Analytic regime classification; does not run any simulation, so chaotic
/// piece counts are not resolved here (IIIc is reported with the piece count
/// left to chaotic_intervals).
inline RegimeCase classify_case(const BestReplyMap& m) {
  if (std::abs(m.mid_slope() - 1.0) <= kBoundaryTol) return RegimeCase::II;
  if (m.mid_slope() < 1.0) return RegimeCase::I;
  const double flip = m.set().g_hi() - 2.0 * m.set().b_lo();
  if (std::abs(flip) <= kBoundaryTol) return RegimeCase::IIIb;
  if (flip < 0.0) return RegimeCase::IIIa;
  return detail::homoclinic_image(m) < detail::right_fixed_point(m) ? RegimeCase::IIId
                                                                    : RegimeCase::IIIc;
}

/// Periodic orbit of the 1D map. points are successive iterates, so the map
/// sends points[i] to points[(i+1) % period]. continuum marks the segment of
/// marginal 2-cycles present at the degenerate flip (g_hi == 2*b_lo), where
/// points holds the segment ends.
struct Cycle {
  int period = 1;
  std::vector<double> points;
  double eigenvalue = 0.0;  // product of branch slopes along the cycle
  Stability stability = Stability::attracting;
  bool continuum = false;
};

/// Enumerates 2-cycles by solving the linear system for every branch pair and
/// keeping solutions that respect the branch domains. Pairs with identity
/// composition are singular and carry no isolated cycle.
inline std::vector<Cycle> find_two_cycles(const BestReplyMap& m) {
  struct Piece {
    LinearBranch f;
    double lo, hi;
  };
  const Piece pieces[3] = {
      {m.left(), 0.0, m.kink_lo()},
      {m.middle(), m.kink_lo(), m.kink_hi()},
      {m.right(), m.kink_hi(), m.cutoff()},
  };
  std::vector<Cycle> out;
  const double dom_tol = 1e-12 * m.cutoff();
  for (int ia = 0; ia < 3; ++ia) {
    for (int ib = ia; ib < 3; ++ib) {
      const Piece& A = pieces[ia];
      const Piece& B = pieces[ib];
      if (!(A.lo < A.hi) || !(B.lo < B.hi)) continue;  // empty side
      const double det = 1.0 - A.f.slope * B.f.slope;
      if (std::abs(det) < 1e-14) continue;
      const double x1 = (B.f.intercept + B.f.slope * A.f.intercept) / det;
      const double x2 = A.f(x1);
      if (!(x1 >= A.lo - dom_tol && x1 <= A.hi + dom_tol)) continue;
      if (!(x2 >= B.lo - dom_tol && x2 <= B.hi + dom_tol)) continue;
      if (!(x1 >= 0.0) || !(x2 >= 0.0)) continue;
      if (std::abs(x1 - x2) <= 1e-12 * (1.0 + std::abs(x1))) continue;  // fixed point
      // confirm against the actual map, which settles branch ties at kinks
      if (std::abs(m(m(x1)) - x1) > 1e-9 * (1.0 + std::abs(x1))) continue;
      Cycle c;
      c.period = 2;
      c.points = x1 <= x2 ? std::vector<double>{x1, x2} : std::vector<double>{x2, x1};
      c.eigenvalue = A.f.slope * B.f.slope;
      c.stability = stability_from_eigenvalue(c.eigenvalue);
      bool dup = false;
      for (const Cycle& e : out)
        dup = dup || (std::abs(e.points[0] - c.points[0]) <= 1e-9 &&
                      std::abs(e.points[1] - c.points[1]) <= 1e-9);
      if (!dup) out.push_back(std::move(c));
    }
  }
  if (classify_case(m) == RegimeCase::IIIb) {
    Cycle seg;
    seg.period = 2;
    const double lo = m.kink_hi();
    seg.points = {lo, m(lo)};
    seg.eigenvalue = 1.0;  // (-1)^2 along the right branch
    seg.stability = Stability::marginal;
    seg.continuum = true;
    out.push_back(std::move(seg));
  }
  return out;
}

/// First depth images of the upper kink: c_1 = f(kink_hi), c_{j+1} = f(c_j).
/// These are the candidate boundaries of the chaotic pieces.
inline std::vector<double> critical_orbit(const BestReplyMap& m, int depth) {
  if (depth < 1) throw InvalidParameters("critical orbit depth must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(depth));
  double c = m(m.kink_hi());
  for (int i = 0; i < depth; ++i) {
    out.push_back(c);
    c = m(c);
  }
  return out;
}

/// The 2^k cyclically permuted chaotic intervals together with the critical
/// images bounding them.
struct ChaoticIntervals {
  int k = 0;
  std::vector<Interval> intervals;     // f maps intervals[i] onto intervals[(i+1) % size]
  std::vector<double> critical_orbit;  // first 2^(k+1) images of the upper kink
  bool absorbing_interval_valid = true;  // f^2(kink_hi) > kink_lo
};

namespace detail {

// Exact image of [lo, hi] under the piecewise-linear map: hull of the images
// of the endpoints and of any interior kink.
inline Interval interval_image(const BestReplyMap& m, Interval iv) {
  double lo = std::min(m(iv.lo), m(iv.hi));
  double hi = std::max(m(iv.lo), m(iv.hi));
  for (double kink : {m.kink_lo(), m.kink_hi(), m.cutoff()}) {
    if (kink > iv.lo && kink < iv.hi) {
      const double v = m(kink);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return {lo, hi};
}

}  // namespace detail

/// Chaotic intervals for regimes IIIc/IIId.
///
/// Past the homoclinic merge (IIId) the single interval is known in closed
/// form as [f^2(kink_hi), f(kink_hi)]. Before it (IIIc) the piece count is
/// found numerically: a long orbit is clustered by its gaps, the count must
/// be a power of two, and the piece boundaries are then pinned to the exact
/// critical-orbit images, ordered so that each piece holds the matching
/// critical image. The cyclic closure of the piece images is verified to
/// 1e-10 before anything is returned.
inline ChaoticIntervals chaotic_intervals(const BestReplyMap& m) {
  const RegimeCase tag = classify_case(m);
  if (tag != RegimeCase::IIIc && tag != RegimeCase::IIId)
    throw NotChaoticRegime("chaotic intervals exist only past the degenerate flip");
  ChaoticIntervals out;
  const double c1 = m(m.kink_hi());
  const double c2 = m(c1);
  out.absorbing_interval_valid = c2 > m.kink_lo();
  if (tag == RegimeCase::IIId) {
    out.k = 0;
    out.intervals = {{c2, c1}};
    out.critical_orbit = {c1, c2};
    return out;
  }

  constexpr long kBurn = 10000;
  constexpr long kSamples = 200000;
  double x = c2 + 0.37 * (c1 - c2);
  for (long i = 0; i < kBurn; ++i) x = m(x);
  std::vector<double> pts(kSamples);
  for (double& p : pts) {
    x = m(x);
    p = x;
  }
  std::sort(pts.begin(), pts.end());
  const double span = pts.back() - pts.front();
  const double gap_tol = 1e-4 * std::max(span, c1 - c2);
  std::vector<Interval> clusters{{pts.front(), pts.front()}};
  for (double p : pts) {
    if (p - clusters.back().hi > gap_tol)
      clusters.push_back({p, p});
    else
      clusters.back().hi = p;
  }
  const std::size_t pieces = clusters.size();
  if (pieces < 2 || (pieces & (pieces - 1)) != 0)
    throw PieceCountNotPowerOfTwo("orbit splits into " + std::to_string(pieces) +
                                  " pieces, not a power of two >= 2");
  int k = 0;
  while ((std::size_t{1} << k) < pieces) ++k;

  const std::vector<double> crit = critical_orbit(m, static_cast<int>(2 * pieces));
  std::vector<double> bounds = crit;
  std::sort(bounds.begin(), bounds.end());
  std::vector<Interval> candidates(pieces);
  for (std::size_t i = 0; i < pieces; ++i) candidates[i] = {bounds[2 * i], bounds[2 * i + 1]};

  // dynamic order: piece j holds the j-th critical image
  std::vector<Interval> ordered(pieces);
  std::vector<char> used(pieces, 0);
  for (std::size_t j = 0; j < pieces; ++j) {
    const double cj = crit[j];
    std::size_t hit = pieces;
    for (std::size_t i = 0; i < pieces; ++i) {
      if (candidates[i].contains(cj, 1e-12 * (1.0 + std::abs(cj)))) {
        hit = i;
        break;
      }
    }
    if (hit == pieces || used[hit])
      throw PieceCountNotPowerOfTwo(
          "critical orbit does not visit the detected pieces cyclically");
    used[hit] = 1;
    ordered[j] = candidates[hit];
  }
  for (std::size_t j = 0; j < pieces; ++j) {
    const Interval img = detail::interval_image(m, ordered[j]);
    const Interval& nxt = ordered[(j + 1) % pieces];
    if (std::abs(img.lo - nxt.lo) > 1e-10 * (1.0 + std::abs(nxt.lo)) ||
        std::abs(img.hi - nxt.hi) > 1e-10 * (1.0 + std::abs(nxt.hi)))
      throw PieceCountNotPowerOfTwo("piece images do not close cyclically");
  }
  for (std::size_t i = 0; i < pieces; ++i) {
    if (!(clusters[i].lo >= candidates[i].lo - 1e-9) ||
        !(clusters[i].hi <= candidates[i].hi + 1e-9))
      throw PieceCountNotPowerOfTwo("sampled orbit leaves the critical-orbit bounds");
  }
  out.k = k;
  out.intervals = std::move(ordered);
  out.critical_orbit = crit;
  return out;
}

/// Full regime classification; resolves the chaotic piece exponent in IIIc.
inline Regime classify_regime(const BestReplyMap& m) {
  Regime r{classify_case(m), 0};
  if (r.tag == RegimeCase::IIIc) r.k = chaotic_intervals(m).k;
  return r;
}

/// The n post-burn-in iterates of the best-reply map from x0.
inline std::vector<double> iterate_f(const BestReplyMap& m, double x0, long n, long burn = 0) {
  if (!(x0 >= 0.0) || !std::isfinite(x0)) throw NegativeInput("x0 must be finite and >= 0");
  if (n < 1 || burn < 0) throw InvalidParameters("need n >= 1 and burn >= 0");
  double x = x0;
  for (long i = 0; i < burn; ++i) x = m(x);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    x = m(x);
    out.push_back(x);
  }
  return out;
}

/// Average of ln|slope| along the post-burn-in orbit. Iterates landing exactly
/// on a kink are skipped (the derivative is undefined there); meeting a flat
/// branch yields -infinity, the one-step-contraction convention.
inline double lyapunov(const BestReplyMap& m, double x0, long n, long burn = 1000) {
  if (!(x0 >= 0.0) || !std::isfinite(x0)) throw NegativeInput("x0 must be finite and >= 0");
  if (n < 1000) throw InvalidParameters("need n >= 1000 for a stable average");
  if (burn < 0) throw InvalidParameters("burn must be >= 0");
  double x = x0;
  for (long i = 0; i < burn; ++i) x = m(x);
  double sum = 0.0;
  long counted = 0;
  for (long i = 0; i < n; ++i) {
    if (x == m.kink_lo() || x == m.kink_hi() || x == m.cutoff()) {
      x = m(x);
      continue;
    }
    const double s = std::abs(m.slope_at(x));
    if (s == 0.0) return -std::numeric_limits<double>::infinity();
    sum += std::log(s);
    ++counted;
    x = m(x);
  }
  return counted > 0 ? sum / static_cast<double>(counted)
                     : -std::numeric_limits<double>::infinity();
}

}  // namespace duopoly
