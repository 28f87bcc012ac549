#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "duopoly/dynamics1d.hpp"
#include "duopoly/model.hpp"

namespace duopoly {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// One step of the simultaneous adjustment process: each firm best-replies to
/// the competitor's current output.
inline Point2 step_T(const BestReplyMap& m, Point2 p) { return {m(p.y), m(p.x)}; }

using Orbit2D = std::vector<Point2>;

/// The n post-burn-in iterates of the 2D map from p0. The second iterate has
/// separated variables, so even-index x coordinates reproduce iterates of the
/// squared 1D map bit for bit.
inline Orbit2D iterate_T(const BestReplyMap& m, Point2 p0, long n, long burn = 0) {
  if (!(p0.x >= 0.0) || !(p0.y >= 0.0) || !std::isfinite(p0.x) || !std::isfinite(p0.y))
    throw NegativeInput("initial condition must be finite and >= 0");
  if (n < 1 || burn < 0) throw InvalidParameters("need n >= 1 and burn >= 0");
  Point2 p = p0;
  for (long i = 0; i < burn; ++i) p = step_T(m, p);
  Orbit2D out;
  out.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    p = step_T(m, p);
    out.push_back(p);
  }
  return out;
}

enum class NodeKind { stable_node, saddle, unstable_node, marginal };

inline const char* to_string(NodeKind k) noexcept {
  switch (k) {
    case NodeKind::stable_node: return "stable-node";
    case NodeKind::saddle: return "saddle";
    case NodeKind::unstable_node: return "unstable-node";
    case NodeKind::marginal: return "marginal";
  }
  return "?";
}

/// Stability of a planar cycle from its generator eigenvalues. Singly
/// generated cycles pass the same value twice and are always nodes.
inline NodeKind cycle_stability_2d(double zeta1, double zeta2, double tol = kBoundaryTol) {
  const double m1 = std::abs(zeta1);
  const double m2 = std::abs(zeta2);
  if (std::abs(m1 - 1.0) <= tol || std::abs(m2 - 1.0) <= tol) return NodeKind::marginal;
  if (m1 < 1.0 && m2 < 1.0) return NodeKind::stable_node;
  if (m1 > 1.0 && m2 > 1.0) return NodeKind::unstable_node;
  return NodeKind::saddle;
}

enum class CycleOrigin { diagonal, singly, doubly };

inline const char* to_string(CycleOrigin o) noexcept {
  switch (o) {
    case CycleOrigin::diagonal: return "diagonal";
    case CycleOrigin::singly: return "singly";
    case CycleOrigin::doubly: return "doubly";
  }
  return "?";
}

/// Periodic orbit of the 2D map, built from one 1D cycle (diagonal and singly
/// generated) or from an unordered pair of distinct 1D cycles (doubly
/// generated). source_a/source_b index the generating cycles in the input
/// list passed to lift_cycles.
struct Cycle2D {
  int period = 1;
  std::vector<Point2> points;  // the 2D map sends points[i] to points[(i+1) % period]
  CycleOrigin origin = CycleOrigin::diagonal;
  int source_a = -1;
  int source_b = -1;
  double zeta1 = 0.0;
  double zeta2 = 0.0;
  NodeKind stability = NodeKind::stable_node;
};

namespace detail {

inline void check_first_period(const std::vector<Cycle>& cycles) {
  std::vector<double> all;
  for (const Cycle& c : cycles) {
    if (c.continuum) throw NotACycle("continuum segments cannot be lifted");
    if (c.period < 1 || c.points.size() != static_cast<std::size_t>(c.period))
      throw NotACycle("cycle period and point count disagree");
    for (double p : c.points) {
      if (!std::isfinite(p)) throw NotACycle("cycle points must be finite");
      all.push_back(p);
    }
  }
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (std::abs(all[i] - all[j]) <= 1e-9 * (1.0 + std::abs(all[i])))
        throw NotACycle("periodic points repeat; inputs are not disjoint first-period cycles");
}

}  // namespace detail

/// Lifts 1D cycles to the cycles of the 2D map they generate.
///
/// On the product of one cycle with itself the map acts on index pairs as
/// (i, j) -> (j+1, i+1) mod n; on the mixed products of two cycles it swaps
/// the two factors while advancing both indices. Partitioning those exact
/// integer dynamics into orbits yields every generated cycle with its first
/// period; per the stability rule, singly generated cycles inherit the
/// generator eigenvalue twice and doubly generated ones carry one eigenvalue
/// from each generator.
inline std::vector<Cycle2D> lift_cycles(const std::vector<Cycle>& fcycles) {
  detail::check_first_period(fcycles);
  std::vector<Cycle2D> out;
  for (std::size_t s = 0; s < fcycles.size(); ++s) {
    const Cycle& X = fcycles[s];
    const int n = X.period;
    std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
    for (int start = 0; start < n * n; ++start) {
      if (seen[start]) continue;
      int i = start / n;
      int j = start % n;
      bool diagonal = false;
      std::vector<Point2> pts;
      while (!seen[i * n + j]) {
        seen[i * n + j] = 1;
        diagonal = diagonal || (i == j);
        pts.push_back({X.points[i], X.points[j]});
        const int ni = (j + 1) % n;
        const int nj = (i + 1) % n;
        i = ni;
        j = nj;
      }
      Cycle2D c;
      c.period = static_cast<int>(pts.size());
      c.points = std::move(pts);
      c.origin = diagonal ? CycleOrigin::diagonal : CycleOrigin::singly;
      c.source_a = c.source_b = static_cast<int>(s);
      c.zeta1 = c.zeta2 = X.eigenvalue;
      c.stability = cycle_stability_2d(c.zeta1, c.zeta2);
      out.push_back(std::move(c));
    }
  }
  for (std::size_t sa = 0; sa < fcycles.size(); ++sa) {
    for (std::size_t sb = sa + 1; sb < fcycles.size(); ++sb) {
      const Cycle& X = fcycles[sa];
      const Cycle& Y = fcycles[sb];
      const int n = X.period;
      const int mm = Y.period;
      // state (sw, i, j): the point (X[i], Y[j]) when sw == 0, (Y[j], X[i])
      // when sw == 1; one step toggles sw and advances both indices
      std::vector<char> seen(static_cast<std::size_t>(2) * n * mm, 0);
      for (int start = 0; start < 2 * n * mm; ++start) {
        if (seen[start]) continue;
        int sw = start / (n * mm);
        int i = (start % (n * mm)) / mm;
        int j = start % mm;
        std::vector<Point2> pts;
        while (!seen[sw * n * mm + i * mm + j]) {
          seen[sw * n * mm + i * mm + j] = 1;
          pts.push_back(sw == 0 ? Point2{X.points[i], Y.points[j]}
                                : Point2{Y.points[j], X.points[i]});
          sw = 1 - sw;
          i = (i + 1) % n;
          j = (j + 1) % mm;
        }
        Cycle2D c;
        c.period = static_cast<int>(pts.size());
        c.points = std::move(pts);
        c.origin = CycleOrigin::doubly;
        c.source_a = static_cast<int>(sa);
        c.source_b = static_cast<int>(sb);
        c.zeta1 = X.eigenvalue;
        c.zeta2 = Y.eigenvalue;
        c.stability = cycle_stability_2d(c.zeta1, c.zeta2);
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

/// Lift with closure checks against the actual map: the 1D inputs must be
/// genuine cycles of m and every lifted cycle must return to its start under
/// explicit iteration.
inline std::vector<Cycle2D> lift_cycles(const BestReplyMap& m, const std::vector<Cycle>& fcycles) {
  for (const Cycle& c : fcycles) {
    if (c.continuum) throw NotACycle("continuum segments cannot be lifted");
    for (int i = 0; i < c.period; ++i) {
      const double nxt = m(c.points[static_cast<std::size_t>(i)]);
      const double want = c.points[static_cast<std::size_t>((i + 1) % c.period)];
      if (std::abs(nxt - want) > 1e-9 * (1.0 + std::abs(want)))
        throw NotACycle("input points are not closed under the map");
    }
  }
  std::vector<Cycle2D> lifted = lift_cycles(fcycles);
  for (const Cycle2D& c : lifted) {
    Point2 p = c.points.front();
    for (int t = 0; t < c.period; ++t) p = step_T(m, p);
    const Point2 q = c.points.front();
    if (std::abs(p.x - q.x) > 1e-12 * (1.0 + std::abs(q.x)) ||
        std::abs(p.y - q.y) > 1e-12 * (1.0 + std::abs(q.y)))
      throw NotACycle("lifted cycle does not close under explicit iteration");
  }
  return lifted;
}

/// Cartesian product of two chaotic intervals, with their 1-based indices.
struct RectProduct {
  int i = 1;
  int j = 1;
  Interval x;
  Interval y;
};

/// An invariant set of the 2D map: an equilibrium point, a union of
/// interval-product rectangles permuted cyclically, or a rectangle continuum
/// of periodic points (stable but not attracting).
struct Attractor {
  enum class Kind { point, chaotic_rectangles, invariant_continuum };
  std::string id;
  Kind kind = Kind::point;
  Point2 point;
  std::vector<RectProduct> rects;
  bool on_diagonal = true;
  bool attracting = true;

  bool contains(Point2 p, double tol) const noexcept {
    if (kind == Kind::point)
      return std::abs(p.x - point.x) <= tol && std::abs(p.y - point.y) <= tol;
    for (const RectProduct& r : rects)
      if (r.x.contains(p.x, tol) && r.y.contains(p.y, tol)) return true;
    return false;
  }
};

inline const char* to_string(Attractor::Kind k) noexcept {
  switch (k) {
    case Attractor::Kind::point: return "point";
    case Attractor::Kind::chaotic_rectangles: return "chaotic-rectangles";
    case Attractor::Kind::invariant_continuum: return "invariant-continuum";
  }
  return "?";
}

/// Catalog of the invariant sets of the 2D map, by regime.
///
/// Globally stable regimes yield the single equilibrium point. The two
/// boundary regimes yield the rectangle continua of periodic points, flagged
/// as non-attracting. Chaotic regimes yield the rectangle products of the 1D
/// intervals grouped by the index dynamics (i, j) -> (j+1, i+1) mod 2^k: the
/// orbit through the diagonal pairs is the attractor crossing the diagonal,
/// and each off-diagonal index orbit is one external attractor. External ids
/// name the lexicographically smallest product in the group.
inline std::vector<Attractor> attractor_catalog(const BestReplyMap& m) {
  std::vector<Attractor> out;
  const RegimeCase tag = classify_case(m);
  switch (tag) {
    case RegimeCase::I:
    case RegimeCase::IIIa: {
      const FixedPointReport fp = fixed_points(m);
      Attractor a;
      a.id = "equilibrium";
      a.kind = Attractor::Kind::point;
      a.point = {fp.point, fp.point};
      out.push_back(std::move(a));
      break;
    }
    case RegimeCase::II: {
      Attractor a;
      a.id = "fixed-point-square";
      a.kind = Attractor::Kind::invariant_continuum;
      a.attracting = false;
      const Interval side{m.kink_lo(), m.kink_hi()};
      a.rects = {{1, 1, side, side}};
      out.push_back(std::move(a));
      break;
    }
    case RegimeCase::IIIb: {
      Attractor a;
      a.id = "two-cycle-square";
      a.kind = Attractor::Kind::invariant_continuum;
      a.attracting = false;
      const Interval side{m.kink_hi(), m(m.kink_hi())};
      a.rects = {{1, 1, side, side}};
      out.push_back(std::move(a));
      break;
    }
    case RegimeCase::IIIc:
    case RegimeCase::IIId: {
      const ChaoticIntervals ci = chaotic_intervals(m);
      const int n = static_cast<int>(ci.intervals.size());
      std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
      for (int start = 0; start < n * n; ++start) {
        if (seen[start]) continue;
        int i = start / n;
        int j = start % n;
        Attractor a;
        a.kind = Attractor::Kind::chaotic_rectangles;
        a.on_diagonal = false;
        int best_i = i, best_j = j;
        while (!seen[i * n + j]) {
          seen[i * n + j] = 1;
          a.on_diagonal = a.on_diagonal || (i == j);
          a.rects.push_back({i + 1, j + 1, ci.intervals[static_cast<std::size_t>(i)],
                             ci.intervals[static_cast<std::size_t>(j)]});
          if (i < best_i || (i == best_i && j < best_j)) {
            best_i = i;
            best_j = j;
          }
          const int ni = (j + 1) % n;
          const int nj = (i + 1) % n;
          i = ni;
          j = nj;
        }
        a.id = a.on_diagonal ? "diagonal"
                             : "rect-" + std::to_string(best_i + 1) + "x" +
                                   std::to_string(best_j + 1);
        out.push_back(std::move(a));
      }
      break;
    }
  }
  if (out.empty()) throw NotClassified("no invariant-set catalog for this map");
  return out;
}

inline constexpr int kUnresolved = -1;

/// Index of the unique catalog entry containing at least 99% of the orbit
/// tail within tol-inflated bounds; kUnresolved when none or several qualify.
inline int classify_orbit(const Orbit2D& tail, const std::vector<Attractor>& catalog,
                          double tol = 1e-6) {
  if (tail.empty()) return kUnresolved;
  int found = kUnresolved;
  const std::size_t need =
      static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(tail.size())));
  for (std::size_t a = 0; a < catalog.size(); ++a) {
    std::size_t inside = 0;
    for (const Point2& p : tail) inside += catalog[a].contains(p, tol) ? 1u : 0u;
    if (inside >= need) {
      if (found != kUnresolved) return kUnresolved;  // ambiguous
      found = static_cast<int>(a);
    }
  }
  return found;
}

/// For each catalog entry, the index of its mirror image under coordinate
/// swap. Diagonal-crossing sets are their own mirror.
inline std::vector<int> mirror_pairing(const std::vector<Attractor>& catalog) {
  auto mirrors = [](const Attractor& a, const Attractor& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Attractor::Kind::point)
      return a.point.x == b.point.y && a.point.y == b.point.x;
    if (a.rects.size() != b.rects.size()) return false;
    for (const RectProduct& r : a.rects) {
      bool hit = false;
      for (const RectProduct& s : b.rects)
        hit = hit || (s.i == r.j && s.j == r.i);
      if (!hit) return false;
    }
    return true;
  };
  std::vector<int> out(catalog.size(), -1);
  for (std::size_t a = 0; a < catalog.size(); ++a) {
    for (std::size_t b = 0; b < catalog.size(); ++b) {
      if (mirrors(catalog[a], catalog[b])) {
        out[a] = static_cast<int>(b);
        break;
      }
    }
    if (out[a] < 0) throw NotClassified("catalog entry has no mirror image");
  }
  return out;
}

}  // namespace duopoly
