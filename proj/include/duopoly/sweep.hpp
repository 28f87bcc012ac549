#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "duopoly/dynamics1d.hpp"
#include "duopoly/dynamics2d.hpp"

namespace duopoly {

enum class SweepParam { b_hi, b_lo, g_hi, g_lo };

inline const char* to_string(SweepParam p) noexcept {
  switch (p) {
    case SweepParam::b_hi: return "b_hi";
    case SweepParam::b_lo: return "b_lo";
    case SweepParam::g_hi: return "g_hi";
    case SweepParam::g_lo: return "g_lo";
  }
  return "?";
}

inline std::optional<SweepParam> parse_sweep_param(const std::string& name) {
  if (name == "b_hi") return SweepParam::b_hi;
  if (name == "b_lo") return SweepParam::b_lo;
  if (name == "g_hi") return SweepParam::g_hi;
  if (name == "g_lo") return SweepParam::g_lo;
  return std::nullopt;
}

inline UncertaintySet with_param(const UncertaintySet& base, SweepParam p, double v) {
  switch (p) {
    case SweepParam::b_hi: return {v, base.b_lo(), base.g_hi(), base.g_lo(), base.a()};
    case SweepParam::b_lo: return {base.b_hi(), v, base.g_hi(), base.g_lo(), base.a()};
    case SweepParam::g_hi: return {base.b_hi(), base.b_lo(), v, base.g_lo(), base.a()};
    case SweepParam::g_lo: return {base.b_hi(), base.b_lo(), base.g_hi(), v, base.a()};
  }
  return base;
}

/// Long-run samples per sweep value. Values whose parameter set violates the
/// ordering chain (or degenerates the map) are kept in the axis but marked
/// invalid with an empty column.
struct BifurcationData {
  SweepParam param = SweepParam::b_lo;
  std::vector<double> values;
  std::vector<char> valid;
  std::vector<std::vector<double>> samples;
};

/// Sweeps one parameter and records post-burn-in iterates per value. By
/// default each column starts from the previous column's final state (orbit
/// continuation); continuation forces sequential column order.
inline BifurcationData bifurcation_1d(const UncertaintySet& base, SweepParam param, double lo,
                                      double hi, int steps, double x0, long burn = 10000,
                                      int samples = 100, bool continuation = true) {
  if (steps < 1 || !(hi >= lo) || samples < 1 || burn < 0)
    throw InvalidParameters("need steps >= 1, hi >= lo, samples >= 1, burn >= 0");
  if (!(x0 >= 0.0)) throw NegativeInput("x0 must be >= 0");
  BifurcationData out;
  out.param = param;
  double x = x0;
  std::size_t usable = 0;
  for (int i = 0; i < steps; ++i) {
    const double v = steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
    out.values.push_back(v);
    try {
      const UncertaintySet u = with_param(base, param, v);
      const BestReplyMap m(u);
      if (!continuation) x = x0;
      for (long t = 0; t < burn; ++t) x = m(x);
      std::vector<double> col(static_cast<std::size_t>(samples));
      for (double& s : col) {
        x = m(x);
        s = x;
      }
      out.samples.push_back(std::move(col));
      out.valid.push_back(1);
      ++usable;
    } catch (const Error& e) {
      switch (e.code()) {
        case Errc::ordering_violation:
        case Errc::singleton_set:
        case Errc::degenerate_map:
        case Errc::non_positive_choke: break;  // this value has no admissible map
        default: throw;
      }
      out.samples.emplace_back();
      out.valid.push_back(0);
    }
  }
  if (usable == 0) throw EmptySweep("no sweep value admits a valid uncertainty set");
  return out;
}

/// Distinct values in v up to tol, counted after sorting.
inline int count_distinct(std::vector<double> v, double tol) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  int n = 1;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] - v[i - 1] > tol) ++n;
  return n;
}

enum class RegimeCell : int {
  out_of_domain = -1,
  stable_left = 0,   // case I
  border_line = 1,   // case II
  stable_right = 2,  // case IIIa
  flip_line = 3,     // case IIIb
  chaotic = 4,       // cases IIIc and IIId
};

inline const char* to_string(RegimeCell c) noexcept {
  switch (c) {
    case RegimeCell::out_of_domain: return "out-of-domain";
    case RegimeCell::stable_left: return "I";
    case RegimeCell::border_line: return "II";
    case RegimeCell::stable_right: return "IIIa";
    case RegimeCell::flip_line: return "IIIb";
    case RegimeCell::chaotic: return "chaotic";
  }
  return "?";
}

/// Analytic regime classification over the (g_hi, b_hi) plane at fixed b_lo,
/// g_lo. The two bifurcation curves bounding the chaotic strip are emitted as
/// polylines in (g_hi, b_hi) coordinates.
struct RegimeGrid {
  double b_lo = 0.0;
  double g_lo = 0.0;
  Interval g_hi_range;
  Interval b_hi_range;
  int nx = 0;
  int ny = 0;
  std::vector<RegimeCell> cells;        // row-major, cells[iy * nx + ix]; iy indexes b_hi
  std::vector<Point2> unit_slope_curve;  // mid_slope == 1: b_hi = b_lo + g_hi - g_lo
  std::vector<Point2> flip_curve;        // g_hi == 2 b_lo
};

inline RegimeGrid regime_map(double b_lo, double g_lo, Interval g_hi_range, Interval b_hi_range,
                             int nx, int ny) {
  if (nx < 1 || ny < 1 || !(g_hi_range.width() >= 0.0) || !(b_hi_range.width() >= 0.0))
    throw InvalidParameters("regime map needs positive grid dimensions");
  RegimeGrid out;
  out.b_lo = b_lo;
  out.g_lo = g_lo;
  out.g_hi_range = g_hi_range;
  out.b_hi_range = b_hi_range;
  out.nx = nx;
  out.ny = ny;
  out.cells.assign(static_cast<std::size_t>(nx) * ny, RegimeCell::out_of_domain);
  for (int iy = 0; iy < ny; ++iy) {
    const double b_hi = cell_center(b_hi_range, iy, ny);
    for (int ix = 0; ix < nx; ++ix) {
      const double g_hi = cell_center(g_hi_range, ix, nx);
      RegimeCell cell = RegimeCell::out_of_domain;
      try {
        const BestReplyMap m(UncertaintySet(b_hi, b_lo, g_hi, g_lo));
        switch (classify_case(m)) {
          case RegimeCase::I: cell = RegimeCell::stable_left; break;
          case RegimeCase::II: cell = RegimeCell::border_line; break;
          case RegimeCase::IIIa: cell = RegimeCell::stable_right; break;
          case RegimeCase::IIIb: cell = RegimeCell::flip_line; break;
          case RegimeCase::IIIc:
          case RegimeCase::IIId: cell = RegimeCell::chaotic; break;
        }
      } catch (const Error&) {
        // outside the admissible ordering chain, or a degenerate set
      }
      out.cells[static_cast<std::size_t>(iy) * nx + ix] = cell;
    }
  }
  const int curve_samples = std::max(nx, 2);
  for (int i = 0; i < curve_samples; ++i) {
    const double g =
        g_hi_range.lo + g_hi_range.width() * static_cast<double>(i) / (curve_samples - 1);
    out.unit_slope_curve.push_back({g, b_lo + (g - g_lo)});
  }
  const double flip_g = 2.0 * b_lo;
  if (g_hi_range.contains(flip_g)) {
    out.flip_curve.push_back({flip_g, b_hi_range.lo});
    out.flip_curve.push_back({flip_g, b_hi_range.hi});
  }
  return out;
}

}  // namespace duopoly
