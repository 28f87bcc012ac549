#pragma once

#include <thread>
#include <utility>
#include <vector>

#include "duopoly/dynamics2d.hpp"

namespace duopoly {

struct GridSpec {
  Interval x_range{0.0, 1.0};
  Interval y_range{0.0, 1.0};
  int nx = 100;
  int ny = 100;
  long burn = 2000;
  int tail = 500;
  double tol = 1e-6;
  int threads = 1;
};

/// Window covering the whole nontrivial part of the map, kinks and zero
/// branch included.
inline GridSpec default_grid(const BestReplyMap& m, int n = 400) {
  GridSpec g;
  g.x_range = g.y_range = {0.0, 1.05 * m.cutoff()};
  g.nx = g.ny = n;
  return g;
}

inline double cell_center(Interval range, int i, int n) {
  return range.lo + (static_cast<double>(i) + 0.5) * range.width() / static_cast<double>(n);
}

/// Basin labels over a grid of initial conditions. labels is row-major with
/// labels[iy * nx + ix]; kUnresolved marks cells whose tail settles nowhere
/// in the catalog.
struct BasinGrid {
  GridSpec spec;
  std::vector<Attractor> catalog;
  std::vector<int> labels;
};

/// Classifies the orbit from every cell center. Cells are independent and are
/// assembled row-major, so the result does not depend on the thread count.
inline BasinGrid compute_basins(const BestReplyMap& m, const GridSpec& spec) {
  if (spec.nx < 1 || spec.ny < 1 || spec.burn < 0 || spec.tail < 1 || spec.threads < 1 ||
      !(spec.x_range.width() >= 0.0) || !(spec.y_range.width() >= 0.0))
    throw InvalidParameters("grid spec needs positive dimensions and burn >= 0");
  BasinGrid g;
  g.spec = spec;
  g.catalog = attractor_catalog(m);
  g.labels.assign(static_cast<std::size_t>(spec.nx) * spec.ny, kUnresolved);

  auto run_rows = [&m, &spec, &g](int y_begin, int y_end) {
    Orbit2D tail;
    tail.reserve(static_cast<std::size_t>(spec.tail));
    for (int iy = y_begin; iy < y_end; ++iy) {
      const double cy = cell_center(spec.y_range, iy, spec.ny);
      for (int ix = 0; ix < spec.nx; ++ix) {
        Point2 p{cell_center(spec.x_range, ix, spec.nx), cy};
        for (long t = 0; t < spec.burn; ++t) p = step_T(m, p);
        tail.clear();
        for (int t = 0; t < spec.tail; ++t) {
          p = step_T(m, p);
          tail.push_back(p);
        }
        g.labels[static_cast<std::size_t>(iy) * spec.nx + ix] =
            classify_orbit(tail, g.catalog, spec.tol);
      }
    }
  };

  const int workers = std::min(spec.threads, spec.ny);
  if (workers <= 1) {
    run_rows(0, spec.ny);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const int chunk = (spec.ny + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int y0 = w * chunk;
      const int y1 = std::min(spec.ny, y0 + chunk);
      if (y0 < y1) pool.emplace_back(run_rows, y0, y1);
    }
    for (std::thread& t : pool) t.join();
  }
  return g;
}

struct SymmetryReport {
  std::size_t pairs = 0;
  std::size_t consistent = 0;
  double fraction = 1.0;
  std::vector<std::pair<int, int>> violations;  // (ix, iy) with ix < iy, capped
};

/// Checks that mirrored cells carry mirrored labels: swapping the initial
/// condition across the diagonal must land the orbit in the mirror attractor.
inline SymmetryReport check_symmetry(const BasinGrid& g) {
  const GridSpec& s = g.spec;
  if (s.nx != s.ny || s.x_range.lo != s.y_range.lo || s.x_range.hi != s.y_range.hi)
    throw NotSquareGrid("symmetry check needs a square grid over a square window");
  const std::vector<int> mirror = mirror_pairing(g.catalog);
  SymmetryReport rep;
  for (int iy = 0; iy < s.ny; ++iy) {
    for (int ix = 0; ix < iy; ++ix) {
      const int a = g.labels[static_cast<std::size_t>(iy) * s.nx + ix];
      const int b = g.labels[static_cast<std::size_t>(ix) * s.nx + iy];
      const int want = a == kUnresolved ? kUnresolved : mirror[static_cast<std::size_t>(a)];
      ++rep.pairs;
      if (b == want)
        ++rep.consistent;
      else if (rep.violations.size() < 64)
        rep.violations.emplace_back(ix, iy);
    }
  }
  rep.fraction =
      rep.pairs == 0 ? 1.0 : static_cast<double>(rep.consistent) / static_cast<double>(rep.pairs);
  return rep;
}

}  // namespace duopoly
