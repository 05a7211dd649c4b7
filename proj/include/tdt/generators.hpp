// Seeded random instance generators for property checks.

#ifndef TDT_GENERATORS_HPP
#define TDT_GENERATORS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "tdt/core.hpp"
#include "tdt/topology.hpp"
#include "tdt/temporal.hpp"

namespace tdt::gen {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline Point random_point(Rng& rng, Extent e) {
  return {uniform(rng, 0, e.width - 1), uniform(rng, 0, e.height - 1)};
}

/// Nonempty region; each cell kept with probability `density`.
inline Region random_region(Rng& rng, Extent e, double density = 0.3) {
  std::vector<Point> cells;
  for (std::size_t i = 0; i < e.area(); ++i) {
    if (coin(rng, density)) cells.push_back(e.at(i));
  }
  if (cells.empty()) cells.push_back(random_point(rng, e));
  return Region(e, std::move(cells));
}

/// Connected region grown from a random seed by repeatedly adding a random
/// neighbor of a random member.
inline Region random_connected_region(Rng& rng, Extent e, std::size_t max_cells, Connectivity c) {
  const std::size_t target =
      static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(std::min(max_cells, e.area()))));
  std::vector<Point> cells{random_point(rng, e)};
  std::vector<std::uint8_t> in(e.area(), 0);
  in[e.index(cells[0])] = 1;
  const auto offsets = neighbor_offsets(c);
  std::size_t attempts = 0;
  while (cells.size() < target && attempts < 64 * target) {
    ++attempts;
    const Point p = cells[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(cells.size()) - 1))];
    const Point d = offsets[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(offsets.size()) - 1))];
    const Point q{p.x + d.x, p.y + d.y};
    if (!e.contains(q) || in[e.index(q)]) continue;
    in[e.index(q)] = 1;
    cells.push_back(q);
  }
  return Region(e, std::move(cells));
}

/// Frame whose levels are drawn from a small palette, so equal-valued
/// patches are common.
inline Frame random_frame(Rng& rng, Extent e, int palette = 3, std::size_t t = 0, double fps = 1.0) {
  static constexpr std::uint8_t kPalette[] = {0, 255, 128, 64, 200, 32, 96, 160};
  palette = std::clamp(palette, 1, 8);
  std::vector<std::uint8_t> lv(e.area());
  for (auto& l : lv) l = kPalette[uniform(rng, 0, palette - 1)];
  return Frame(e.width, e.height, std::move(lv), TimeStamp{t, static_cast<double>(t) / fps});
}

namespace detail {

// Sequence of length n with unit-or-zero steps, clamped into [0, hi].
inline std::vector<int> lipschitz_walk(Rng& rng, std::size_t n, int hi) {
  std::vector<int> v(n);
  v[0] = uniform(rng, 0, hi);
  for (std::size_t i = 1; i < n; ++i) v[i] = std::clamp(v[i - 1] + uniform(rng, -1, 1), 0, hi);
  return v;
}

// Field on the domain whose values differ by at most one between
// eight-neighbors, clamped into [0, hi].
inline std::vector<int> lipschitz_field(Rng& rng, Extent dom, int hi) {
  std::vector<int> g(dom.area());
  for (int y = 0; y < dom.height; ++y) {
    for (int x = 0; x < dom.width; ++x) {
      int lo_bound = 0;
      int hi_bound = hi;
      for (Point d : {Point{-1, 0}, Point{-1, -1}, Point{0, -1}, Point{1, -1}}) {
        const Point q{x + d.x, y + d.y};
        if (!dom.contains(q)) continue;
        const int v = g[dom.index(q)];
        lo_bound = std::max(lo_bound, v - 1);
        hi_bound = std::min(hi_bound, v + 1);
      }
      g[dom.index({x, y})] = uniform(rng, lo_bound, hi_bound);
    }
  }
  return g;
}

}  // namespace detail

/// Random continuous map for the given connectivity.
///
/// four: (x, y) -> (a(x), b(y)) with a, b unit-step walks, so four-neighbors
/// move along one axis by at most one. eight: both coordinates are
/// eight-Lipschitz fields, so eight-neighbors land within Chebyshev distance one.
inline LatticeMap random_continuous_map(Rng& rng, Extent dom, Extent cod, Connectivity c) {
  LatticeMap m(dom, cod);
  if (c == Connectivity::four) {
    const auto a = detail::lipschitz_walk(rng, static_cast<std::size_t>(dom.width), cod.width - 1);
    const auto b = detail::lipschitz_walk(rng, static_cast<std::size_t>(dom.height), cod.height - 1);
    for (std::size_t i = 0; i < dom.area(); ++i) {
      const Point p = dom.at(i);
      m.set(p, Point{a[static_cast<std::size_t>(p.x)], b[static_cast<std::size_t>(p.y)]});
    }
  } else {
    const auto gx = detail::lipschitz_field(rng, dom, cod.width - 1);
    const auto gy = detail::lipschitz_field(rng, dom, cod.height - 1);
    for (std::size_t i = 0; i < dom.area(); ++i) m.set(dom.at(i), Point{gx[i], gy[i]});
  }
  return m;
}

struct Ring {
  OneCycle cycle;
  Region interior;  // cells enclosed by construction
};

/// Rectangular ring of outer size w x h at `origin`; interior (w-2)(h-2).
inline Ring rectangle_ring(Extent e, Point origin, int w, int h) {
  std::vector<Point> inside;
  for (int y = 1; y + 1 < h; ++y) {
    for (int x = 1; x + 1 < w; ++x) inside.push_back({origin.x + x, origin.y + y});
  }
  return {rectangle_cycle(origin, w, h), Region(e, std::move(inside))};
}

inline Ring random_rectangle_ring(Rng& rng, Extent e) {
  const int w = uniform(rng, 3, e.width);
  const int h = uniform(rng, 3, e.height);
  const Point o{uniform(rng, 0, e.width - w), uniform(rng, 0, e.height - h)};
  return rectangle_ring(e, o, w, h);
}

/// Ring around a random orthogonally convex blob: the blob is a run of
/// column intervals whose tops and bottoms are unimodal, the ring is every
/// outside cell four-adjacent to it. Returns nullopt for draws whose ring is
/// not a chord-free eight-cycle; callers retry.
inline std::optional<Ring> try_random_blob_ring(Rng& rng, Extent e) {
  if (e.width < 3 || e.height < 3) return std::nullopt;
  const int a = uniform(rng, 1, e.width - 2);
  const int b = uniform(rng, a, e.width - 2);
  const int n = b - a + 1;
  const int peak_hi = uniform(rng, 0, n - 1);
  const int peak_lo = uniform(rng, 0, n - 1);
  std::vector<int> hi(static_cast<std::size_t>(n));
  std::vector<int> lo(static_cast<std::size_t>(n));
  hi[static_cast<std::size_t>(peak_hi)] = uniform(rng, 1, e.height - 2);
  lo[static_cast<std::size_t>(peak_lo)] = uniform(rng, 1, e.height - 2);
  for (int i = peak_hi - 1; i >= 0; --i) {
    hi[static_cast<std::size_t>(i)] = std::max(1, hi[static_cast<std::size_t>(i + 1)] - uniform(rng, 0, 2));
  }
  for (int i = peak_hi + 1; i < n; ++i) {
    hi[static_cast<std::size_t>(i)] = std::max(1, hi[static_cast<std::size_t>(i - 1)] - uniform(rng, 0, 2));
  }
  for (int i = peak_lo - 1; i >= 0; --i) {
    lo[static_cast<std::size_t>(i)] = std::min(e.height - 2, lo[static_cast<std::size_t>(i + 1)] + uniform(rng, 0, 2));
  }
  for (int i = peak_lo + 1; i < n; ++i) {
    lo[static_cast<std::size_t>(i)] = std::min(e.height - 2, lo[static_cast<std::size_t>(i - 1)] + uniform(rng, 0, 2));
  }
  std::vector<Point> blob;
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (lo[k] > hi[k]) return std::nullopt;
    if (i > 0 && (std::max(lo[k], lo[k - 1]) > std::min(hi[k], hi[k - 1]))) return std::nullopt;
    for (int y = lo[k]; y <= hi[k]; ++y) blob.push_back({a + i, y});
  }
  Region inside(e, std::move(blob));

  std::vector<Point> ring_cells;
  for (std::size_t i = 0; i < e.area(); ++i) {
    const Point p = e.at(i);
    if (inside.contains(p)) continue;
    for (const Point& d : neighbor_offsets(Connectivity::four)) {
      if (inside.contains({p.x + d.x, p.y + d.y})) {
        ring_cells.push_back(p);
        break;
      }
    }
  }
  const Region ring(e, ring_cells);
  if (ring.size() < 4) return std::nullopt;

  OneCycle cycle;
  std::vector<std::uint8_t> seen(e.area(), 0);
  Point cur = ring.min_cell();
  cycle.vertices.push_back(cur);
  seen[e.index(cur)] = 1;
  while (cycle.vertices.size() < ring.size()) {
    std::vector<Point> next;
    for (const Point& d : neighbor_offsets(Connectivity::eight)) {
      const Point q{cur.x + d.x, cur.y + d.y};
      if (ring.contains(q) && !seen[e.index(q)]) next.push_back(q);
    }
    const std::size_t allowed = cycle.vertices.size() == 1 ? 2 : 1;
    if (next.size() != allowed) return std::nullopt;
    cur = next.front();
    seen[e.index(cur)] = 1;
    cycle.vertices.push_back(cur);
  }
  if (!adjacent(cycle.vertices.back(), cycle.vertices.front(), Connectivity::eight)) return std::nullopt;
  return Ring{std::move(cycle), std::move(inside)};
}

/// Falls back to a rectangular ring if no blob is accepted within the
/// attempt budget.
inline Ring random_blob_ring(Rng& rng, Extent e, int attempts = 1000) {
  for (int i = 0; i < attempts; ++i) {
    if (auto r = try_random_blob_ring(rng, e)) return *r;
  }
  return random_rectangle_ring(rng, e);
}

/// Rectangle drifting with a constant velocity, present on a random
/// sub-interval of frames and clipped to the extent.
inline TrackedRegion random_track(Rng& rng, Extent e, std::size_t frames, int id, int max_side = 4) {
  const int w = uniform(rng, 1, std::min(max_side, e.width));
  const int h = uniform(rng, 1, std::min(max_side, e.height));
  const int x0 = uniform(rng, 0, e.width - 1);
  const int y0 = uniform(rng, 0, e.height - 1);
  const int vx = uniform(rng, -2, 2);
  const int vy = uniform(rng, -2, 2);
  const int last = static_cast<int>(frames) - 1;
  const int birth = uniform(rng, 0, last);
  const int death = uniform(rng, birth, last);
  std::vector<Region> slices(frames, Region(e));
  for (int t = birth; t <= death; ++t) {
    std::vector<Point> cells;
    const int ox = x0 + vx * (t - birth);
    const int oy = y0 + vy * (t - birth);
    for (int y = oy; y < oy + h; ++y) {
      for (int x = ox; x < ox + w; ++x) {
        if (e.contains({x, y})) cells.push_back({x, y});
      }
    }
    if (cells.empty()) cells.push_back({std::clamp(ox, 0, e.width - 1), std::clamp(oy, 0, e.height - 1)});
    slices[static_cast<std::size_t>(t)] = Region(e, std::move(cells));
  }
  return TrackedRegion(id, std::move(slices));
}

/// Piecewise-constant video: each frame is a random palette frame.
inline Video random_video(Rng& rng, Extent e, std::size_t frames, int palette = 3) {
  std::vector<std::vector<std::uint8_t>> planes;
  for (std::size_t t = 0; t < frames; ++t) {
    const Frame f = random_frame(rng, e, palette);
    planes.emplace_back(f.levels().begin(), f.levels().end());
  }
  return Video(e.width, e.height, std::move(planes));
}

}  // namespace tdt::gen

#endif  // TDT_GENERATORS_HPP
