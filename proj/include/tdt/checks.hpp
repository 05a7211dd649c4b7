// Property-check harness: executes the library's invariants on seeded
// random instances and reports one verdict per invariant.

#ifndef TDT_CHECKS_HPP
#define TDT_CHECKS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tdt/core.hpp"
#include "tdt/generators.hpp"
#include "tdt/report.hpp"
#include "tdt/temporal.hpp"
#include "tdt/topology.hpp"

namespace tdt::checks {

enum class Suite { core, topology, temporal, all };

inline Suite parse_suite(const std::string& s) {
  if (s == "core") return Suite::core;
  if (s == "topology") return Suite::topology;
  if (s == "temporal") return Suite::temporal;
  if (s == "all") return Suite::all;
  throw Error(ErrorKind::invalid_argument, "unknown suite '" + s + "'");
}

struct CheckOptions {
  int max_size = 32;
  /// Fault injection: the boundary-corner predicate is replaced by
  /// four-adjacency inside the adjacency checks.
  bool mutant_four_for_boundary = false;
};

struct Context {
  gen::Rng rng;
  int size;
  const CheckOptions& options;

  Extent grid() const { return {size, size}; }

  bool boundary_adjacent(Point p, Point q) const {
    if (options.mutant_four_for_boundary) return adjacent(p, q, Connectivity::four);
    return voxels_adjacent(p, q, VoxelScheme::boundary);
  }
};

namespace detail {

struct Outcome {
  std::size_t cases = 0;
  std::optional<std::string> counterexample;

  // Records a failure once; later failures keep the first witness.
  void fail(const std::string& what) {
    if (!counterexample) counterexample = what;
  }
};

inline std::string pair_str(Point p, Point q) { return "p=" + to_string(p) + " q=" + to_string(q); }

inline std::string region_str(const Region& r) {
  std::string s = "{";
  for (const Point& p : r) s += to_string(p);
  return s + "}";
}

// ---------------------------------------------------------------- core

inline Outcome adjacency_symmetric(Context& ctx) {
  Outcome o;
  const Extent g = ctx.grid();
  for (std::size_t i = 0; i < g.area(); ++i) {
    for (std::size_t j = 0; j < g.area(); ++j) {
      const Point p = g.at(i);
      const Point q = g.at(j);
      for (VoxelScheme s : {VoxelScheme::column, VoxelScheme::row, VoxelScheme::diagonal, VoxelScheme::boundary}) {
        ++o.cases;
        if (voxels_adjacent(p, q, s) != voxels_adjacent(q, p, s)) o.fail(pair_str(p, q));
      }
    }
  }
  return o;
}

inline Outcome boundary_iff_chebyshev_one(Context& ctx) {
  Outcome o;
  const Extent g = ctx.grid();
  for (std::size_t i = 0; i < g.area(); ++i) {
    for (std::size_t j = 0; j < g.area(); ++j) {
      if (i == j) continue;
      const Point p = g.at(i);
      const Point q = g.at(j);
      ++o.cases;
      const bool b = ctx.boundary_adjacent(p, q);
      if (b != (chebyshev(p, q) == 1)) {
        o.fail(pair_str(p, q) + " boundary=" + (b ? "true" : "false") +
               " chebyshev=" + std::to_string(chebyshev(p, q)));
      }
    }
  }
  return o;
}

inline Outcome diagonal_implies_boundary(Context& ctx) {
  Outcome o;
  const Extent g = ctx.grid();
  for (std::size_t i = 0; i < g.area(); ++i) {
    for (std::size_t j = 0; j < g.area(); ++j) {
      const Point p = g.at(i);
      const Point q = g.at(j);
      ++o.cases;
      if (voxels_adjacent(p, q, VoxelScheme::diagonal) && !ctx.boundary_adjacent(p, q)) o.fail(pair_str(p, q));
    }
  }
  return o;
}

inline Outcome corner_intersection_sizes(Context& ctx) {
  Outcome o;
  const Extent g = ctx.grid();
  for (std::size_t i = 0; i < g.area(); ++i) {
    for (std::size_t j = 0; j < g.area(); ++j) {
      if (i == j) continue;
      const Point p = g.at(i);
      const Point q = g.at(j);
      std::size_t expected = 0;
      if (voxels_adjacent(p, q, VoxelScheme::row) || voxels_adjacent(p, q, VoxelScheme::column)) expected = 2;
      if (voxels_adjacent(p, q, VoxelScheme::diagonal)) expected = 1;
      ++o.cases;
      if (shared_corner_count(p, q) != expected) o.fail(pair_str(p, q));
    }
  }
  return o;
}

inline Outcome boundary_corners_are_odd(Context& ctx) {
  Outcome o;
  for (int k = 0; k < 100; ++k) {
    const Point p{gen::uniform(ctx.rng, -1000, 1000), gen::uniform(ctx.rng, -1000, 1000)};
    auto c = boundary_corners(p);
    std::set<HalfPoint> distinct(c.begin(), c.end());
    ++o.cases;
    const bool odd = std::all_of(c.begin(), c.end(), [](HalfPoint h) { return h.is_corner(); });
    if (distinct.size() != 4 || !odd) o.fail("p=" + to_string(p));
  }
  return o;
}

inline Outcome derivative_zero_iff_constant(Context& ctx) {
  Outcome o;
  const Extent g = ctx.grid();
  for (int k = 0; k < 50; ++k) {
    const Frame f = gen::coin(ctx.rng) ? Frame(g.width, g.height, static_cast<std::uint8_t>(gen::uniform(ctx.rng, 0, 255)))
                                       : gen::random_frame(ctx.rng, g, gen::uniform(ctx.rng, 1, 3));
    bool all_zero = true;
    for (int y = 0; y < g.height; ++y) {
      for (int x = 0; x < g.width; ++x) {
        if (x + 1 < g.width && partial_derivative(f, {x, y}, Axis::x) != 0) all_zero = false;
        if (y + 1 < g.height && partial_derivative(f, {x, y}, Axis::y) != 0) all_zero = false;
      }
    }
    const auto lv = f.levels();
    const bool constant = std::all_of(lv.begin(), lv.end(), [&](std::uint8_t l) { return l == lv[0]; });
    ++o.cases;
    if (all_zero != constant) o.fail("frame " + std::to_string(k));
  }
  return o;
}

// ------------------------------------------------------------ topology

inline Outcome near_implies_adjacent(Context& ctx) {
  Outcome o;
  const Extent g = ctx.grid();
  for (int k = 0; k < 200; ++k) {
    const Region a = gen::random_region(ctx.rng, g, 0.1);
    const Region b = gen::random_region(ctx.rng, g, 0.1);
    for (Connectivity c : {Connectivity::four, Connectivity::eight}) {
      ++o.cases;
      if (near_discrete(a, b) && !subimages_adjacent(a, b, c)) o.fail(region_str(a) + " " + region_str(b));
    }
  }
  return o;
}

inline Outcome components_partition(Context& ctx) {
  Outcome o;
  const Extent g = ctx.grid();
  for (int k = 0; k < 100; ++k) {
    const Region r = gen::random_region(ctx.rng, g, 0.45);
    for (Connectivity c : {Connectivity::four, Connectivity::eight}) {
      ++o.cases;
      const auto comps = connected_components(r, c);
      Region all(g);
      std::size_t total = 0;
      bool ok = comps == connected_components(r, c);
      for (std::size_t i = 0; i < comps.size(); ++i) {
        total += comps[i].size();
        all = set_union(all, comps[i]);
        if (connected_components(comps[i], c).size() != 1) ok = false;
        if (i > 0 && !(comps[i - 1].min_cell() < comps[i].min_cell())) ok = false;
        for (std::size_t j = i + 1; j < comps.size(); ++j) {
          if (subimages_adjacent(comps[i], comps[j], c)) ok = false;
        }
      }
      if (total != r.size() || !(all == r)) ok = false;
      if (!ok) o.fail(std::string("scheme ") + to_string(c) + " region " + region_str(r));
    }
  }
  return o;
}

inline Outcome continuity_preserves_connectedness(Context& ctx) {
  Outcome o;
  const Extent dom = ctx.grid();
  const Extent cod{ctx.size, ctx.size};
  for (int k = 0; k < 20; ++k) {
    const Connectivity c = k % 2 == 0 ? Connectivity::four : Connectivity::eight;
    const LatticeMap f = gen::random_continuous_map(ctx.rng, dom, cod, c);
    ++o.cases;
    if (!check_kappa_continuity(f, c).holds) {
      o.fail("generated map is not continuous, map " + std::to_string(k));
      continue;
    }
    for (int r = 0; r < 20; ++r) {
      const Region region = gen::random_connected_region(ctx.rng, dom, dom.area() / 2, c);
      ++o.cases;
      if (!is_connected(f.image(region), c)) {
        o.fail("map " + std::to_string(k) + " region " + region_str(region));
      }
    }
  }
  return o;
}

inline Outcome continuity_detects_dilation(Context& ctx) {
  Outcome o;
  const Extent dom{std::max(2, ctx.size / 2), ctx.size};
  const Extent cod{2 * dom.width, dom.height};
  const LatticeMap f = LatticeMap::tabulate(dom, cod, [](Point p) { return Point{2 * p.x, p.y}; });
  for (Connectivity c : {Connectivity::four, Connectivity::eight}) {
    ++o.cases;
    const auto v = check_kappa_continuity(f, c);
    if (v.holds || !v.witness) {
      o.fail("dilation accepted");
      continue;
    }
    const Point p = v.witness->first.min_cell();
    const Point q = v.witness->second.min_cell();
    if (!(p == Point{0, 0}) || !(q == Point{1, 0})) o.fail("unexpected witness " + pair_str(p, q));
  }
  return o;
}

inline Outcome jordan_rings(Context& ctx) {
  Outcome o;
  const Extent g = ctx.grid();
  for (int k = 0; k < 40; ++k) {
    const gen::Ring ring = k % 2 == 0 ? gen::random_rectangle_ring(ctx.rng, g) : gen::random_blob_ring(ctx.rng, g);
    ++o.cases;
    const JordanPartition part = jordan_partition(ring.cycle, g);
    const Region curve(g, ring.cycle.vertices);
    bool ok = part.interior == ring.interior;
    ok = ok && intersection(part.interior, part.exterior).empty();
    ok = ok && intersection(part.interior, curve).empty() && intersection(part.exterior, curve).empty();
    ok = ok && part.interior.size() + part.exterior.size() + curve.size() == g.area();
    if (!ok) o.fail("ring " + region_str(curve));
  }
  return o;
}

inline Outcome cat_cover_properties(Context& ctx) {
  Outcome o;
  const Extent g = ctx.grid();
  for (int k = 0; k < 60; ++k) {
    const Frame f = gen::random_frame(ctx.rng, g, 2);
    const Region e = gen::random_connected_region(ctx.rng, g, 12, Connectivity::eight);
    for (Connectivity c : {Connectivity::four, Connectivity::eight}) {
      ++o.cases;
      const CatCover cover = cat_number(e, f, c);
      Region all(g);
      std::size_t total = 0;
      bool ok = cover.count == cover.cover.size();
      for (std::size_t i = 0; i < cover.cover.size(); ++i) {
        const Region& m = cover.cover[i];
        total += m.size();
        all = set_union(all, m);
        const std::uint8_t l = f.level(m.min_cell());
        ok = ok && std::all_of(m.begin(), m.end(), [&](Point p) { return f.level(p) == l; });
        ok = ok && is_connected(m, c);
        for (std::size_t j = i + 1; j < cover.cover.size(); ++j) {
          const Region& n = cover.cover[j];
          if (f.level(n.min_cell()) == l && subimages_adjacent(m, n, c)) ok = false;
        }
      }
      ok = ok && total == e.size() && all == e;
      if (!ok) o.fail("region " + region_str(e));
    }
  }
  return o;
}

// ------------------------------------------------------------ temporal

inline Outcome segment_partition(Context& ctx) {
  Outcome o;
  const Extent g = ctx.grid();
  for (int k = 0; k < 30; ++k) {
    const Video v = gen::random_video(ctx.rng, g, 2, gen::uniform(ctx.rng, 1, 3));
    const int tol = gen::uniform(ctx.rng, 0, 1) * 64;
    ++o.cases;
    const SegmentationMask m = segment(v, 0, tol);
    bool ok = intersection(m.foreground, m.background).empty();
    ok = ok && set_union(m.foreground, m.background) == full_region(g);
    bool fields_agree = true;
    for (int y = 0; y + 1 < g.height; ++y) {
      for (int x = 0; x + 1 < g.width; ++x) {
        for (Axis a : {Axis::x, Axis::y}) {
          const int d = partial_derivative(v.frame(1), {x, y}, a) - partial_derivative(v.frame(0), {x, y}, a);
          if (std::abs(d) > tol) fields_agree = false;
        }
      }
    }
    ok = ok && (m.foreground.empty() == fields_agree);
    const SegmentationMask loose = segment(v, 0, tol + 64);
    ok = ok && difference(loose.foreground, m.foreground).empty();
    if (!ok) o.fail("video " + std::to_string(k) + " tol " + std::to_string(tol));
  }
  return o;
}

inline Outcome proximity_implications(Context& ctx) {
  Outcome o;
  const Extent g = ctx.grid();
  for (int k = 0; k < 150; ++k) {
    const TrackedRegion a = gen::random_track(ctx.rng, g, 6, 0);
    const TrackedRegion b = gen::random_track(ctx.rng, g, 6, 1);
    ++o.cases;
    const bool tn = temporally_near(a, b).holds;
    bool ok = true;
    for (double eps : {0.0, 1.0, 2.0}) {
      if (tn && !temporally_metric_near(a, b, eps)) ok = false;
    }
    if (temporally_metric_near(a, b, 0.0) != tn) ok = false;
    if (tn && !lifespans_overlap(a, b)) ok = false;
    if (tn && !temporally_adjacent(a, b, Connectivity::four)) ok = false;
    for (std::size_t t = 0; t < 6; ++t) {
      if (a.present(t) && b.present(t) && near_discrete(a.slice(t), b.slice(t)) &&
          !subimages_adjacent(a.slice(t), b.slice(t), Connectivity::four)) {
        ok = false;
      }
    }
    if (!ok) o.fail("scene " + std::to_string(k));
  }
  return o;
}

inline Outcome same_time_metric_proximal(Context& ctx) {
  Outcome o;
  const Extent g = ctx.grid();
  for (int k = 0; k < 100; ++k) {
    const std::size_t frames = 4;
    const auto t = static_cast<std::size_t>(gen::uniform(ctx.rng, 0, static_cast<int>(frames) - 1));
    std::vector<Region> sa(frames, Region(g));
    std::vector<Region> sb(frames, Region(g));
    sa[t] = gen::random_region(ctx.rng, g, 0.05);
    sb[t] = gen::random_region(ctx.rng, g, 0.05);
    const TrackedRegion a(0, sa);
    const TrackedRegion b(1, sb);
    ++o.cases;
    const int gap = gap_distance(sa[t], sb[t]);
    if (!temporally_metric_near(a, b, gap) || (gap > 0 && temporally_metric_near(a, b, gap - 1))) {
      o.fail("scene " + std::to_string(k));
    }
  }
  return o;
}

inline Outcome persistence_intervals(Context& ctx) {
  Outcome o;
  const Extent g = ctx.grid();
  const auto bins = default_bins();
  for (int k = 0; k < 40; ++k) {
    const std::size_t frames = 8;
    // Each frame is constant so slices are frequently single-binned.
    std::vector<std::vector<std::uint8_t>> planes;
    for (std::size_t t = 0; t < frames; ++t) {
      const Frame f = gen::coin(ctx.rng, 0.7)
                          ? Frame(g.width, g.height, static_cast<std::uint8_t>(gen::uniform(ctx.rng, 0, 2) * 127 + (gen::coin(ctx.rng) ? 1 : 0)))
                          : gen::random_frame(ctx.rng, g, 3);
      planes.emplace_back(f.levels().begin(), f.levels().end());
    }
    const Video v(g.width, g.height, planes);
    const std::vector<TrackedRegion> tracks{gen::random_track(ctx.rng, g, frames, 0),
                                            gen::random_track(ctx.rng, g, frames, 1)};
    const auto intervals = persistence_diagram(v, tracks, bins);
    ++o.cases;
    bool ok = true;
    for (const TrackedRegion& tr : tracks) {
      std::vector<int> owner(frames, -1);
      for (std::size_t b = 0; b < bins.size(); ++b) {
        std::vector<bool> covered(frames, false);
        for (const auto& iv : intervals) {
          if (iv.track != tr.id() || iv.bin != bins[b].name) continue;
          for (std::size_t t = iv.birth; t <= iv.death; ++t) {
            if (covered[t] || owner[t] != -1) ok = false;
            covered[t] = true;
            owner[t] = static_cast<int>(b);
          }
        }
        for (std::size_t t = 0; t < frames; ++t) {
          const bool pred = tr.present(t) && std::all_of(tr.slice(t).begin(), tr.slice(t).end(), [&](Point p) {
                              return bins[b].contains(v.frame(t).level(p));
                            });
          if (pred != covered[t]) ok = false;
        }
      }
      // maximal runs: consecutive intervals of one bin never touch
      for (std::size_t i = 0; i + 1 < intervals.size(); ++i) {
        const auto& x = intervals[i];
        const auto& y = intervals[i + 1];
        if (x.track == y.track && x.bin == y.bin && x.death + 1 >= y.birth) ok = false;
      }
    }
    if (!ok) o.fail("scene " + std::to_string(k));
  }
  return o;
}

inline Outcome temporal_continuity_maps(Context& ctx) {
  Outcome o;
  const Extent g = ctx.grid();
  const std::size_t frames = 5;
  std::vector<std::vector<std::uint8_t>> planes(frames, std::vector<std::uint8_t>(g.area(), 0));
  const Video x(g.width, g.height, planes);
  const Extent shifted{g.width + 2, g.height + 1};
  const Video y(shifted.width, shifted.height,
                std::vector<std::vector<std::uint8_t>>(frames, std::vector<std::uint8_t>(shifted.area(), 0)));
  const auto id = broadcast(LatticeMap::identity(g), frames);
  const auto shift = broadcast(LatticeMap::tabulate(g, shifted, [](Point p) { return Point{p.x + 2, p.y + 1}; }), frames);
  for (int k = 0; k < 40; ++k) {
    std::vector<TrackedRegion> tracks;
    for (int i = 0; i < 3; ++i) tracks.push_back(gen::random_track(ctx.rng, g, frames, i));
    for (Connectivity c : {Connectivity::four, Connectivity::eight}) {
      ++o.cases;
      const auto vi = check_temporal_continuity(id, x, x, tracks, c);
      const auto vs = check_temporal_continuity(shift, x, y, tracks, c);
      for (const auto& v : {vi, vs}) {
        if (!v.holds || !v.tnear_preserved || !v.disappearance_preserved) o.fail("scene " + std::to_string(k));
      }
    }
  }
  return o;
}

inline Outcome tracking_consistent(Context& ctx) {
  Outcome o;
  const Extent g = ctx.grid();
  for (int k = 0; k < 20; ++k) {
    const Video v = gen::random_video(ctx.rng, g, 5, 2);
    const auto masks = presence_masks(v, 0);
    ++o.cases;
    const auto a = track(v, masks, Connectivity::eight);
    const auto b = track(v, masks, Connectivity::eight);
    bool ok = a == b;
    for (std::size_t i = 0; i < a.size(); ++i) {
      ok = ok && a[i].id() == static_cast<int>(i);
      const Lifespan l = lifespan(a[i]);
      for (std::size_t t = 0; t < v.size(); ++t) {
        const bool inside = t >= l.birth && t <= l.death;
        if (a[i].present(t) != inside) ok = false;
        if (a[i].present(t) && !is_connected(a[i].slice(t), Connectivity::eight)) ok = false;
      }
    }
    if (!ok) o.fail("video " + std::to_string(k));
  }
  return o;
}

struct Entry {
  Suite suite;
  const char* name;
  Outcome (*run)(Context&);
};

inline const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {Suite::core, "adjacency_symmetric", adjacency_symmetric},
      {Suite::core, "boundary_iff_chebyshev_one", boundary_iff_chebyshev_one},
      {Suite::core, "diagonal_implies_boundary", diagonal_implies_boundary},
      {Suite::core, "corner_intersection_sizes", corner_intersection_sizes},
      {Suite::core, "boundary_corners_are_odd", boundary_corners_are_odd},
      {Suite::core, "derivative_zero_iff_constant", derivative_zero_iff_constant},
      {Suite::topology, "near_implies_adjacent", near_implies_adjacent},
      {Suite::topology, "components_partition", components_partition},
      {Suite::topology, "continuity_preserves_connectedness", continuity_preserves_connectedness},
      {Suite::topology, "continuity_detects_dilation", continuity_detects_dilation},
      {Suite::topology, "jordan_rings", jordan_rings},
      {Suite::topology, "cat_cover_properties", cat_cover_properties},
      {Suite::temporal, "segment_partition", segment_partition},
      {Suite::temporal, "proximity_implications", proximity_implications},
      {Suite::temporal, "same_time_metric_proximal", same_time_metric_proximal},
      {Suite::temporal, "persistence_intervals", persistence_intervals},
      {Suite::temporal, "temporal_continuity_maps", temporal_continuity_maps},
      {Suite::temporal, "tracking_consistent", tracking_consistent},
  };
  return entries;
}

inline const char* suite_name(Suite s) {
  switch (s) {
    case Suite::core: return "core";
    case Suite::topology: return "topology";
    case Suite::temporal: return "temporal";
    case Suite::all: return "all";
  }
  return "all";
}

}  // namespace detail

/// Runs every check of `suite` on `size` x `size` grids. Each check draws
/// from its own generator seeded from (seed, check index), so a check's
/// instances do not depend on which other checks run.
inline ReportDocument run_checks(Suite suite, int size, std::uint64_t seed, const CheckOptions& options = {}) {
  if (size < 4 || size > options.max_size) {
    throw Error(ErrorKind::invalid_argument,
                "size must lie in [4, " + std::to_string(options.max_size) + "]");
  }
  ReportDocument doc;
  doc.input_digest = std::string("suite=") + detail::suite_name(suite) + ";size=" + std::to_string(size) +
                     ";seed=" + std::to_string(seed) + (options.mutant_four_for_boundary ? ";mutant=four-for-boundary" : "");
  doc.extent = {size, size};
  const auto& reg = detail::registry();
  for (std::size_t i = 0; i < reg.size(); ++i) {
    const auto& e = reg[i];
    if (suite != Suite::all && e.suite != suite) continue;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    Context ctx{gen::Rng(seq), size, options};
    const detail::Outcome out = e.run(ctx);
    doc.checks.push_back({detail::suite_name(e.suite), e.name, !out.counterexample, out.cases, out.counterexample});
  }
  return doc;
}

}  // namespace tdt::checks

#endif  // TDT_CHECKS_HPP
