// Set-level adjacency, connectedness, continuity, digital Jordan partition
// and value-constant covers within a single frame.

#ifndef TDT_TOPOLOGY_HPP
#define TDT_TOPOLOGY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tdt/core.hpp"

namespace tdt {

/// four = column or row adjacency; eight = four or diagonal adjacency.
enum class Connectivity { four, eight };

inline const char* to_string(Connectivity c) { return c == Connectivity::four ? "4" : "8"; }

inline bool adjacent(Point p, Point q, Connectivity c) {
  if (c == Connectivity::four) {
    return voxels_adjacent(p, q, VoxelScheme::column) || voxels_adjacent(p, q, VoxelScheme::row);
  }
  return voxels_adjacent(p, q, VoxelScheme::boundary);
}

/// Neighbor offsets, row-major.
inline std::span<const Point> neighbor_offsets(Connectivity c) {
  static constexpr Point four[] = {{0, -1}, {-1, 0}, {1, 0}, {0, 1}};
  static constexpr Point eight[] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                                    {1, 0},   {-1, 1}, {0, 1},  {1, 1}};
  if (c == Connectivity::four) return four;
  return eight;
}

namespace detail {

inline void require_nonempty(const Region& r, const char* what) {
  if (r.empty()) throw Error(ErrorKind::empty_subimage, what);
}

}  // namespace detail

/// Discrete proximity: A and B share at least one point.
inline bool near_discrete(const Region& a, const Region& b) {
  detail::require_nonempty(a, "near_discrete: first region is empty");
  detail::require_nonempty(b, "near_discrete: second region is empty");
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) return true;
    if (*ia < *ib) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return false;
}

/// Some p in A and q in B are equal or adjacent.
inline bool subimages_adjacent(const Region& a, const Region& b, Connectivity c) {
  detail::require_nonempty(a, "subimages_adjacent: first region is empty");
  detail::require_nonempty(b, "subimages_adjacent: second region is empty");
  const Region& small = a.size() <= b.size() ? a : b;
  const Region& large = a.size() <= b.size() ? b : a;
  for (const Point& p : small) {
    if (large.contains(p)) return true;
    for (const Point& d : neighbor_offsets(c)) {
      if (large.contains({p.x + d.x, p.y + d.y})) return true;
    }
  }
  return false;
}

/// Partition into maximal connected components, ordered by minimal cell
/// (row-major). Each component's cells are sorted.
inline std::vector<Region> connected_components(const Region& r, Connectivity c) {
  detail::require_nonempty(r, "connected_components: region is empty");
  const Extent& ext = r.extent();
  // 0 = not in region, 1 = unvisited member, 2 = visited
  std::vector<std::uint8_t> state = r.mask();
  std::vector<Region> out;
  std::vector<Point> stack;
  for (const Point& seed : r) {
    if (state[ext.index(seed)] != 1) continue;
    std::vector<Point> cells;
    state[ext.index(seed)] = 2;
    stack.push_back(seed);
    while (!stack.empty()) {
      const Point p = stack.back();
      stack.pop_back();
      cells.push_back(p);
      for (const Point& d : neighbor_offsets(c)) {
        const Point q{p.x + d.x, p.y + d.y};
        if (!ext.contains(q)) continue;
        auto& s = state[ext.index(q)];
        if (s == 1) {
          s = 2;
          stack.push_back(q);
        }
      }
    }
    out.emplace_back(ext, std::move(cells));
  }
  return out;
}

inline bool is_connected(const Region& r, Connectivity c) {
  return connected_components(r, c).size() == 1;
}

/// Map between the lattices of two extents, stored as a lookup table.
/// Entries may be undefined; operations that need a total map reject those.
class LatticeMap {
 public:
  LatticeMap(Extent domain, Extent codomain)
      : domain_(domain), codomain_(codomain), table_(domain.area()) {}

  /// Tabulates `fn(Point) -> Point` (or `std::optional<Point>`) over the domain.
  template <typename Fn>
  static LatticeMap tabulate(Extent domain, Extent codomain, Fn&& fn) {
    LatticeMap m(domain, codomain);
    for (std::size_t i = 0; i < domain.area(); ++i) {
      m.table_[i] = std::optional<Point>(fn(domain.at(i)));
    }
    return m;
  }

  static LatticeMap identity(Extent e) {
    return tabulate(e, e, [](Point p) { return p; });
  }

  void set(Point p, std::optional<Point> image) {
    if (!domain_.contains(p)) throw Error(ErrorKind::out_of_extent, "map domain " + to_string(p));
    table_[domain_.index(p)] = image;
  }

  const Extent& domain() const { return domain_; }
  const Extent& codomain() const { return codomain_; }

  std::optional<Point> lookup(Point p) const {
    if (!domain_.contains(p)) return std::nullopt;
    return table_[domain_.index(p)];
  }

  Point operator()(Point p) const {
    auto q = lookup(p);
    if (!q || !codomain_.contains(*q)) {
      throw Error(ErrorKind::partial_map, "map undefined at " + to_string(p));
    }
    return *q;
  }

  /// Throws PartialMap unless every domain point maps into the codomain.
  void require_total() const {
    for (std::size_t i = 0; i < table_.size(); ++i) {
      if (!table_[i] || !codomain_.contains(*table_[i])) {
        throw Error(ErrorKind::partial_map, "map undefined at " + to_string(domain_.at(i)));
      }
    }
  }

  Region image(const Region& r) const {
    std::vector<Point> cells;
    cells.reserve(r.size());
    for (const Point& p : r) cells.push_back((*this)(p));
    return Region(codomain_, std::move(cells));
  }

 private:
  Extent domain_;
  Extent codomain_;
  std::vector<std::optional<Point>> table_;
};

struct ContinuityVerdict {
  bool holds = true;
  std::optional<std::pair<Region, Region>> witness;
};

/// Pixel-level continuity check: every adjacent pair (p, q) of the domain
/// must map to equal or adjacent images. The first violating pair in
/// row-major order is returned as singleton-region witness.
inline ContinuityVerdict check_kappa_continuity(const LatticeMap& f, Connectivity c) {
  f.require_total();
  const Extent& dom = f.domain();
  for (std::size_t i = 0; i < dom.area(); ++i) {
    const Point p = dom.at(i);
    const Point fp = f(p);
    for (const Point& d : neighbor_offsets(c)) {
      const Point q{p.x + d.x, p.y + d.y};
      if (!dom.contains(q) || q < p) continue;
      const Point fq = f(q);
      if (fp == fq || adjacent(fp, fq, c)) continue;
      return {false, std::make_pair(Region(dom, {p}), Region(dom, {q}))};
    }
  }
  return {true, std::nullopt};
}

/// Cyclically ordered vertex list; vertex i is joined to vertex i+1 and the
/// last vertex to the first.
struct OneCycle {
  std::vector<Point> vertices;
};

/// Cycles are traced with eight-adjacency.
inline void validate_cycle(const OneCycle& cycle, Extent extent) {
  const auto& v = cycle.vertices;
  if (v.size() < 3) throw Error(ErrorKind::not_a_cycle, "a cycle needs at least three vertices");
  std::vector<Point> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    throw Error(ErrorKind::not_a_cycle, "repeated vertex " + to_string(*dup));
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!extent.contains(v[i])) throw Error(ErrorKind::out_of_extent, "cycle vertex " + to_string(v[i]));
    const Point& next = v[(i + 1) % v.size()];
    if (!adjacent(v[i], next, Connectivity::eight)) {
      throw Error(ErrorKind::not_a_cycle,
                  "vertices " + to_string(v[i]) + " and " + to_string(next) + " are not adjacent");
    }
  }
}

struct JordanPartition {
  Region interior;
  Region exterior;
};

/// Splits the complement of an eight-connected cycle into four-connected
/// classes. Components touching the extent border form the exterior, the
/// rest form the interior.
inline JordanPartition jordan_partition(const OneCycle& cycle, Extent extent) {
  validate_cycle(cycle, extent);
  const Region curve(extent, cycle.vertices);
  const Region complement = difference(full_region(extent), curve);
  std::vector<Point> interior;
  std::vector<Point> exterior;
  if (!complement.empty()) {
    for (const Region& comp : connected_components(complement, Connectivity::four)) {
      const bool bounded = std::none_of(comp.begin(), comp.end(),
                                        [&](Point p) { return extent.on_border(p); });
      auto& dst = bounded ? interior : exterior;
      dst.insert(dst.end(), comp.begin(), comp.end());
    }
  }
  if (interior.empty()) throw Error(ErrorKind::degenerate_cycle, "cycle encloses no cell");
  return {Region(extent, std::move(interior)), Region(extent, std::move(exterior))};
}

/// Rectangular ring with top-left corner `origin`, traced clockwise.
inline OneCycle rectangle_cycle(Point origin, int width, int height) {
  OneCycle c;
  for (int x = 0; x < width; ++x) c.vertices.push_back({origin.x + x, origin.y});
  for (int y = 1; y < height; ++y) c.vertices.push_back({origin.x + width - 1, origin.y + y});
  for (int x = width - 2; x >= 0; --x) c.vertices.push_back({origin.x + x, origin.y + height - 1});
  for (int y = height - 2; y >= 1; --y) c.vertices.push_back({origin.x, origin.y + y});
  return c;
}

struct CatCover {
  std::size_t count = 0;
  std::vector<Region> cover;
};

/// Minimal cover of E by connected value-constant subregions: the connected
/// components of each level class, ordered by minimal cell.
inline CatCover cat_number(const Region& e, const Frame& f, Connectivity c) {
  detail::require_nonempty(e, "cat_number: region is empty");
  if (!(e.extent() == f.extent())) {
    throw Error(ErrorKind::out_of_extent, "cat_number: region and frame extents differ");
  }
  std::map<std::uint8_t, std::vector<Point>> by_level;
  for (const Point& p : e) by_level[f.level(p)].push_back(p);
  CatCover out;
  for (auto& [level, cells] : by_level) {
    for (Region& comp : connected_components(Region(e.extent(), std::move(cells)), c)) {
      out.cover.push_back(std::move(comp));
    }
  }
  std::sort(out.cover.begin(), out.cover.end(),
            [](const Region& a, const Region& b) { return a.min_cell() < b.min_cell(); });
  out.count = out.cover.size();
  return out;
}

}  // namespace tdt

#endif  // TDT_TOPOLOGY_HPP
