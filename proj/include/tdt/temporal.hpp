// Cross-frame relations: foreground segmentation, region tracking, temporal
// proximities, temporal connectedness and continuity, persistence intervals.

#ifndef TDT_TEMPORAL_HPP
#define TDT_TEMPORAL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tdt/core.hpp"
#include "tdt/topology.hpp"

namespace tdt {

/// A family {A_t} of regions indexed by frame. `slices` has one entry per
/// frame of the video; an empty slice means the region is absent.
class TrackedRegion {
 public:
  TrackedRegion() = default;
  TrackedRegion(int id, std::vector<Region> slices) : id_(id), slices_(std::move(slices)) {}

  int id() const { return id_; }
  std::size_t frame_count() const { return slices_.size(); }
  const std::vector<Region>& slices() const { return slices_; }

  const Region& slice(std::size_t t) const {
    static const Region none;
    return t < slices_.size() ? slices_[t] : none;
  }
  bool present(std::size_t t) const { return !slice(t).empty(); }

  std::optional<std::size_t> birth() const {
    for (std::size_t t = 0; t < slices_.size(); ++t) {
      if (!slices_[t].empty()) return t;
    }
    return std::nullopt;
  }
  std::optional<std::size_t> death() const {
    for (std::size_t t = slices_.size(); t-- > 0;) {
      if (!slices_[t].empty()) return t;
    }
    return std::nullopt;
  }

  /// Alive in the last frame of the video.
  bool alive_at_end() const { return !slices_.empty() && !slices_.back().empty(); }

  friend bool operator==(const TrackedRegion&, const TrackedRegion&) = default;

 private:
  int id_ = 0;
  std::vector<Region> slices_;
};

struct Lifespan {
  std::size_t birth = 0;
  std::size_t death = 0;

  friend bool operator==(Lifespan, Lifespan) = default;
};

inline Lifespan lifespan(const TrackedRegion& a) {
  auto b = a.birth();
  if (!b) throw Error(ErrorKind::never_present, "track " + std::to_string(a.id()) + " is never present");
  return {*b, *a.death()};
}

// ---------------------------------------------------------------------------
// Segmentation

struct SegmentationMask {
  std::size_t t = 0;
  Region foreground;
  Region background;

  friend bool operator==(const SegmentationMask&, const SegmentationMask&) = default;
};

/// Foreground of frame t: voxels whose x- or y-derivative changes by more
/// than `tol` between frames t and t+1. Voxels in the last column or last
/// row have an undefined derivative and are background.
inline SegmentationMask segment(const Video& v, std::size_t t, int tol = 0) {
  if (tol < 0) throw Error(ErrorKind::invalid_argument, "tolerance must be non-negative");
  if (t >= v.size()) throw Error(ErrorKind::out_of_extent, "frame index " + std::to_string(t));
  if (t + 1 >= v.size()) {
    throw Error(ErrorKind::last_frame, "frame " + std::to_string(t) + " has no successor");
  }
  const Frame& a = v.frame(t);
  const Frame& b = v.frame(t + 1);
  const Extent& ext = v.extent();
  std::vector<std::uint8_t> fg(ext.area(), 0);
  for (int y = 0; y + 1 < ext.height; ++y) {
    for (int x = 0; x + 1 < ext.width; ++x) {
      const Point p{x, y};
      const int ddx = partial_derivative(b, p, Axis::x) - partial_derivative(a, p, Axis::x);
      const int ddy = partial_derivative(b, p, Axis::y) - partial_derivative(a, p, Axis::y);
      if (std::abs(ddx) > tol || std::abs(ddy) > tol) fg[ext.index(p)] = 1;
    }
  }
  std::vector<std::uint8_t> bg(fg.size());
  std::transform(fg.begin(), fg.end(), bg.begin(), [](std::uint8_t m) -> std::uint8_t { return !m; });
  return {t, Region::from_mask(ext, fg), Region::from_mask(ext, bg)};
}

/// Change masks for every frame that has a successor.
inline std::vector<SegmentationMask> change_masks(const Video& v, int tol = 0) {
  std::vector<SegmentationMask> out;
  for (std::size_t t = 0; t + 1 < v.size(); ++t) out.push_back(segment(v, t, tol));
  return out;
}

/// Presence mask: foreground are voxels whose level differs from the
/// ground level by more than `tol`. Defined on every frame, including the last.
inline SegmentationMask presence_mask(const Video& v, std::size_t t, std::uint8_t ground, int tol = 0) {
  const Frame& f = v.frame(t);
  const Extent& ext = v.extent();
  std::vector<std::uint8_t> fg(ext.area());
  std::vector<std::uint8_t> bg(ext.area());
  const auto lv = f.levels();
  for (std::size_t i = 0; i < lv.size(); ++i) {
    fg[i] = std::abs(static_cast<int>(lv[i]) - static_cast<int>(ground)) > tol;
    bg[i] = !fg[i];
  }
  return {t, Region::from_mask(ext, fg), Region::from_mask(ext, bg)};
}

inline std::vector<SegmentationMask> presence_masks(const Video& v, std::uint8_t ground, int tol = 0) {
  std::vector<SegmentationMask> out;
  for (std::size_t t = 0; t < v.size(); ++t) out.push_back(presence_mask(v, t, ground, tol));
  return out;
}

// ---------------------------------------------------------------------------
// Tracking

/// Links foreground components across frames by cell overlap.
///
/// Masks are folded in index order. Candidate (component, live track) pairs
/// with positive overlap are matched greedily by larger overlap, then smaller
/// track id, then component order; each track continues with at most one
/// component. Unmatched components open new ids in component order and
/// unmatched tracks end.
inline std::vector<TrackedRegion> track(const Video& v, std::span<const SegmentationMask> masks,
                                        Connectivity c) {
  struct Live {
    std::size_t track;
    Region last;
  };
  const std::size_t n = v.size();
  std::vector<int> ids;
  std::vector<std::vector<Region>> slices;
  std::vector<Live> live;
  for (const SegmentationMask& m : masks) {
    if (m.t >= n) throw Error(ErrorKind::out_of_extent, "mask index " + std::to_string(m.t));
    std::vector<Region> comps;
    if (!m.foreground.empty()) comps = connected_components(m.foreground, c);

    std::vector<std::tuple<std::size_t, int, std::size_t, std::size_t>> cand;  // overlap, id, comp, live
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      for (std::size_t li = 0; li < live.size(); ++li) {
        const std::size_t ov = intersection(comps[ci], live[li].last).size();
        if (ov > 0) cand.emplace_back(ov, ids[live[li].track], ci, li);
      }
    }
    std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
      if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
      if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
      return std::get<2>(a) < std::get<2>(b);
    });
    std::vector<std::optional<std::size_t>> comp_track(comps.size());
    std::vector<bool> live_used(live.size(), false);
    for (const auto& [ov, id, ci, li] : cand) {
      if (comp_track[ci] || live_used[li]) continue;
      comp_track[ci] = live[li].track;
      live_used[li] = true;
    }
    std::vector<Live> next;
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      std::size_t k;
      if (comp_track[ci]) {
        k = *comp_track[ci];
      } else {
        k = ids.size();
        ids.push_back(static_cast<int>(k));
        slices.emplace_back(n, Region(v.extent()));
      }
      slices[k][m.t] = comps[ci];
      next.push_back({k, comps[ci]});
    }
    live = std::move(next);
  }
  std::vector<TrackedRegion> out;
  for (std::size_t k = 0; k < ids.size(); ++k) out.emplace_back(ids[k], std::move(slices[k]));
  return out;
}

// ---------------------------------------------------------------------------
// Proximities

/// Minimum Chebyshev distance over cell pairs; 0 iff the regions intersect.
inline int gap_distance(const Region& a, const Region& b) {
  detail::require_nonempty(a, "gap_distance: first region is empty");
  detail::require_nonempty(b, "gap_distance: second region is empty");
  int best = std::numeric_limits<int>::max();
  for (const Point& p : a) {
    for (const Point& q : b) {
      best = std::min(best, chebyshev(p, q));
      if (best == 0) return 0;
    }
  }
  return best;
}

struct TemporalWitness {
  bool holds = false;
  std::vector<std::size_t> times;
};

/// Slices intersect at some shared frame; `times` lists every such frame.
inline TemporalWitness temporally_near(const TrackedRegion& a, const TrackedRegion& b) {
  TemporalWitness w;
  const std::size_t n = std::min(a.frame_count(), b.frame_count());
  for (std::size_t t = 0; t < n; ++t) {
    if (a.present(t) && b.present(t) && near_discrete(a.slice(t), b.slice(t))) w.times.push_back(t);
  }
  w.holds = !w.times.empty();
  return w;
}

inline bool temporally_metric_near(const TrackedRegion& a, const TrackedRegion& b, double eps) {
  if (eps < 0.0) throw Error(ErrorKind::invalid_argument, "epsilon must be non-negative");
  const std::size_t n = std::min(a.frame_count(), b.frame_count());
  for (std::size_t t = 0; t < n; ++t) {
    if (a.present(t) && b.present(t) && gap_distance(a.slice(t), b.slice(t)) <= eps) return true;
  }
  return false;
}

inline bool lifespans_overlap(const TrackedRegion& a, const TrackedRegion& b) {
  const Lifespan la = lifespan(a);
  const Lifespan lb = lifespan(b);
  return std::max(la.birth, lb.birth) <= std::min(la.death, lb.death);
}

/// Frames of the common lifespan where both slices are present and
/// adjacent; nullopt when there are none.
inline std::optional<std::vector<std::size_t>> temporally_adjacent(const TrackedRegion& a,
                                                                   const TrackedRegion& b,
                                                                   Connectivity c) {
  auto ba = a.birth();
  auto bb = b.birth();
  if (!ba || !bb) return std::nullopt;
  const std::size_t lo = std::max(*ba, *bb);
  const std::size_t hi = std::min(*a.death(), *b.death());
  std::vector<std::size_t> times;
  for (std::size_t t = lo; t <= hi && lo <= hi; ++t) {
    if (a.present(t) && b.present(t) && subimages_adjacent(a.slice(t), b.slice(t), c)) {
      times.push_back(t);
    }
  }
  if (times.empty()) return std::nullopt;
  return times;
}

namespace detail {

inline bool video_frame_connected_on(const TrackedRegion& e, std::size_t lo, std::size_t hi,
                                     Connectivity c) {
  for (std::size_t t = lo; t <= hi; ++t) {
    if (!e.present(t) || !is_connected(e.slice(t), c)) return false;
    if (t > lo && !subimages_adjacent(e.slice(t - 1), e.slice(t), c)) return false;
  }
  return true;
}

}  // namespace detail

/// Every slice connected and consecutive slices adjacent over the whole video.
inline bool video_frame_connected(const TrackedRegion& e, Connectivity c) {
  for (std::size_t t = 0; t < e.frame_count(); ++t) {
    if (!e.present(t)) {
      throw Error(ErrorKind::not_full_span,
                  "track " + std::to_string(e.id()) + " absent at frame " + std::to_string(t));
    }
  }
  if (e.frame_count() == 0) throw Error(ErrorKind::not_full_span, "track has no frames");
  return detail::video_frame_connected_on(e, 0, e.frame_count() - 1, c);
}

/// The frame t' after which E has disappeared for good, provided E is
/// video-frame connected from its birth through t'.
inline std::optional<std::size_t> temporally_video_frame_connected(const TrackedRegion& e,
                                                                   Connectivity c) {
  auto b = e.birth();
  if (!b) return std::nullopt;
  const std::size_t last = *e.death();
  if (!detail::video_frame_connected_on(e, *b, last, c)) return std::nullopt;
  return last;
}

// ---------------------------------------------------------------------------
// Cross-frame adjacency

struct Voxel {
  Point p;
  std::size_t t = 0;
};

/// Same location in two different frames.
inline bool point_across_adjacent(const Video& v, Voxel a, Voxel b) {
  (void)v.frame(a.t).at(a.p);
  (void)v.frame(b.t).at(b.p);
  return a.p == b.p && a.t != b.t;
}

/// Voxels in two different frames with levels within `tol` of each other.
inline bool voxel_value_adjacent(const Video& v, Voxel a, Voxel b, int tol = 0) {
  const int la = v.frame(a.t).at(a.p).level;
  const int lb = v.frame(b.t).at(b.p).level;
  return a.t != b.t && std::abs(la - lb) <= tol;
}

/// The level multisets of the two frames share at least one level (within `tol`).
inline bool frame_value_adjacent(const Frame& a, const Frame& b, int tol = 0) {
  std::vector<bool> in_a(256, false);
  for (std::uint8_t l : a.levels()) in_a[l] = true;
  for (std::uint8_t l : b.levels()) {
    for (int d = -tol; d <= tol; ++d) {
      const int m = l + d;
      if (m >= 0 && m < 256 && in_a[static_cast<std::size_t>(m)]) return true;
    }
  }
  return false;
}

/// Some v in A (read in frame fa) and w in B (read in frame fb) carry equal
/// levels (within `tol`).
inline bool location_value_adjacent(const Frame& fa, const Region& a, const Frame& fb,
                                    const Region& b, int tol = 0) {
  detail::require_nonempty(a, "location_value_adjacent: first region is empty");
  detail::require_nonempty(b, "location_value_adjacent: second region is empty");
  std::vector<bool> in_a(256, false);
  for (const Point& p : a) in_a[fa.at(p).level] = true;
  for (const Point& q : b) {
    const int l = fb.at(q).level;
    for (int d = -tol; d <= tol; ++d) {
      const int m = l + d;
      if (m >= 0 && m < 256 && in_a[static_cast<std::size_t>(m)]) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Temporal continuity

/// One lattice map per frame index.
using TemporalMap = std::vector<LatticeMap>;

inline TemporalMap broadcast(const LatticeMap& f, std::size_t frames) {
  return TemporalMap(frames, f);
}

inline TrackedRegion image(const TemporalMap& f, const TrackedRegion& a) {
  std::vector<Region> out;
  out.reserve(a.frame_count());
  for (std::size_t t = 0; t < a.frame_count(); ++t) {
    if (t >= f.size()) throw Error(ErrorKind::partial_map, "no map for frame " + std::to_string(t));
    out.push_back(a.present(t) ? f[t].image(a.slice(t)) : Region(f[t].codomain()));
  }
  return TrackedRegion(a.id(), std::move(out));
}

struct TemporalContinuityVerdict {
  bool holds = true;
  /// Ids of a temporally adjacent pair whose images are not.
  std::optional<std::pair<int, int>> witness;
  /// A tnear B implies f(A) tnear f(B), over all pairs.
  bool tnear_preserved = true;
  /// Every track that has disappeared after its death frame has an image
  /// that has also disappeared after that frame.
  bool disappearance_preserved = true;
};

inline TemporalContinuityVerdict check_temporal_continuity(const TemporalMap& f, const Video& x,
                                                           const Video& y,
                                                           std::span<const TrackedRegion> tracks,
                                                           Connectivity c) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::invalid_argument, "videos differ in frame count");
  }
  if (f.size() != x.size()) throw Error(ErrorKind::partial_map, "one map per frame is required");
  for (const LatticeMap& m : f) {
    if (!(m.domain() == x.extent()) || !(m.codomain() == y.extent())) {
      throw Error(ErrorKind::partial_map, "map extents do not match the videos");
    }
    m.require_total();
  }
  std::vector<TrackedRegion> images;
  images.reserve(tracks.size());
  for (const TrackedRegion& a : tracks) images.push_back(image(f, a));

  TemporalContinuityVerdict verdict;
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    if (auto d = tracks[i].death()) {
      for (std::size_t t = *d + 1; t < images[i].frame_count(); ++t) {
        if (images[i].present(t)) verdict.disappearance_preserved = false;
      }
    }
    for (std::size_t j = i + 1; j < tracks.size(); ++j) {
      if (temporally_adjacent(tracks[i], tracks[j], c) &&
          !temporally_adjacent(images[i], images[j], c) && verdict.holds) {
        verdict.holds = false;
        verdict.witness = std::make_pair(tracks[i].id(), tracks[j].id());
      }
      if (temporally_near(tracks[i], tracks[j]).holds &&
          !temporally_near(images[i], images[j]).holds) {
        verdict.tnear_preserved = false;
      }
    }
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Persistence

/// Inclusive level range.
struct LevelBin {
  std::string name;
  std::uint8_t lo = 0;
  std::uint8_t hi = 255;

  bool contains(std::uint8_t l) const { return l >= lo && l <= hi; }
  friend bool operator==(const LevelBin&, const LevelBin&) = default;
};

/// black {0}, gray (0,255), white {255}.
inline std::vector<LevelBin> default_bins() {
  return {{"black", 0, 0}, {"gray", 1, 254}, {"white", 255, 255}};
}

struct PersistenceInterval {
  int track = 0;
  std::string bin;
  std::size_t birth = 0;
  std::size_t death = 0;
  double birth_s = 0.0;
  /// End of the death frame's display period, (death + 1) / fps.
  double death_s = 0.0;

  friend bool operator==(const PersistenceInterval&, const PersistenceInterval&) = default;
};

inline void require_disjoint(std::span<const LevelBin> bins) {
  for (std::size_t i = 0; i < bins.size(); ++i) {
    if (bins[i].lo > bins[i].hi) {
      throw Error(ErrorKind::invalid_argument, "bin " + bins[i].name + " is empty");
    }
    for (std::size_t j = i + 1; j < bins.size(); ++j) {
      if (std::max(bins[i].lo, bins[j].lo) <= std::min(bins[i].hi, bins[j].hi)) {
        throw Error(ErrorKind::overlapping_bins, bins[i].name + " overlaps " + bins[j].name);
      }
    }
  }
}

/// Maximal runs of frames in which every cell of a track's slice has a
/// level inside the bin. Ordered by track, bin, birth.
inline std::vector<PersistenceInterval> persistence_diagram(const Video& v,
                                                            std::span<const TrackedRegion> tracks,
                                                            std::span<const LevelBin> bins) {
  require_disjoint(bins);
  std::vector<PersistenceInterval> out;
  for (const TrackedRegion& a : tracks) {
    for (const LevelBin& bin : bins) {
      bool open = false;
      std::size_t start = 0;
      const std::size_t n = std::min(a.frame_count(), v.size());
      for (std::size_t t = 0; t <= n; ++t) {
        bool inside = false;
        if (t < n && a.present(t)) {
          const Frame& f = v.frame(t);
          inside = std::all_of(a.slice(t).begin(), a.slice(t).end(),
                               [&](Point p) { return bin.contains(f.at(p).level); });
        }
        if (inside && !open) {
          open = true;
          start = t;
        } else if (!inside && open) {
          out.push_back({a.id(), bin.name, start, t - 1, v.seconds(start), v.seconds(t)});
          open = false;
        }
      }
    }
  }
  return out;
}

}  // namespace tdt

#endif  // TDT_TEMPORAL_HPP
