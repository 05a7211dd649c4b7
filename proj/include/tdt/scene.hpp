// Synthetic scenes with ground truth.

#ifndef TDT_SCENE_HPP
#define TDT_SCENE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tdt/core.hpp"
#include "tdt/temporal.hpp"

namespace tdt::scene {

enum class ShapeKind { rectangle, triangle };

/// A shape with a fixed bounding box size and level; `positions[t]` is the
/// top-left corner of the bounding box at frame t, or nullopt when absent.
struct ShapeTrack {
  ShapeKind kind = ShapeKind::rectangle;
  std::uint8_t level = 255;
  int width = 1;
  int height = 1;
  std::vector<std::optional<Point>> positions;
};

struct SceneSpec {
  int width = 1;
  int height = 1;
  std::size_t frames = 1;
  double fps = 1.0;
  std::uint8_t ground = 0;
  /// Later shapes overdraw earlier ones.
  std::vector<ShapeTrack> shapes;
};

/// Cells of a shape's footprint relative to its bounding box origin.
/// Triangles are isosceles with the apex on the top row and the base on the
/// bottom row.
inline bool footprint_contains(const ShapeTrack& s, int dx, int dy) {
  if (dx < 0 || dy < 0 || dx >= s.width || dy >= s.height) return false;
  if (s.kind == ShapeKind::rectangle || s.height == 1) return true;
  return std::abs(2 * dx - (s.width - 1)) * (s.height - 1) <= (s.width - 1) * dy;
}

inline std::vector<Point> footprint(const ShapeTrack& s, Point origin) {
  std::vector<Point> out;
  for (int dy = 0; dy < s.height; ++dy) {
    for (int dx = 0; dx < s.width; ++dx) {
      if (footprint_contains(s, dx, dy)) out.push_back({origin.x + dx, origin.y + dy});
    }
  }
  return out;
}

struct GroundTruth {
  /// One track per shape: visible cells per frame, id = shape index.
  std::vector<TrackedRegion> tracks;
  std::vector<std::optional<Lifespan>> lifespans;
  /// Analytic change masks (foreground only) for frames 0..n-2; present
  /// when every frame holds pairwise-disjoint rectangles only.
  std::optional<std::vector<Region>> change_masks;
};

struct Scene {
  Video video;
  GroundTruth truth;
};

namespace detail {

// x- and y-derivative of the indicator of a rectangle at p.
inline std::pair<int, int> rect_indicator_derivative(Point origin, int w, int h, Point p) {
  const bool in_rows = p.y >= origin.y && p.y < origin.y + h;
  const bool in_cols = p.x >= origin.x && p.x < origin.x + w;
  int dx = 0;
  int dy = 0;
  if (in_rows) {
    if (p.x == origin.x - 1) dx = 1;
    if (p.x == origin.x + w - 1) dx = -1;
  }
  if (in_cols) {
    if (p.y == origin.y - 1) dy = 1;
    if (p.y == origin.y + h - 1) dy = -1;
  }
  return {dx, dy};
}

inline bool rectangles_only_and_disjoint(const SceneSpec& spec) {
  for (const ShapeTrack& s : spec.shapes) {
    if (s.kind != ShapeKind::rectangle) return false;
  }
  for (std::size_t t = 0; t < spec.frames; ++t) {
    for (std::size_t i = 0; i < spec.shapes.size(); ++i) {
      const auto& a = spec.shapes[i];
      if (!a.positions[t]) continue;
      for (std::size_t j = i + 1; j < spec.shapes.size(); ++j) {
        const auto& b = spec.shapes[j];
        if (!b.positions[t]) continue;
        const Point pa = *a.positions[t];
        const Point pb = *b.positions[t];
        const bool overlap = pa.x < pb.x + b.width && pb.x < pa.x + a.width &&
                             pa.y < pb.y + b.height && pb.y < pa.y + a.height;
        if (overlap) return false;
      }
    }
  }
  return true;
}

// Change mask from rectangle geometry: the frame is ground plus a sum of
// (level - ground) scaled rectangle indicators, so its derivative is the
// matching sum of indicator derivatives.
inline Region analytic_change_mask(const SceneSpec& spec, std::size_t t) {
  const Extent ext{spec.width, spec.height};
  std::vector<Point> cells;
  for (int y = 0; y + 1 < spec.height; ++y) {
    for (int x = 0; x + 1 < spec.width; ++x) {
      int dx[2] = {0, 0};
      int dy[2] = {0, 0};
      for (int k = 0; k < 2; ++k) {
        for (const ShapeTrack& s : spec.shapes) {
          const auto& pos = s.positions[t + static_cast<std::size_t>(k)];
          if (!pos) continue;
          const int amp = static_cast<int>(s.level) - static_cast<int>(spec.ground);
          auto [ix, iy] = rect_indicator_derivative(*pos, s.width, s.height, {x, y});
          dx[k] += amp * ix;
          dy[k] += amp * iy;
        }
      }
      if (dx[0] != dx[1] || dy[0] != dy[1]) cells.push_back({x, y});
    }
  }
  return Region(ext, std::move(cells));
}

}  // namespace detail

inline void validate(const SceneSpec& spec) {
  if (spec.width <= 0 || spec.height <= 0 || spec.frames == 0 || !(spec.fps > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "scene needs positive size, frame count and fps");
  }
  for (std::size_t i = 0; i < spec.shapes.size(); ++i) {
    const ShapeTrack& s = spec.shapes[i];
    if (s.width <= 0 || s.height <= 0) {
      throw Error(ErrorKind::invalid_argument, "shape " + std::to_string(i) + " has an empty box");
    }
    if (s.positions.size() != spec.frames) {
      throw Error(ErrorKind::invalid_argument,
                  "shape " + std::to_string(i) + " needs one position entry per frame");
    }
    for (std::size_t t = 0; t < spec.frames; ++t) {
      const auto& pos = s.positions[t];
      if (!pos) continue;
      if (pos->x < 0 || pos->y < 0 || pos->x + s.width > spec.width || pos->y + s.height > spec.height) {
        throw Error(ErrorKind::shape_out_of_extent,
                    "shape " + std::to_string(i) + " at frame " + std::to_string(t));
      }
    }
  }
}

inline Scene generate_scene(const SceneSpec& spec) {
  validate(spec);
  const Extent ext{spec.width, spec.height};
  std::vector<std::vector<std::uint8_t>> planes;
  // owner[t][cell] = index + 1 of the topmost shape, 0 for ground
  std::vector<std::vector<std::size_t>> owner;
  for (std::size_t t = 0; t < spec.frames; ++t) {
    std::vector<std::uint8_t> plane(ext.area(), spec.ground);
    std::vector<std::size_t> own(ext.area(), 0);
    for (std::size_t i = 0; i < spec.shapes.size(); ++i) {
      const ShapeTrack& s = spec.shapes[i];
      if (!s.positions[t]) continue;
      for (const Point& p : footprint(s, *s.positions[t])) {
        plane[ext.index(p)] = s.level;
        own[ext.index(p)] = i + 1;
      }
    }
    planes.push_back(std::move(plane));
    owner.push_back(std::move(own));
  }

  GroundTruth truth;
  for (std::size_t i = 0; i < spec.shapes.size(); ++i) {
    std::vector<Region> slices;
    for (std::size_t t = 0; t < spec.frames; ++t) {
      std::vector<Point> cells;
      for (std::size_t c = 0; c < ext.area(); ++c) {
        if (owner[t][c] == i + 1) cells.push_back(ext.at(c));
      }
      slices.emplace_back(ext, std::move(cells));
    }
    TrackedRegion tr(static_cast<int>(i), std::move(slices));
    truth.lifespans.push_back(tr.birth() ? std::optional<Lifespan>(lifespan(tr)) : std::nullopt);
    truth.tracks.push_back(std::move(tr));
  }
  if (detail::rectangles_only_and_disjoint(spec)) {
    std::vector<Region> masks;
    for (std::size_t t = 0; t + 1 < spec.frames; ++t) masks.push_back(detail::analytic_change_mask(spec, t));
    truth.change_masks = std::move(masks);
  }
  return {Video(spec.width, spec.height, std::move(planes), spec.fps), std::move(truth)};
}

/// Black triangle present in the first frame only, then a gray triangle
/// drifting through the remaining three frames, on a white ground.
inline SceneSpec fig4_spec() {
  SceneSpec spec;
  spec.width = 32;
  spec.height = 32;
  spec.frames = 4;
  spec.fps = 1.0;
  spec.ground = 255;
  spec.shapes.push_back({ShapeKind::triangle, 0, 9, 5, {Point{3, 3}, std::nullopt, std::nullopt, std::nullopt}});
  spec.shapes.push_back(
      {ShapeKind::triangle, 128, 9, 5, {std::nullopt, Point{16, 16}, Point{17, 17}, Point{18, 18}}});
  return spec;
}

/// A white square on black ground moving one cell right and one cell down
/// per frame, bouncing off the borders for long sequences. Consecutive
/// positions overlap, so the square forms a single track.
inline SceneSpec moving_square_spec(std::size_t frames = 8, int width = 64, int height = 64, int side = 2) {
  if (side < 2) throw Error(ErrorKind::invalid_argument, "moving square side must be at least 2");
  if (width < side || height < side) {
    throw Error(ErrorKind::shape_out_of_extent, "moving square does not fit the frame");
  }
  SceneSpec spec;
  spec.width = width;
  spec.height = height;
  spec.frames = frames;
  spec.fps = 1.0;
  spec.ground = 0;
  ShapeTrack sq{ShapeKind::rectangle, 255, side, side, {}};
  auto bounce = [](int start, int step, std::size_t t, int span) {
    if (span == 0) return 0;
    const int raw = start + step * static_cast<int>(t);
    const int period = 2 * span;
    const int m = raw % period;
    return m <= span ? m : period - m;
  };
  for (std::size_t t = 0; t < frames; ++t) {
    sq.positions.push_back(Point{bounce(4, 1, t, width - side), bounce(6, 1, t, height - side)});
  }
  spec.shapes.push_back(std::move(sq));
  return spec;
}

}  // namespace tdt::scene

#endif  // TDT_SCENE_HPP
