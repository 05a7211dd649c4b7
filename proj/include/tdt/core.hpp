// Lattice geometry, frames, videos and per-voxel adjacency.
//
// Picture elements live on the integer lattice. Sub-pixels (the corners of a
// picture element) live on the half-integer lattice and are stored as doubled
// integers so every comparison is exact.

#ifndef TDT_CORE_HPP
#define TDT_CORE_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <iterator>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tdt {

enum class ErrorKind {
  out_of_extent,
  empty_subimage,
  partial_map,
  not_a_cycle,
  degenerate_cycle,
  last_frame,
  never_present,
  not_full_span,
  overlapping_bins,
  mixed_dimensions,
  unsupported_format,
  empty_input,
  shape_out_of_extent,
  empty_diagram,
  invalid_argument,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::out_of_extent: return "OutOfExtent";
    case ErrorKind::empty_subimage: return "EmptySubimage";
    case ErrorKind::partial_map: return "PartialMap";
    case ErrorKind::not_a_cycle: return "NotACycle";
    case ErrorKind::degenerate_cycle: return "DegenerateCycle";
    case ErrorKind::last_frame: return "LastFrame";
    case ErrorKind::never_present: return "NeverPresent";
    case ErrorKind::not_full_span: return "NotFullSpan";
    case ErrorKind::overlapping_bins: return "OverlappingBins";
    case ErrorKind::mixed_dimensions: return "MixedDimensions";
    case ErrorKind::unsupported_format: return "UnsupportedFormat";
    case ErrorKind::empty_input: return "EmptyInput";
    case ErrorKind::shape_out_of_extent: return "ShapeOutOfExtent";
    case ErrorKind::empty_diagram: return "EmptyDiagram";
    case ErrorKind::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Integer lattice position. Ordered row-major (y first, then x).
struct Point {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(Point, Point) = default;
  friend constexpr std::strong_ordering operator<=>(Point a, Point b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

inline std::string to_string(Point p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

inline int chebyshev(Point a, Point b) {
  return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

/// Half-integer lattice point (x2/2, y2/2).
struct HalfPoint {
  int x2 = 0;
  int y2 = 0;

  static constexpr HalfPoint from_lattice(Point p) { return {2 * p.x, 2 * p.y}; }

  constexpr bool is_lattice() const { return x2 % 2 == 0 && y2 % 2 == 0; }
  constexpr bool is_corner() const { return x2 % 2 != 0 && y2 % 2 != 0; }
  constexpr double x() const { return x2 / 2.0; }
  constexpr double y() const { return y2 / 2.0; }

  friend constexpr bool operator==(HalfPoint, HalfPoint) = default;
  friend constexpr auto operator<=>(HalfPoint, HalfPoint) = default;
};

struct Extent {
  int width = 0;
  int height = 0;

  constexpr bool contains(Point p) const {
    return p.x >= 0 && p.y >= 0 && p.x < width && p.y < height;
  }
  constexpr std::size_t area() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  constexpr std::size_t index(Point p) const {
    return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(p.x);
  }
  constexpr Point at(std::size_t i) const {
    return {static_cast<int>(i % static_cast<std::size_t>(width)),
            static_cast<int>(i / static_cast<std::size_t>(width))};
  }
  constexpr bool on_border(Point p) const {
    return p.x == 0 || p.y == 0 || p.x == width - 1 || p.y == height - 1;
  }

  friend constexpr bool operator==(Extent, Extent) = default;
};

/// The four sub-pixel corners (x +- 1/2, y +- 1/2) of a picture element.
inline std::array<HalfPoint, 4> boundary_corners(Point p) {
  const int x2 = 2 * p.x;
  const int y2 = 2 * p.y;
  return {HalfPoint{x2 - 1, y2 - 1}, HalfPoint{x2 - 1, y2 + 1}, HalfPoint{x2 + 1, y2 - 1},
          HalfPoint{x2 + 1, y2 + 1}};
}

inline std::size_t shared_corner_count(Point p, Point q) {
  const auto a = boundary_corners(p);
  const auto b = boundary_corners(q);
  std::size_t n = 0;
  for (const auto& c : a) n += static_cast<std::size_t>(std::count(b.begin(), b.end(), c));
  return n;
}

enum class VoxelScheme { column, row, diagonal, boundary };

/// Irreflexive adjacency between two lattice positions.
///
/// column: same x, y differs by one. row: same y, x differs by one.
/// diagonal: x and y both differ by one. boundary: the corner sets intersect.
inline bool voxels_adjacent(Point p, Point q, VoxelScheme scheme) {
  if (p == q) return false;
  const int dx = std::abs(p.x - q.x);
  const int dy = std::abs(p.y - q.y);
  switch (scheme) {
    case VoxelScheme::column: return dx == 0 && dy == 1;
    case VoxelScheme::row: return dx == 1 && dy == 0;
    case VoxelScheme::diagonal: return dx == 1 && dy == 1;
    case VoxelScheme::boundary: return shared_corner_count(p, q) > 0;
  }
  return false;
}

struct TimeStamp {
  std::size_t index = 0;
  double seconds = 0.0;

  friend bool operator==(const TimeStamp&, const TimeStamp&) = default;
};

/// Quantized grayscale value; level / 255 maps into [0, 1].
struct GrayValue {
  std::uint8_t level = 0;

  constexpr double normalized() const { return level / 255.0; }
  constexpr bool is_black() const { return level == 0; }
  constexpr bool is_white() const { return level == 255; }
  constexpr bool is_gray() const { return level != 0 && level != 255; }

  friend constexpr bool operator==(GrayValue, GrayValue) = default;
  friend constexpr auto operator<=>(GrayValue, GrayValue) = default;
};

class Frame {
 public:
  Frame(int width, int height, std::vector<std::uint8_t> levels, TimeStamp time = {})
      : extent_{width, height}, time_(time), levels_(std::move(levels)) {
    if (width <= 0 || height <= 0) {
      throw Error(ErrorKind::invalid_argument, "frame dimensions must be positive");
    }
    if (levels_.size() != extent_.area()) {
      throw Error(ErrorKind::invalid_argument, "frame level count does not match extent");
    }
  }

  /// Constant frame.
  Frame(int width, int height, std::uint8_t fill, TimeStamp time = {})
      : Frame(width, height,
              std::vector<std::uint8_t>(
                  static_cast<std::size_t>(std::max(width, 0)) * static_cast<std::size_t>(std::max(height, 0)),
                  fill),
              time) {}

  int width() const { return extent_.width; }
  int height() const { return extent_.height; }
  const Extent& extent() const { return extent_; }
  const TimeStamp& time() const { return time_; }
  std::span<const std::uint8_t> levels() const { return levels_; }

  GrayValue at(Point p) const {
    if (!extent_.contains(p)) throw Error(ErrorKind::out_of_extent, "voxel " + to_string(p));
    return GrayValue{levels_[extent_.index(p)]};
  }

  // Unchecked.
  std::uint8_t level(Point p) const { return levels_[extent_.index(p)]; }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  Extent extent_;
  TimeStamp time_;
  std::vector<std::uint8_t> levels_;
};

inline GrayValue value_at(const Frame& f, Point p) { return f.at(p); }

enum class Axis { x, y };

/// Forward difference level(p + e_axis) - level(p).
inline int partial_derivative(const Frame& f, Point p, Axis axis) {
  const Point next = axis == Axis::x ? Point{p.x + 1, p.y} : Point{p.x, p.y + 1};
  if (!f.extent().contains(p) || !f.extent().contains(next)) {
    throw Error(ErrorKind::out_of_extent, "derivative successor of " + to_string(p));
  }
  return static_cast<int>(f.level(next)) - static_cast<int>(f.level(p));
}

/// Time-ordered frames sharing one extent. Frame k carries index k and
/// k / fps seconds.
class Video {
 public:
  Video(int width, int height, std::vector<std::vector<std::uint8_t>> planes, double fps = 1.0)
      : fps_(fps) {
    if (!(fps > 0.0)) throw Error(ErrorKind::invalid_argument, "fps must be positive");
    if (planes.empty()) throw Error(ErrorKind::empty_input, "a video needs at least one frame");
    frames_.reserve(planes.size());
    for (std::size_t k = 0; k < planes.size(); ++k) {
      frames_.emplace_back(width, height, std::move(planes[k]),
                           TimeStamp{k, static_cast<double>(k) / fps});
    }
  }

  /// Re-stamps the given frames in order; all must share one extent.
  Video(const std::vector<Frame>& frames, double fps = 1.0) : fps_(fps) {
    if (!(fps > 0.0)) throw Error(ErrorKind::invalid_argument, "fps must be positive");
    if (frames.empty()) throw Error(ErrorKind::empty_input, "a video needs at least one frame");
    frames_.reserve(frames.size());
    for (std::size_t k = 0; k < frames.size(); ++k) {
      if (!(frames[k].extent() == frames.front().extent())) {
        throw Error(ErrorKind::mixed_dimensions,
                    "frame " + std::to_string(k) + " differs in size from frame 0");
      }
      const auto lv = frames[k].levels();
      frames_.emplace_back(frames[k].width(), frames[k].height(),
                           std::vector<std::uint8_t>(lv.begin(), lv.end()),
                           TimeStamp{k, static_cast<double>(k) / fps});
    }
  }

  std::size_t size() const { return frames_.size(); }
  double fps() const { return fps_; }
  const Extent& extent() const { return frames_.front().extent(); }
  const Frame& frame(std::size_t t) const {
    if (t >= frames_.size()) {
      throw Error(ErrorKind::out_of_extent, "frame index " + std::to_string(t));
    }
    return frames_[t];
  }
  const std::vector<Frame>& frames() const { return frames_; }
  double seconds(std::size_t t) const { return static_cast<double>(t) / fps_; }

 private:
  std::vector<Frame> frames_;
  double fps_;
};

/// Finite set of lattice positions inside a frame extent, kept sorted
/// row-major without duplicates.
class Region {
 public:
  Region() = default;

  explicit Region(Extent extent) : extent_(extent) {}

  Region(Extent extent, std::vector<Point> cells) : extent_(extent), cells_(std::move(cells)) {
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
    for (const Point& p : cells_) {
      if (!extent_.contains(p)) throw Error(ErrorKind::out_of_extent, "region cell " + to_string(p));
    }
  }

  Region(Extent extent, std::initializer_list<Point> cells)
      : Region(extent, std::vector<Point>(cells)) {}

  /// Region from a dense extent-sized membership mask.
  static Region from_mask(Extent extent, std::span<const std::uint8_t> mask) {
    Region r(extent);
    for (std::size_t i = 0; i < mask.size() && i < extent.area(); ++i) {
      if (mask[i]) r.cells_.push_back(extent.at(i));
    }
    return r;
  }

  const Extent& extent() const { return extent_; }
  std::span<const Point> cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  auto begin() const { return cells_.begin(); }
  auto end() const { return cells_.end(); }
  const Point& min_cell() const { return cells_.front(); }

  bool contains(Point p) const { return std::binary_search(cells_.begin(), cells_.end(), p); }

  std::vector<std::uint8_t> mask() const {
    std::vector<std::uint8_t> m(extent_.area(), 0);
    for (const Point& p : cells_) m[extent_.index(p)] = 1;
    return m;
  }

  friend bool operator==(const Region&, const Region&) = default;

 private:
  Extent extent_;
  std::vector<Point> cells_;
};

inline Region intersection(const Region& a, const Region& b) {
  std::vector<Point> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Region(a.extent(), std::move(out));
}

inline Region set_union(const Region& a, const Region& b) {
  std::vector<Point> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Region(a.extent(), std::move(out));
}

inline Region difference(const Region& a, const Region& b) {
  std::vector<Point> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Region(a.extent(), std::move(out));
}

inline Region full_region(Extent extent) {
  std::vector<Point> cells;
  cells.reserve(extent.area());
  for (std::size_t i = 0; i < extent.area(); ++i) cells.push_back(extent.at(i));
  return Region(extent, std::move(cells));
}

}  // namespace tdt

#endif  // TDT_CORE_HPP
