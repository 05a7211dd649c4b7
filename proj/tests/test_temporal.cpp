#include <map>
#include <optional>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "support.hpp"
#include "tdt/generators.hpp"
#include "tdt/scene.hpp"
#include "tdt/temporal.hpp"

using tdt::Connectivity;
using tdt::ErrorKind;
using tdt::Extent;
using tdt::Frame;
using tdt::LatticeMap;
using tdt::Point;
using tdt::Region;
using tdt::TrackedRegion;
using tdt::Video;

namespace {

struct Box {
  int x, y, w, h;
};

Region box(Extent e, Box b) {
  std::vector<Point> cells;
  for (int y = b.y; y < b.y + b.h; ++y) {
    for (int x = b.x; x < b.x + b.w; ++x) cells.push_back({x, y});
  }
  return Region(e, cells);
}

TrackedRegion box_track(Extent e, std::size_t frames, int id, const std::map<std::size_t, Box>& boxes) {
  std::vector<Region> slices(frames, Region(e));
  for (const auto& [t, b] : boxes) slices[t] = box(e, b);
  return TrackedRegion(id, slices);
}

// Frames with the given boxes painted at level `fg` over `bg`.
Video paint(Extent e, const std::vector<std::vector<Box>>& frames, std::uint8_t fg = 255, std::uint8_t bg = 0) {
  std::vector<std::vector<std::uint8_t>> planes;
  for (const auto& boxes : frames) {
    std::vector<std::uint8_t> plane(e.area(), bg);
    for (const Box& b : boxes) {
      for (const Point& p : box(e, b)) plane[e.index(p)] = fg;
    }
    planes.push_back(plane);
  }
  return Video(e.width, e.height, planes);
}

const Extent k8{8, 8};

}  // namespace

// ---------------------------------------------------------------------------
// segment

TEST(Segment, IdenticalFramesHaveNoForeground) {
  const Video v = paint(k8, {{{2, 2, 3, 3}}, {{2, 2, 3, 3}}});
  const auto m = tdt::segment(v, 0);
  EXPECT_TRUE(m.foreground.empty());
  EXPECT_EQ(m.background.size(), k8.area());
}

TEST(Segment, MovingSquareMatchesDirectDerivatives) {
  const Video v = paint(k8, {{{2, 3, 2, 2}}, {{3, 3, 2, 2}}});
  const auto lv0 = v.frame(0).levels();
  const auto lv1 = v.frame(1).levels();
  auto at = [&](std::span<const std::uint8_t> lv, int x, int y) { return static_cast<int>(lv[static_cast<std::size_t>(y * 8 + x)]); };
  std::vector<Point> want;
  for (int y = 0; y < 7; ++y) {
    for (int x = 0; x < 7; ++x) {
      const int dx0 = at(lv0, x + 1, y) - at(lv0, x, y);
      const int dx1 = at(lv1, x + 1, y) - at(lv1, x, y);
      const int dy0 = at(lv0, x, y + 1) - at(lv0, x, y);
      const int dy1 = at(lv1, x, y + 1) - at(lv1, x, y);
      if (dx0 != dx1 || dy0 != dy1) want.push_back({x, y});
    }
  }
  const auto m = tdt::segment(v, 0);
  EXPECT_EQ(m.foreground, Region(k8, want));
  EXPECT_FALSE(m.foreground.empty());
  EXPECT_TRUE(tdt::intersection(m.foreground, m.background).empty());
  EXPECT_EQ(tdt::set_union(m.foreground, m.background), tdt::full_region(k8));
}

TEST(Segment, ToleranceIsMonotone) {
  tdt::gen::Rng rng(31);
  for (int k = 0; k < 20; ++k) {
    std::vector<std::vector<std::uint8_t>> planes(2, std::vector<std::uint8_t>(k8.area()));
    for (auto& l : planes[0]) l = static_cast<std::uint8_t>(tdt::gen::uniform(rng, 100, 140));
    for (std::size_t i = 0; i < k8.area(); ++i) {
      planes[1][i] = static_cast<std::uint8_t>(planes[0][i] + tdt::gen::uniform(rng, -3, 3));
    }
    const Video v(8, 8, planes);
    const auto loose = tdt::segment(v, 0, 4).foreground;
    const auto strict = tdt::segment(v, 0, 0).foreground;
    EXPECT_EQ(tdt::difference(loose, strict), Region(k8));
  }
}

TEST(Segment, LastRowAndColumnAreBackground) {
  const Video v = paint(k8, {{{0, 0, 8, 8}}, {{0, 0, 1, 1}}});
  const auto m = tdt::segment(v, 0);
  for (const Point& p : m.foreground) {
    EXPECT_LT(p.x, 7);
    EXPECT_LT(p.y, 7);
  }
}

TEST(Segment, Errors) {
  const Video v = paint(k8, {{}, {}});
  EXPECT_TDT_ERROR(tdt::segment(v, 1), ErrorKind::last_frame);
  EXPECT_TDT_ERROR(tdt::segment(v, 0, -1), ErrorKind::invalid_argument);
}

// ---------------------------------------------------------------------------
// track and lifespan

TEST(Track, OverlappingMovingSquareIsOneTrack) {
  std::vector<std::vector<Box>> frames;
  for (int t = 0; t < 6; ++t) frames.push_back({{1 + t, 2, 3, 3}});
  const Video v = paint({12, 8}, frames);
  const auto masks = tdt::presence_masks(v, 0);
  const auto tracks = tdt::track(v, masks, Connectivity::four);
  ASSERT_EQ(tracks.size(), 1u);
  EXPECT_EQ(tdt::lifespan(tracks[0]), (tdt::Lifespan{0, 5}));
  for (std::size_t t = 0; t < 6; ++t) EXPECT_EQ(tracks[0].slice(t), box({12, 8}, frames[t][0]));
}

TEST(Track, VanishingObjectDiesTheFrameBefore) {
  const Video v = paint(k8, {{{1, 1, 2, 2}}, {{1, 1, 2, 2}}, {{1, 1, 2, 2}}, {}, {}});
  const auto tracks = tdt::track(v, tdt::presence_masks(v, 0), Connectivity::eight);
  ASSERT_EQ(tracks.size(), 1u);
  EXPECT_EQ(*tracks[0].death(), 2u);
  EXPECT_FALSE(tracks[0].alive_at_end());
}

TEST(Track, NeverOverlappingObjectsGetTwoIds) {
  const Video v = paint(k8, {{{0, 0, 2, 2}, {5, 5, 2, 2}}, {{0, 0, 2, 2}, {5, 5, 2, 2}}});
  const auto tracks = tdt::track(v, tdt::presence_masks(v, 0), Connectivity::eight);
  ASSERT_EQ(tracks.size(), 2u);
  EXPECT_NE(tracks[0].id(), tracks[1].id());
  EXPECT_EQ(tracks[0].slice(0), box(k8, {0, 0, 2, 2}));
  EXPECT_EQ(tracks[1].slice(1), box(k8, {5, 5, 2, 2}));
}

TEST(Track, JumpStartsANewTrack) {
  const Video v = paint(k8, {{{0, 0, 2, 2}}, {{5, 5, 2, 2}}});
  const auto tracks = tdt::track(v, tdt::presence_masks(v, 0), Connectivity::eight);
  ASSERT_EQ(tracks.size(), 2u);
  EXPECT_EQ(tdt::lifespan(tracks[0]), (tdt::Lifespan{0, 0}));
  EXPECT_EQ(tdt::lifespan(tracks[1]), (tdt::Lifespan{1, 1}));
}

TEST(Track, SplitKeepsLargerPartOnTheTrack) {
  // Frame 1 splits the bar into a 3-cell and a 1-cell piece.
  const Video v = paint(k8, {{{0, 0, 5, 1}}, {{0, 0, 3, 1}, {4, 0, 1, 1}}});
  const auto tracks = tdt::track(v, tdt::presence_masks(v, 0), Connectivity::four);
  ASSERT_EQ(tracks.size(), 2u);
  EXPECT_EQ(tracks[0].slice(1), box(k8, {0, 0, 3, 1}));
  EXPECT_EQ(tracks[1].slice(1), box(k8, {4, 0, 1, 1}));
}

TEST(Lifespan, SingleFrameObject) {
  const auto a = box_track(k8, 6, 0, {{3, {1, 1, 1, 1}}});
  EXPECT_EQ(tdt::lifespan(a), (tdt::Lifespan{3, 3}));
}

TEST(Lifespan, NeverPresentThrows) {
  EXPECT_TDT_ERROR(tdt::lifespan(box_track(k8, 3, 0, {})), ErrorKind::never_present);
}

TEST(Lifespan, SceneTriangles) {
  const auto scene = tdt::scene::generate_scene(tdt::scene::fig4_spec());
  const auto tracks = tdt::track(scene.video, tdt::presence_masks(scene.video, 255), Connectivity::eight);
  ASSERT_EQ(tracks.size(), 2u);
  EXPECT_EQ(tdt::lifespan(tracks[0]), (tdt::Lifespan{0, 0}));
  EXPECT_EQ(tdt::lifespan(tracks[1]), (tdt::Lifespan{1, 3}));
  EXPECT_EQ(scene.video.frame(0).level(tracks[0].slice(0).min_cell()), 0);
  EXPECT_EQ(scene.video.frame(2).level(tracks[1].slice(2).min_cell()), 128);
}

// ---------------------------------------------------------------------------
// proximities

TEST(GapDistance, Cases) {
  EXPECT_EQ(tdt::gap_distance(box(k8, {0, 0, 3, 3}), box(k8, {2, 2, 3, 3})), 0);
  EXPECT_EQ(tdt::gap_distance(Region(k8, {{0, 0}}), Region(k8, {{3, 4}})), 4);
  EXPECT_TDT_ERROR(tdt::gap_distance(Region(k8), Region(k8, {{3, 4}})), ErrorKind::empty_subimage);
}

TEST(GapDistance, MatchesPairMinimum) {
  tdt::gen::Rng rng(32);
  for (int k = 0; k < 200; ++k) {
    const Region a = tdt::gen::random_region(rng, k8, 0.05);
    const Region b = tdt::gen::random_region(rng, k8, 0.05);
    const int d = tdt::gap_distance(a, b);
    EXPECT_EQ(d, oracle::min_gap(a, b));
    EXPECT_EQ(d == 0, oracle::shares_cell(a, b));
  }
}

TEST(TemporallyNear, SelfHasFullLifespanWitness) {
  const auto a = box_track(k8, 5, 0, {{1, {0, 0, 2, 2}}, {2, {1, 0, 2, 2}}, {3, {2, 0, 2, 2}}});
  const auto w = tdt::temporally_near(a, a);
  EXPECT_TRUE(w.holds);
  EXPECT_EQ(w.times, (std::vector<std::size_t>{1, 2, 3}));
}

TEST(TemporallyNear, DisjointEverywhere) {
  const auto a = box_track(k8, 3, 0, {{0, {0, 0, 2, 2}}, {1, {0, 0, 2, 2}}});
  const auto b = box_track(k8, 3, 1, {{0, {5, 5, 2, 2}}, {1, {5, 5, 2, 2}}});
  const auto w = tdt::temporally_near(a, b);
  EXPECT_FALSE(w.holds);
  EXPECT_TRUE(w.times.empty());
}

TEST(TemporallyNear, CrossingSquaresWitnessIsOverlapFrames) {
  const Extent e{16, 4};
  std::map<std::size_t, Box> ra;
  std::map<std::size_t, Box> rb;
  for (std::size_t t = 0; t < 7; ++t) {
    ra[t] = {static_cast<int>(2 * t), 1, 2, 2};
    rb[t] = {static_cast<int>(13 - 2 * t), 1, 2, 2};
  }
  const auto a = box_track(e, 7, 0, ra);
  const auto b = box_track(e, 7, 1, rb);
  std::vector<std::size_t> want;
  for (std::size_t t = 0; t < 7; ++t) {
    if (oracle::shares_cell(a.slice(t), b.slice(t))) want.push_back(t);
  }
  ASSERT_EQ(want, (std::vector<std::size_t>{3}));
  EXPECT_EQ(tdt::temporally_near(a, b).times, want);
}

TEST(TemporallyMetricNear, ParallelTracksAtGapThree) {
  std::map<std::size_t, Box> ra;
  std::map<std::size_t, Box> rb;
  for (std::size_t t = 0; t < 4; ++t) {
    ra[t] = {static_cast<int>(t), 0, 1, 2};
    rb[t] = {static_cast<int>(t) + 3, 0, 1, 2};
  }
  const auto a = box_track(k8, 4, 0, ra);
  const auto b = box_track(k8, 4, 1, rb);
  for (std::size_t t = 0; t < 4; ++t) ASSERT_EQ(oracle::min_gap(a.slice(t), b.slice(t)), 3);
  EXPECT_TRUE(tdt::temporally_metric_near(a, b, 3.0));
  EXPECT_FALSE(tdt::temporally_metric_near(a, b, 2.0));
  EXPECT_TDT_ERROR(tdt::temporally_metric_near(a, b, -1.0), ErrorKind::invalid_argument);
}

TEST(TemporallyMetricNear, ImplicationsOnRandomTracks) {
  tdt::gen::Rng rng(33);
  for (int k = 0; k < 300; ++k) {
    const auto a = tdt::gen::random_track(rng, k8, 6, 0);
    const auto b = tdt::gen::random_track(rng, k8, 6, 1);
    const bool near = tdt::temporally_near(a, b).holds;
    EXPECT_EQ(tdt::temporally_metric_near(a, b, 0.0), near);
    if (near) {
      for (double eps : {0.0, 0.5, 1.0, 2.0, 7.5}) EXPECT_TRUE(tdt::temporally_metric_near(a, b, eps));
      EXPECT_TRUE(tdt::lifespans_overlap(a, b));
      EXPECT_TRUE(tdt::temporally_adjacent(a, b, Connectivity::four).has_value());
    }
    // Per-frame oracle for the metric relation.
    bool within2 = false;
    for (std::size_t t = 0; t < 6; ++t) {
      if (a.present(t) && b.present(t) && oracle::min_gap(a.slice(t), b.slice(t)) <= 2) within2 = true;
    }
    EXPECT_EQ(tdt::temporally_metric_near(a, b, 2.0), within2);
  }
}

TEST(LifespansOverlap, Cases) {
  auto span_track = [](std::size_t b, std::size_t d, int id) {
    std::map<std::size_t, Box> m;
    for (std::size_t t = b; t <= d; ++t) m[t] = {0, 0, 1, 1};
    return box_track(k8, 6, id, m);
  };
  EXPECT_TRUE(tdt::lifespans_overlap(span_track(0, 3, 0), span_track(3, 5, 1)));
  EXPECT_FALSE(tdt::lifespans_overlap(span_track(0, 1, 0), span_track(2, 5, 1)));
}

TEST(TemporallyAdjacent, TouchingOverAnInterval) {
  std::map<std::size_t, Box> ra;
  std::map<std::size_t, Box> rb;
  for (std::size_t t = 0; t < 7; ++t) ra[t] = {0, 0, 2, 2};
  for (std::size_t t = 2; t <= 4; ++t) rb[t] = {2, 0, 2, 2};
  rb[5] = {5, 5, 2, 2};
  const auto a = box_track(k8, 7, 0, ra);
  const auto b = box_track(k8, 7, 1, rb);
  std::vector<std::size_t> want;
  for (std::size_t t = 0; t < 7; ++t) {
    if (a.present(t) && b.present(t) && oracle::any_adjacent_pair(a.slice(t), b.slice(t), false)) want.push_back(t);
  }
  EXPECT_EQ(want, (std::vector<std::size_t>{2, 3, 4}));
  EXPECT_EQ(tdt::temporally_adjacent(a, b, Connectivity::four), want);
}

TEST(TemporallyAdjacent, NeverAdjacent) {
  const auto a = box_track(k8, 2, 0, {{0, {0, 0, 1, 1}}, {1, {0, 0, 1, 1}}});
  const auto b = box_track(k8, 2, 1, {{0, {6, 6, 1, 1}}, {1, {6, 6, 1, 1}}});
  EXPECT_FALSE(tdt::temporally_adjacent(a, b, Connectivity::eight).has_value());
}

TEST(VideoFrameConnected, StaticBlob) {
  const auto a = box_track(k8, 3, 0, {{0, {1, 1, 3, 2}}, {1, {1, 1, 3, 2}}, {2, {1, 1, 3, 2}}});
  EXPECT_TRUE(tdt::video_frame_connected(a, Connectivity::four));
}

TEST(VideoFrameConnected, JumpingBlob) {
  const auto a = box_track(k8, 2, 0, {{0, {0, 0, 2, 2}}, {1, {5, 0, 2, 2}}});
  EXPECT_FALSE(tdt::video_frame_connected(a, Connectivity::eight));
}

TEST(VideoFrameConnected, SplittingBlob) {
  std::vector<Region> slices{box(k8, {0, 0, 4, 1}), Region(k8, {{0, 0}, {3, 0}})};
  const TrackedRegion a(0, slices);
  for (std::size_t t = 0; t < 2; ++t) {
    EXPECT_EQ(oracle::connected(oracle::cells_of(a.slice(t)), true), t == 0);
  }
  EXPECT_FALSE(tdt::video_frame_connected(a, Connectivity::eight));
}

TEST(VideoFrameConnected, RequiresFullSpan) {
  const auto a = box_track(k8, 3, 0, {{0, {0, 0, 1, 1}}, {2, {0, 0, 1, 1}}});
  EXPECT_TDT_ERROR(tdt::video_frame_connected(a, Connectivity::four), ErrorKind::not_full_span);
}

TEST(TemporallyVideoFrameConnected, DisappearsForGood) {
  const auto a = box_track(k8, 6, 0, {{0, {1, 1, 2, 2}}, {1, {2, 1, 2, 2}}, {2, {3, 1, 2, 2}}});
  EXPECT_EQ(tdt::temporally_video_frame_connected(a, Connectivity::four), std::optional<std::size_t>(2));
}

TEST(TemporallyVideoFrameConnected, AliveThroughLastFrame) {
  const auto a = box_track(k8, 3, 0, {{0, {1, 1, 2, 2}}, {1, {1, 1, 2, 2}}, {2, {1, 1, 2, 2}}});
  EXPECT_EQ(tdt::temporally_video_frame_connected(a, Connectivity::four), std::optional<std::size_t>(2));
}

TEST(TemporallyVideoFrameConnected, ReappearanceIsRejected) {
  const auto a = box_track(k8, 5, 0, {{0, {1, 1, 2, 2}}, {1, {1, 1, 2, 2}}, {3, {1, 1, 2, 2}}});
  EXPECT_FALSE(tdt::temporally_video_frame_connected(a, Connectivity::four).has_value());
}

// ---------------------------------------------------------------------------
// cross-frame adjacency

TEST(CrossFrame, PointAcross) {
  const Video v = paint(k8, {{}, {}});
  EXPECT_TRUE(tdt::point_across_adjacent(v, {{2, 3}, 0}, {{2, 3}, 1}));
  EXPECT_FALSE(tdt::point_across_adjacent(v, {{2, 3}, 0}, {{2, 3}, 0}));
  EXPECT_FALSE(tdt::point_across_adjacent(v, {{2, 3}, 0}, {{3, 3}, 1}));
  EXPECT_TDT_ERROR(tdt::point_across_adjacent(v, {{8, 3}, 0}, {{2, 3}, 1}), ErrorKind::out_of_extent);
}

TEST(CrossFrame, VoxelAndFrameValue) {
  const Video v(2, 1, {{10, 20}, {20, 30}, {40, 50}});
  EXPECT_TRUE(tdt::voxel_value_adjacent(v, {{1, 0}, 0}, {{0, 0}, 1}));
  EXPECT_FALSE(tdt::voxel_value_adjacent(v, {{0, 0}, 0}, {{0, 0}, 1}));
  EXPECT_TRUE(tdt::voxel_value_adjacent(v, {{0, 0}, 0}, {{0, 0}, 1}, 10));
  EXPECT_TRUE(tdt::frame_value_adjacent(v.frame(0), v.frame(1)));
  EXPECT_FALSE(tdt::frame_value_adjacent(v.frame(0), v.frame(2)));
  EXPECT_TRUE(tdt::frame_value_adjacent(v.frame(1), v.frame(2), 10));
}

TEST(CrossFrame, LocationValueAcrossDistantFrames) {
  // Region A in the first frame and region D in the fourth carry level 200;
  // the frames in between hold other levels only.
  const Video v = paint(k8, {{{1, 1, 2, 2}}, {}, {}, {{5, 4, 2, 3}}}, 200, 30);
  const Region a = box(k8, {1, 1, 2, 2});
  const Region d = box(k8, {5, 4, 2, 3});
  EXPECT_TRUE(tdt::location_value_adjacent(v.frame(0), a, v.frame(3), d));
  EXPECT_FALSE(tdt::location_value_adjacent(v.frame(0), a, v.frame(1), d));
}

TEST(CrossFrame, LocationValueMeansSharedLevelSet) {
  tdt::gen::Rng rng(34);
  for (int k = 0; k < 200; ++k) {
    const Frame fa = tdt::gen::random_frame(rng, k8, 5);
    const Frame fb = tdt::gen::random_frame(rng, k8, 5);
    const Region a = tdt::gen::random_region(rng, k8, 0.05);
    const Region b = tdt::gen::random_region(rng, k8, 0.05);
    std::set<int> la;
    std::set<int> lb;
    for (const Point& p : a) la.insert(fa.level(p));
    for (const Point& q : b) lb.insert(fb.level(q));
    bool shared = false;
    for (int l : la) shared = shared || lb.count(l) > 0;
    EXPECT_EQ(tdt::location_value_adjacent(fa, a, fb, b), shared);
  }
}

// ---------------------------------------------------------------------------
// temporal continuity

namespace {

struct TwoTrackScene {
  Video video;
  std::vector<TrackedRegion> tracks;
};

// Two boxes side by side for frames 0..2, then the right one leaves.
TwoTrackScene side_by_side() {
  const Extent e{6, 4};
  std::vector<TrackedRegion> tracks{
      box_track(e, 5, 0, {{0, {0, 1, 2, 2}}, {1, {0, 1, 2, 2}}, {2, {0, 1, 2, 2}}, {3, {0, 1, 2, 2}}, {4, {0, 1, 2, 2}}}),
      box_track(e, 5, 1, {{0, {2, 1, 1, 2}}, {1, {2, 1, 1, 2}}, {2, {2, 1, 1, 2}}})};
  return {paint(e, {{}, {}, {}, {}, {}}), tracks};
}

}  // namespace

TEST(TemporalContinuity, IdentityHolds) {
  const auto s = side_by_side();
  const auto f = tdt::broadcast(LatticeMap::identity(s.video.extent()), s.video.size());
  const auto v = tdt::check_temporal_continuity(f, s.video, s.video, s.tracks, Connectivity::four);
  EXPECT_TRUE(v.holds);
  EXPECT_TRUE(v.tnear_preserved);
  EXPECT_TRUE(v.disappearance_preserved);
}

TEST(TemporalContinuity, ConstantMapHolds) {
  const auto s = side_by_side();
  const auto f = tdt::broadcast(LatticeMap::tabulate(s.video.extent(), s.video.extent(), [](Point) { return Point{3, 3}; }),
                                s.video.size());
  EXPECT_TRUE(tdt::check_temporal_continuity(f, s.video, s.video, s.tracks, Connectivity::eight).holds);
}

TEST(TemporalContinuity, DilationSeparatesAdjacentTracks) {
  const auto s = side_by_side();
  const Video wide = paint({12, 4}, {{}, {}, {}, {}, {}});
  const auto f = tdt::broadcast(
      LatticeMap::tabulate(s.video.extent(), wide.extent(), [](Point p) { return Point{2 * p.x, p.y}; }), s.video.size());
  const auto v = tdt::check_temporal_continuity(f, s.video, wide, s.tracks, Connectivity::four);
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(*v.witness, std::make_pair(0, 1));
}

TEST(TemporalContinuity, ShapeMismatchesRejected) {
  const auto s = side_by_side();
  const auto f = tdt::broadcast(LatticeMap::identity(s.video.extent()), 2);
  EXPECT_TDT_ERROR(tdt::check_temporal_continuity(f, s.video, s.video, s.tracks, Connectivity::four),
                   ErrorKind::partial_map);
}

// ---------------------------------------------------------------------------
// persistence

TEST(Persistence, SceneIntervals) {
  const auto scene = tdt::scene::generate_scene(tdt::scene::fig4_spec());
  const auto tracks = tdt::track(scene.video, tdt::presence_masks(scene.video, 255), Connectivity::eight);
  const auto bins = tdt::default_bins();
  const auto iv = tdt::persistence_diagram(scene.video, tracks, bins);
  ASSERT_EQ(iv.size(), 2u);
  EXPECT_EQ(iv[0].bin, "black");
  EXPECT_EQ(iv[0].birth, 0u);
  EXPECT_EQ(iv[0].death, 0u);
  EXPECT_DOUBLE_EQ(iv[0].birth_s, 0.0);
  EXPECT_DOUBLE_EQ(iv[0].death_s, 1.0);
  EXPECT_EQ(iv[1].bin, "gray");
  EXPECT_EQ(iv[1].birth, 1u);
  EXPECT_EQ(iv[1].death, 3u);
  EXPECT_DOUBLE_EQ(iv[1].birth_s, 1.0);
  EXPECT_DOUBLE_EQ(iv[1].death_s, 4.0);
}

TEST(Persistence, SecondsScaleWithFps) {
  const Video v(2, 1, {{0, 0}, {0, 0}, {0, 0}}, 2.0);
  const auto a = box_track({2, 1}, 3, 7, {{1, {0, 0, 2, 1}}, {2, {0, 0, 2, 1}}});
  const auto iv = tdt::persistence_diagram(v, std::vector<TrackedRegion>{a}, tdt::default_bins());
  ASSERT_EQ(iv.size(), 1u);
  EXPECT_EQ(iv[0].track, 7);
  EXPECT_DOUBLE_EQ(iv[0].birth_s, 0.5);
  EXPECT_DOUBLE_EQ(iv[0].death_s, 1.5);
}

TEST(Persistence, MixedLevelsGiveNoInterval) {
  const Video v(2, 1, {{0, 255}, {0, 255}});
  const auto a = box_track({2, 1}, 2, 0, {{0, {0, 0, 2, 1}}, {1, {0, 0, 2, 1}}});
  EXPECT_TRUE(tdt::persistence_diagram(v, std::vector<TrackedRegion>{a}, tdt::default_bins()).empty());
}

TEST(Persistence, OverlappingBinsRejected) {
  const Video v(1, 1, {{0}});
  const std::vector<tdt::LevelBin> bins{{"low", 0, 100}, {"mid", 100, 200}};
  EXPECT_TDT_ERROR(tdt::persistence_diagram(v, std::vector<TrackedRegion>{}, bins), ErrorKind::overlapping_bins);
}

TEST(Persistence, MatchesPerFrameBinPredicate) {
  tdt::gen::Rng rng(35);
  const Extent e{6, 6};
  for (int k = 0; k < 60; ++k) {
    const std::size_t frames = 7;
    std::vector<std::vector<std::uint8_t>> planes;
    for (std::size_t t = 0; t < frames; ++t) {
      // Mostly piecewise constant: one level per frame with the odd stray cell.
      const std::uint8_t base = std::array<std::uint8_t, 4>{0, 90, 200, 255}[tdt::gen::uniform(rng, 0, 3)];
      std::vector<std::uint8_t> plane(e.area(), base);
      if (tdt::gen::coin(rng, 0.3)) plane[static_cast<std::size_t>(tdt::gen::uniform(rng, 0, 35))] = 0;
      planes.push_back(plane);
    }
    const Video v(e.width, e.height, planes);
    const std::vector<TrackedRegion> tracks{tdt::gen::random_track(rng, e, frames, 0),
                                            tdt::gen::random_track(rng, e, frames, 1)};
    const auto bins = tdt::default_bins();
    const auto iv = tdt::persistence_diagram(v, tracks, bins);
    for (const auto& a : tracks) {
      for (const auto& bin : bins) {
        const auto want = oracle::bin_mask(v, a, bin.lo, bin.hi);
        std::vector<bool> got(frames, false);
        for (const auto& i : iv) {
          if (i.track != a.id() || i.bin != bin.name) continue;
          for (std::size_t t = i.birth; t <= i.death; ++t) {
            EXPECT_FALSE(got[t]);
            got[t] = true;
          }
          // maximal runs
          if (i.birth > 0) {
            EXPECT_FALSE(want[i.birth - 1]);
          }
          if (i.death + 1 < frames) {
            EXPECT_FALSE(want[i.death + 1]);
          }
        }
        EXPECT_EQ(got, want);
      }
    }
  }
}
