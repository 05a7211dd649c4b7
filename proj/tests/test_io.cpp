#include <fstream>

#include <gtest/gtest.h>
#include <png.h>

#include "support.hpp"
#include "tdt/generators.hpp"
#include "tdt/io.hpp"
#include "tdt/report.hpp"
#include "tdt/scene.hpp"

namespace fs = std::filesystem;
using tdt::ErrorKind;
using tdt::Frame;
using tdt::Video;

namespace {

std::vector<char> bytes_of(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

}  // namespace

TEST(Pgm, WriteThenReadPreservesEveryLevel) {
  ScratchDir dir("pgm");
  std::vector<std::uint8_t> lv(256 * 3);
  for (std::size_t i = 0; i < lv.size(); ++i) lv[i] = static_cast<std::uint8_t>(i % 256);
  const Frame f(256, 3, lv);
  tdt::io::write_pgm(f, dir.path() / "a.pgm");
  const Frame g = tdt::io::read_pgm(dir.path() / "a.pgm");
  ASSERT_EQ(g.extent(), f.extent());
  EXPECT_TRUE(std::equal(f.levels().begin(), f.levels().end(), g.levels().begin()));
  // Byte layout: header then raw raster.
  const auto raw = bytes_of(dir.path() / "a.pgm");
  const std::string header = "P5\n256 3\n255\n";
  ASSERT_EQ(raw.size(), header.size() + lv.size());
  EXPECT_EQ(std::string(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(header.size())), header);
}

TEST(Pgm, HeaderCommentsAreSkipped) {
  ScratchDir dir("pgmc");
  write_bytes(dir.path() / "c.pgm", std::string("P5\n# made by hand\n2 1 # size\n255\n") + '\x07' + '\xfe');
  const Frame f = tdt::io::read_pgm(dir.path() / "c.pgm");
  EXPECT_EQ(f.level({0, 0}), 7);
  EXPECT_EQ(f.level({1, 0}), 254);
}

TEST(Pgm, RejectsOtherVariants) {
  ScratchDir dir("pgmr");
  write_bytes(dir.path() / "ascii.pgm", "P2\n1 1\n255\n0\n");
  write_bytes(dir.path() / "deep.pgm", std::string("P5\n1 1\n65535\n") + '\0' + '\0');
  write_bytes(dir.path() / "short.pgm", "P5\n4 4\n255\nab");
  EXPECT_TDT_ERROR(tdt::io::read_pgm(dir.path() / "ascii.pgm"), ErrorKind::unsupported_format);
  EXPECT_TDT_ERROR(tdt::io::read_pgm(dir.path() / "deep.pgm"), ErrorKind::unsupported_format);
  EXPECT_TDT_ERROR(tdt::io::read_pgm(dir.path() / "short.pgm"), ErrorKind::unsupported_format);
}

TEST(Png, GrayRoundTrip) {
  ScratchDir dir("png");
  tdt::gen::Rng rng(41);
  std::vector<std::uint8_t> lv(17 * 9);
  for (auto& l : lv) l = static_cast<std::uint8_t>(tdt::gen::uniform(rng, 0, 255));
  const Frame f(17, 9, lv);
  tdt::io::write_png(f, dir.path() / "a.png");
  const Frame g = tdt::io::read_png(dir.path() / "a.png");
  ASSERT_EQ(g.extent(), f.extent());
  EXPECT_TRUE(std::equal(f.levels().begin(), f.levels().end(), g.levels().begin()));
}

TEST(Png, ColorIsUnsupported) {
  ScratchDir dir("pngc");
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = 2;
  image.height = 1;
  image.format = PNG_FORMAT_RGB;
  const std::uint8_t rgb[6] = {255, 0, 0, 0, 255, 0};
  const fs::path p = dir.path() / "rgb.png";
  ASSERT_TRUE(png_image_write_to_file(&image, p.c_str(), 0, rgb, 0, nullptr));
  EXPECT_TDT_ERROR(tdt::io::read_png(p), ErrorKind::unsupported_format);
}

TEST(LoadVideo, DirectoryOfFourFrames) {
  ScratchDir dir("load4");
  for (int k = 0; k < 4; ++k) {
    tdt::io::write_pgm(Frame(64, 64, static_cast<std::uint8_t>(10 * k)),
                       dir.path() / ("f" + std::to_string(k) + ".pgm"));
  }
  write_bytes(dir.path() / "notes.txt", "ignored");
  const Video v = tdt::io::load_video(dir.path(), 25.0);
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v.extent(), (tdt::Extent{64, 64}));
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(v.frame(k).level({5, 5}), 10 * k);
  EXPECT_DOUBLE_EQ(v.frame(3).time().seconds, 3.0 / 25.0);
}

TEST(LoadVideo, LexicographicOrderAndMixedFormats) {
  ScratchDir dir("order");
  tdt::io::write_pgm(Frame(3, 3, std::uint8_t{2}), dir.path() / "b.pgm");
  tdt::io::write_png(Frame(3, 3, std::uint8_t{1}), dir.path() / "a.png");
  tdt::io::write_pgm(Frame(3, 3, std::uint8_t{3}), dir.path() / "c.pgm");
  const Video v = tdt::io::load_video(dir.path());
  ASSERT_EQ(v.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(v.frame(k).level({0, 0}), k + 1);
}

TEST(LoadVideo, MixedDimensions) {
  ScratchDir dir("mixed");
  tdt::io::write_pgm(Frame(64, 64, std::uint8_t{0}), dir.path() / "0.pgm");
  tdt::io::write_pgm(Frame(32, 32, std::uint8_t{0}), dir.path() / "1.pgm");
  EXPECT_TDT_ERROR(tdt::io::load_video(dir.path()), ErrorKind::mixed_dimensions);
}

TEST(LoadVideo, EmptyAndUnsupported) {
  ScratchDir dir("empty");
  EXPECT_TDT_ERROR(tdt::io::load_video(dir.path()), ErrorKind::empty_input);
  EXPECT_TDT_ERROR(tdt::io::load_video(dir.path() / "missing.pgm"), ErrorKind::empty_input);
  write_bytes(dir.path() / "x.bmp", "BM");
  EXPECT_TDT_ERROR(tdt::io::load_video(dir.path() / "x.bmp"), ErrorKind::unsupported_format);
}

TEST(LoadVideo, SingleFile) {
  ScratchDir dir("single");
  tdt::io::write_pgm(Frame(5, 2, std::uint8_t{9}), dir.path() / "only.pgm");
  EXPECT_EQ(tdt::io::load_video(dir.path() / "only.pgm").size(), 1u);
}

TEST(WriteVideo, RoundTripAndDigest) {
  ScratchDir dir("wv");
  tdt::gen::Rng rng(42);
  const Video v = tdt::gen::random_video(rng, {9, 7}, 5, 8);
  const auto files = tdt::io::write_video(v, dir.path() / "out");
  ASSERT_EQ(files.size(), 5u);
  EXPECT_EQ(files[3].filename().string(), "frame_00003.pgm");
  const Video w = tdt::io::load_video(dir.path() / "out");
  ASSERT_EQ(w.size(), v.size());
  for (std::size_t t = 0; t < v.size(); ++t) EXPECT_EQ(w.frame(t), v.frame(t));
  EXPECT_EQ(tdt::io::digest(w), tdt::io::digest(v));
  EXPECT_EQ(tdt::io::digest(v).size(), 16u);
  const Video other(9, 7, {std::vector<std::uint8_t>(63, 1)});
  EXPECT_NE(tdt::io::digest(other), tdt::io::digest(v));
}

// ---------------------------------------------------------------------------
// report documents

namespace {

tdt::ReportDocument sample_document() {
  const auto scene = tdt::scene::generate_scene(tdt::scene::fig4_spec());
  tdt::ReportDocument doc;
  doc.input_digest = tdt::io::digest(scene.video);
  doc.frames = scene.video.size();
  doc.fps = scene.video.fps();
  doc.extent = scene.video.extent();
  doc.masks = tdt::presence_masks(scene.video, 255);
  doc.tracks = tdt::track(scene.video, doc.masks, tdt::Connectivity::eight);
  doc.intervals = tdt::persistence_diagram(scene.video, doc.tracks, tdt::default_bins());
  doc.relations.push_back({"tnear", 0, 1, false, {}, std::nullopt});
  doc.relations.push_back({"mnear", 0, 1, true, {}, 2.5});
  doc.checks.push_back({"core", "x", false, 3, std::string("p=(0,0) \"q\"")});
  doc.checks.push_back({"core", "y", true, 9, std::nullopt});
  return doc;
}

}  // namespace

TEST(Report, JsonRoundTrip) {
  const auto doc = sample_document();
  const std::string text = tdt::serialize(doc);
  const auto back = tdt::parse_report(text);
  EXPECT_EQ(back, doc);
  EXPECT_EQ(tdt::serialize(back), text);
  EXPECT_FALSE(back.all_checks_passed());
}

TEST(Report, CanonicalKeysAndSchema) {
  const auto j = nlohmann::json::parse(tdt::serialize(sample_document()));
  for (const char* key : {"frames", "fps", "tracks", "relations", "intervals", "tool_version", "input_digest"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  const auto& t = j["tracks"][0];
  for (const char* key : {"id", "birth", "death", "slices"}) EXPECT_TRUE(t.contains(key)) << key;
  EXPECT_TRUE(t["slices"].contains("0"));
  const auto& iv = j["intervals"][1];
  EXPECT_EQ(iv["bin"], "gray");
  EXPECT_EQ(iv["birth"], 1);
  EXPECT_EQ(iv["death"], 3);
  EXPECT_DOUBLE_EQ(iv["death_s"].get<double>(), 4.0);
  // Top-level keys appear in sorted order in the text.
  const std::string text = tdt::serialize(sample_document());
  EXPECT_LT(text.find("\"checks\""), text.find("\"frames\""));
  EXPECT_LT(text.find("\"frames\""), text.find("\"tracks\""));
}

TEST(Report, RandomDocumentsRoundTrip) {
  tdt::gen::Rng rng(43);
  for (int k = 0; k < 20; ++k) {
    const tdt::Extent e{tdt::gen::uniform(rng, 3, 10), tdt::gen::uniform(rng, 3, 10)};
    const Video v = tdt::gen::random_video(rng, e, 4, 3);
    tdt::ReportDocument doc;
    doc.frames = v.size();
    doc.extent = e;
    doc.fps = 0.1 * tdt::gen::uniform(rng, 1, 300);
    doc.masks = tdt::change_masks(v);
    doc.tracks = tdt::track(v, doc.masks, tdt::Connectivity::four);
    doc.intervals = tdt::persistence_diagram(v, doc.tracks, tdt::default_bins());
    EXPECT_EQ(tdt::parse_report(tdt::serialize(doc)), doc);
  }
}
