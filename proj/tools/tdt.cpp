// tdt: command-line front end for the temporal digital topology library.
//
// Exit status: 0 success, 1 property-check failure, 2 input or usage error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tdt/checks.hpp"
#include "tdt/core.hpp"
#include "tdt/io.hpp"
#include "tdt/report.hpp"
#include "tdt/scene.hpp"
#include "tdt/svg.hpp"
#include "tdt/temporal.hpp"
#include "tdt/topology.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct InputOptions {
  std::string input;
  double fps = 1.0;
};

struct TrackOptions {
  std::string masks;
  std::string ground = "auto";
  int tol = 0;
  int scheme = 8;
};

void add_input(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("-i,--input", in.input, "frame file or directory of .pgm/.png frames")->required();
  cmd->add_option("--fps", in.fps, "frames per second")->check(CLI::PositiveNumber);
}

void add_tracking(CLI::App* cmd, TrackOptions& t, const char* default_masks = "change") {
  cmd->add_option("--masks", t.masks, "foreground source: change (derivative segmentation) or presence")
      ->default_str(default_masks)
      ->check(CLI::IsMember({"change", "presence"}));
  cmd->add_option("--ground", t.ground, "ground level for presence masks, or auto (modal level of frame 0)");
  cmd->add_option("--tol", t.tol, "tolerance in quantized levels")->check(CLI::NonNegativeNumber);
  cmd->add_option("--scheme", t.scheme, "adjacency: 4 or 8")->check(CLI::IsMember({4, 8}));
}

tdt::Connectivity connectivity(int scheme) {
  return scheme == 4 ? tdt::Connectivity::four : tdt::Connectivity::eight;
}

std::uint8_t resolve_ground(const std::string& ground, const tdt::Video& v) {
  if (ground == "auto") {
    std::vector<std::size_t> hist(256, 0);
    for (std::uint8_t l : v.frame(0).levels()) ++hist[l];
    return static_cast<std::uint8_t>(std::max_element(hist.begin(), hist.end()) - hist.begin());
  }
  int level = -1;
  try {
    level = std::stoi(ground);
  } catch (const std::exception&) {
  }
  if (level < 0 || level > 255) throw tdt::Error(tdt::ErrorKind::invalid_argument, "ground must be 0..255 or auto");
  return static_cast<std::uint8_t>(level);
}

std::vector<tdt::SegmentationMask> build_masks(const tdt::Video& v, const TrackOptions& t) {
  if (t.masks == "presence") return tdt::presence_masks(v, resolve_ground(t.ground, v), t.tol);
  return tdt::change_masks(v, t.tol);
}

tdt::ReportDocument base_document(const tdt::Video& v) {
  tdt::ReportDocument doc;
  doc.input_digest = tdt::io::digest(v);
  doc.frames = v.size();
  doc.fps = v.fps();
  doc.extent = v.extent();
  return doc;
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tdt::Error(tdt::ErrorKind::invalid_argument, "cannot write " + path);
  out << text;
}

std::vector<tdt::LevelBin> parse_bins(const std::string& spec) {
  std::vector<tdt::LevelBin> bins;
  const auto defaults = tdt::default_bins();
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto known = std::find_if(defaults.begin(), defaults.end(), [&](const tdt::LevelBin& b) { return b.name == item; });
    if (known != defaults.end()) {
      bins.push_back(*known);
      continue;
    }
    // name=lo-hi or lo-hi
    std::string name = item;
    std::string range = item;
    if (auto eq = item.find('='); eq != std::string::npos) {
      name = item.substr(0, eq);
      range = item.substr(eq + 1);
    }
    const auto dash = range.find('-');
    int lo = -1;
    int hi = -1;
    try {
      lo = std::stoi(range.substr(0, dash));
      hi = dash == std::string::npos ? lo : std::stoi(range.substr(dash + 1));
    } catch (const std::exception&) {
    }
    if (lo < 0 || hi > 255 || lo > hi) {
      throw tdt::Error(tdt::ErrorKind::invalid_argument, "bad bin '" + item + "'");
    }
    bins.push_back({name, static_cast<std::uint8_t>(lo), static_cast<std::uint8_t>(hi)});
  }
  if (bins.empty()) throw tdt::Error(tdt::ErrorKind::invalid_argument, "no bins given");
  return bins;
}

std::vector<tdt::Point> parse_points(const std::string& text) {
  std::vector<tdt::Point> pts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw tdt::Error(tdt::ErrorKind::invalid_argument, "bad point '" + item + "'");
    pts.push_back({std::stoi(item.substr(0, comma)), std::stoi(item.substr(comma + 1))});
  }
  return pts;
}

json cells(const tdt::Region& r) {
  json a = json::array();
  for (const auto& p : r) a.push_back(json::array({p.x, p.y}));
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal digital topology over video frame sequences"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tdt::kToolVersion);

  InputOptions in;
  TrackOptions trk;
  std::string json_out;
  std::string svg_out;

  auto* ingest = app.add_subcommand("ingest", "load frames and report their shape and digest");
  add_input(ingest, in);
  ingest->add_option("--json", json_out, "output file (default stdout)");

  auto* seg = app.add_subcommand("segment", "foreground masks from derivative changes between consecutive frames");
  add_input(seg, in);
  seg->add_option("--tol", trk.tol, "tolerance in quantized levels")->check(CLI::NonNegativeNumber);
  seg->add_option("--scheme", trk.scheme, "adjacency used for component counts: 4 or 8")->check(CLI::IsMember({4, 8}));
  seg->add_option("--json", json_out, "output file (default stdout)");

  auto* trackc = app.add_subcommand("track", "link foreground components across frames");
  add_input(trackc, in);
  add_tracking(trackc, trk);
  trackc->add_option("--json", json_out, "output file (default stdout)");

  std::string kind = "tnear";
  double eps = 0.0;
  auto* prox = app.add_subcommand("proximity", "pairwise temporal proximities between tracks");
  add_input(prox, in);
  add_tracking(prox, trk);
  prox->add_option("--kind", kind, "tnear, mnear, dnear (lifespan overlap) or tadj")
      ->check(CLI::IsMember({"tnear", "mnear", "dnear", "tadj"}));
  prox->add_option("--eps", eps, "epsilon for mnear")->check(CLI::NonNegativeNumber);
  prox->add_option("--json", json_out, "output file (default stdout)");

  std::string bins_spec = "black,gray,white";
  auto* pers = app.add_subcommand("persistence", "value-bin persistence intervals of tracked regions");
  add_input(pers, in);
  add_tracking(pers, trk, "presence");
  pers->add_option("--bins", bins_spec, "comma list of black|gray|white or name=lo-hi ranges");
  pers->add_option("--json", json_out, "output file (default stdout)");
  pers->add_option("--svg", svg_out, "write the diagram as SVG");

  int width = 0;
  int height = 0;
  std::string cycle_spec;
  std::vector<int> rect;
  auto* jordan = app.add_subcommand("jordan", "split a frame by a closed cycle into interior and exterior");
  jordan->add_option("--width", width, "frame width")->required()->check(CLI::PositiveNumber);
  jordan->add_option("--height", height, "frame height")->required()->check(CLI::PositiveNumber);
  auto* cyc_opt = jordan->add_option("--cycle", cycle_spec, "vertices as 'x,y;x,y;...'");
  auto* rect_opt = jordan->add_option("--rect", rect, "rectangular ring x,y,w,h")->expected(4)->delimiter(',');
  cyc_opt->excludes(rect_opt);
  jordan->add_option("--json", json_out, "output file (default stdout)");

  std::string scene_name;
  std::string out_dir;
  std::size_t frames = 8;
  int gen_w = 64;
  int gen_h = 64;
  int side = 2;
  auto* generate = app.add_subcommand("generate", "write a synthetic scene with ground truth");
  generate->add_option("--scene", scene_name, "fig4 or moving-square")
      ->required()
      ->check(CLI::IsMember({"fig4", "moving-square"}));
  generate->add_option("--out", out_dir, "output directory")->required();
  generate->add_option("--frames", frames, "frame count (moving-square)")->check(CLI::PositiveNumber);
  generate->add_option("--width", gen_w, "frame width (moving-square)");
  generate->add_option("--height", gen_h, "frame height (moving-square)");
  generate->add_option("--side", side, "square side (moving-square)");

  std::string suite = "all";
  int size = 8;
  std::uint64_t seed = 42;
  int max_size = 32;
  std::string mutant;
  auto* check = app.add_subcommand("check", "run the property-check suites");
  check->add_option("--suite", suite, "core, topology, temporal or all")
      ->check(CLI::IsMember({"core", "topology", "temporal", "all"}));
  check->add_option("--size", size, "grid side");
  check->add_option("--seed", seed, "random seed");
  check->add_option("--max-size", max_size, "largest accepted grid side");
  check->add_option("--mutant", mutant, "inject a fault: four-for-boundary")
      ->check(CLI::IsMember({"four-for-boundary"}));
  check->add_option("--json", json_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (trk.masks.empty()) trk.masks = *pers ? "presence" : "change";

  try {
    if (*ingest) {
      const auto v = tdt::io::load_video(in.input, in.fps);
      write_text(tdt::serialize(base_document(v)), json_out);
    } else if (*seg) {
      const auto v = tdt::io::load_video(in.input, in.fps);
      auto doc = base_document(v);
      doc.masks = tdt::change_masks(v, trk.tol);
      write_text(tdt::serialize(doc), json_out);
      if (!json_out.empty()) {
        std::size_t components = 0;
        for (const auto& m : doc.masks) {
          if (!m.foreground.empty()) components += tdt::connected_components(m.foreground, connectivity(trk.scheme)).size();
        }
        std::cout << doc.masks.size() << " masks, " << components << " foreground components\n";
      }
    } else if (*trackc) {
      const auto v = tdt::io::load_video(in.input, in.fps);
      auto doc = base_document(v);
      const auto masks = build_masks(v, trk);
      doc.tracks = tdt::track(v, masks, connectivity(trk.scheme));
      write_text(tdt::serialize(doc), json_out);
      if (!json_out.empty()) std::cout << doc.tracks.size() << " tracks\n";
    } else if (*prox) {
      const auto v = tdt::io::load_video(in.input, in.fps);
      auto doc = base_document(v);
      const auto masks = build_masks(v, trk);
      doc.tracks = tdt::track(v, masks, connectivity(trk.scheme));
      for (std::size_t i = 0; i < doc.tracks.size(); ++i) {
        for (std::size_t j = i + 1; j < doc.tracks.size(); ++j) {
          const auto& a = doc.tracks[i];
          const auto& b = doc.tracks[j];
          tdt::Relation r{kind, a.id(), b.id(), false, {}, std::nullopt};
          if (kind == "tnear") {
            auto w = tdt::temporally_near(a, b);
            r.holds = w.holds;
            r.times = w.times;
          } else if (kind == "mnear") {
            r.holds = tdt::temporally_metric_near(a, b, eps);
            r.eps = eps;
          } else if (kind == "dnear") {
            r.holds = tdt::lifespans_overlap(a, b);
          } else {
            auto t = tdt::temporally_adjacent(a, b, connectivity(trk.scheme));
            r.holds = t.has_value();
            if (t) r.times = *t;
          }
          doc.relations.push_back(std::move(r));
        }
      }
      write_text(tdt::serialize(doc), json_out);
    } else if (*pers) {
      const auto v = tdt::io::load_video(in.input, in.fps);
      auto doc = base_document(v);
      const auto masks = build_masks(v, trk);
      doc.tracks = tdt::track(v, masks, connectivity(trk.scheme));
      const auto bins = parse_bins(bins_spec);
      doc.intervals = tdt::persistence_diagram(v, doc.tracks, bins);
      write_text(tdt::serialize(doc), json_out);
      if (!svg_out.empty()) tdt::svg::emit_persistence_svg(doc.intervals, svg_out);
    } else if (*jordan) {
      const tdt::Extent ext{width, height};
      tdt::OneCycle cycle;
      if (rect.size() == 4) {
        cycle = tdt::rectangle_cycle({rect[0], rect[1]}, rect[2], rect[3]);
      } else if (!cycle_spec.empty()) {
        cycle.vertices = parse_points(cycle_spec);
      } else {
        throw tdt::Error(tdt::ErrorKind::invalid_argument, "give --cycle or --rect");
      }
      const auto part = tdt::jordan_partition(cycle, ext);
      json j;
      j["width"] = width;
      j["height"] = height;
      j["cycle"] = cells(tdt::Region(ext, cycle.vertices));
      j["interior"] = cells(part.interior);
      j["exterior"] = cells(part.exterior);
      write_text(j.dump(2) + "\n", json_out);
    } else if (*generate) {
      const auto spec = scene_name == "fig4" ? tdt::scene::fig4_spec() : tdt::scene::moving_square_spec(frames, gen_w, gen_h, side);
      const auto scene = tdt::scene::generate_scene(spec);
      tdt::io::write_video(scene.video, out_dir);
      json truth;
      truth["scene"] = scene_name;
      truth["frames"] = scene.video.size();
      truth["fps"] = scene.video.fps();
      truth["tracks"] = json::array();
      for (std::size_t i = 0; i < scene.truth.tracks.size(); ++i) {
        const auto& l = scene.truth.lifespans[i];
        truth["tracks"].push_back({{"id", scene.truth.tracks[i].id()},
                                   {"level", spec.shapes[i].level},
                                   {"birth", l ? json(l->birth) : json(nullptr)},
                                   {"death", l ? json(l->death) : json(nullptr)}});
      }
      if (scene.truth.change_masks) {
        truth["change_masks"] = json::array();
        for (std::size_t t = 0; t < scene.truth.change_masks->size(); ++t) {
          truth["change_masks"].push_back({{"t", t}, {"foreground", cells((*scene.truth.change_masks)[t])}});
        }
      }
      std::ofstream(fs::path(out_dir) / "ground_truth.json") << truth.dump(2) << "\n";
      std::cout << "wrote " << scene.video.size() << " frames to " << out_dir << "\n";
    } else if (*check) {
      tdt::checks::CheckOptions opts;
      opts.max_size = max_size;
      opts.mutant_four_for_boundary = mutant == "four-for-boundary";
      const auto doc = tdt::checks::run_checks(tdt::checks::parse_suite(suite), size, seed, opts);
      write_text(tdt::serialize(doc), json_out);
      std::size_t failed = 0;
      for (const auto& c : doc.checks) {
        if (!c.passed) {
          ++failed;
          std::cerr << "FAIL " << c.suite << "/" << c.name << ": " << c.counterexample.value_or("") << "\n";
        }
      }
      if (!json_out.empty()) std::cout << doc.checks.size() - failed << "/" << doc.checks.size() << " checks passed\n";
      return failed == 0 ? 0 : 1;
    }
  } catch (const tdt::Error& e) {
    std::cerr << "tdt: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "tdt: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
