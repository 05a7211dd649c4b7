// Canonical JSON report documents.
//
// Objects serialize with sorted keys (nlohmann::json's default std::map
// storage) and two-space indentation, so equal documents produce
// byte-identical text.

#ifndef TDT_REPORT_HPP
#define TDT_REPORT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tdt/core.hpp"
#include "tdt/temporal.hpp"

namespace tdt {

inline constexpr const char* kToolVersion = "0.1.0";

/// A pairwise relation between two tracks.
struct Relation {
  std::string kind;  // tnear | mnear | dnear | tadj
  int a = 0;
  int b = 0;
  bool holds = false;
  std::vector<std::size_t> times;
  std::optional<double> eps;

  friend bool operator==(const Relation&, const Relation&) = default;
};

struct CheckVerdict {
  std::string suite;
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::optional<std::string> counterexample;

  friend bool operator==(const CheckVerdict&, const CheckVerdict&) = default;
};

struct ReportDocument {
  std::string tool_version = kToolVersion;
  std::string input_digest;
  std::size_t frames = 0;
  double fps = 1.0;
  Extent extent;
  std::vector<SegmentationMask> masks;
  std::vector<TrackedRegion> tracks;
  std::vector<Relation> relations;
  std::vector<PersistenceInterval> intervals;
  std::vector<CheckVerdict> checks;

  bool all_checks_passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

namespace json_detail {

using nlohmann::json;

inline json cells_to_json(const Region& r) {
  json arr = json::array();
  for (const Point& p : r) arr.push_back(json::array({p.x, p.y}));
  return arr;
}

inline Region cells_from_json(const json& j, Extent extent) {
  std::vector<Point> cells;
  for (const auto& c : j) cells.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
  return Region(extent, std::move(cells));
}

}  // namespace json_detail

inline nlohmann::json to_json(const ReportDocument& doc) {
  using nlohmann::json;
  using json_detail::cells_to_json;
  json j;
  j["tool_version"] = doc.tool_version;
  j["input_digest"] = doc.input_digest;
  j["frames"] = doc.frames;
  j["fps"] = doc.fps;
  j["width"] = doc.extent.width;
  j["height"] = doc.extent.height;

  j["masks"] = json::array();
  for (const auto& m : doc.masks) {
    j["masks"].push_back({{"t", m.t}, {"foreground", cells_to_json(m.foreground)}});
  }

  j["tracks"] = json::array();
  for (const auto& tr : doc.tracks) {
    json slices = json::object();
    for (std::size_t t = 0; t < tr.frame_count(); ++t) {
      if (tr.present(t)) slices[std::to_string(t)] = cells_to_json(tr.slice(t));
    }
    json jt{{"id", tr.id()}, {"slices", slices}};
    if (auto b = tr.birth()) {
      jt["birth"] = *b;
      jt["death"] = *tr.death();
    } else {
      jt["birth"] = nullptr;
      jt["death"] = nullptr;
    }
    j["tracks"].push_back(std::move(jt));
  }

  j["relations"] = json::array();
  for (const auto& r : doc.relations) {
    json jr{{"kind", r.kind}, {"a", r.a}, {"b", r.b}, {"holds", r.holds}, {"times", r.times}};
    jr["eps"] = r.eps ? json(*r.eps) : json(nullptr);
    j["relations"].push_back(std::move(jr));
  }

  j["intervals"] = json::array();
  for (const auto& iv : doc.intervals) {
    j["intervals"].push_back({{"track", iv.track},
                              {"bin", iv.bin},
                              {"birth", iv.birth},
                              {"death", iv.death},
                              {"birth_s", iv.birth_s},
                              {"death_s", iv.death_s}});
  }

  j["checks"] = json::array();
  for (const auto& c : doc.checks) {
    json jc{{"suite", c.suite}, {"name", c.name}, {"passed", c.passed}, {"cases", c.cases}};
    jc["counterexample"] = c.counterexample ? json(*c.counterexample) : json(nullptr);
    j["checks"].push_back(std::move(jc));
  }
  return j;
}

inline ReportDocument report_from_json(const nlohmann::json& j) {
  using json_detail::cells_from_json;
  ReportDocument doc;
  doc.tool_version = j.at("tool_version").get<std::string>();
  doc.input_digest = j.at("input_digest").get<std::string>();
  doc.frames = j.at("frames").get<std::size_t>();
  doc.fps = j.at("fps").get<double>();
  doc.extent = {j.at("width").get<int>(), j.at("height").get<int>()};

  for (const auto& jm : j.at("masks")) {
    SegmentationMask m;
    m.t = jm.at("t").get<std::size_t>();
    m.foreground = cells_from_json(jm.at("foreground"), doc.extent);
    m.background = difference(full_region(doc.extent), m.foreground);
    doc.masks.push_back(std::move(m));
  }
  for (const auto& jt : j.at("tracks")) {
    std::vector<Region> slices(doc.frames, Region(doc.extent));
    for (const auto& [key, cells] : jt.at("slices").items()) {
      const std::size_t t = std::stoul(key);
      if (t >= doc.frames) throw Error(ErrorKind::invalid_argument, "slice index beyond frame count");
      slices[t] = cells_from_json(cells, doc.extent);
    }
    doc.tracks.emplace_back(jt.at("id").get<int>(), std::move(slices));
  }
  for (const auto& jr : j.at("relations")) {
    Relation r;
    r.kind = jr.at("kind").get<std::string>();
    r.a = jr.at("a").get<int>();
    r.b = jr.at("b").get<int>();
    r.holds = jr.at("holds").get<bool>();
    r.times = jr.at("times").get<std::vector<std::size_t>>();
    if (!jr.at("eps").is_null()) r.eps = jr.at("eps").get<double>();
    doc.relations.push_back(std::move(r));
  }
  for (const auto& ji : j.at("intervals")) {
    doc.intervals.push_back({ji.at("track").get<int>(), ji.at("bin").get<std::string>(),
                             ji.at("birth").get<std::size_t>(), ji.at("death").get<std::size_t>(),
                             ji.at("birth_s").get<double>(), ji.at("death_s").get<double>()});
  }
  for (const auto& jc : j.at("checks")) {
    CheckVerdict c;
    c.suite = jc.at("suite").get<std::string>();
    c.name = jc.at("name").get<std::string>();
    c.passed = jc.at("passed").get<bool>();
    c.cases = jc.at("cases").get<std::size_t>();
    if (!jc.at("counterexample").is_null()) c.counterexample = jc.at("counterexample").get<std::string>();
    doc.checks.push_back(std::move(c));
  }
  return doc;
}

inline std::string serialize(const ReportDocument& doc) { return to_json(doc).dump(2) + "\n"; }

inline ReportDocument parse_report(const std::string& text) {
  return report_from_json(nlohmann::json::parse(text));
}

}  // namespace tdt

#endif  // TDT_REPORT_HPP
