// Frame ingestion: binary PGM (P5, maxval 255) and 8-bit grayscale PNG.

#ifndef TDT_IO_HPP
#define TDT_IO_HPP

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "tdt/core.hpp"

namespace tdt::io {

namespace fs = std::filesystem;

namespace detail {

inline std::string lower_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return ext;
}

// Next whitespace-delimited header token, skipping '#' comments.
inline std::string pgm_token(const std::vector<std::uint8_t>& buf, std::size_t& pos) {
  while (pos < buf.size()) {
    if (buf[pos] == '#') {
      while (pos < buf.size() && buf[pos] != '\n') ++pos;
    } else if (std::isspace(buf[pos])) {
      ++pos;
    } else {
      break;
    }
  }
  std::string tok;
  while (pos < buf.size() && !std::isspace(buf[pos]) && buf[pos] != '#') {
    tok.push_back(static_cast<char>(buf[pos++]));
  }
  return tok;
}

inline int pgm_int(const std::vector<std::uint8_t>& buf, std::size_t& pos, const fs::path& path) {
  const std::string tok = pgm_token(buf, pos);
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(c); })) {
    throw Error(ErrorKind::unsupported_format, path.string() + ": malformed PGM header");
  }
  return std::stoi(tok);
}

}  // namespace detail

inline Frame read_pgm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::empty_input, "cannot open " + path.string());
  const std::vector<std::uint8_t> buf((std::istreambuf_iterator<char>(in)),
                                      std::istreambuf_iterator<char>());
  std::size_t pos = 0;
  if (detail::pgm_token(buf, pos) != "P5") {
    throw Error(ErrorKind::unsupported_format, path.string() + ": not a binary PGM (P5)");
  }
  const int width = detail::pgm_int(buf, pos, path);
  const int height = detail::pgm_int(buf, pos, path);
  const int maxval = detail::pgm_int(buf, pos, path);
  if (width <= 0 || height <= 0) {
    throw Error(ErrorKind::unsupported_format, path.string() + ": empty image");
  }
  if (maxval != 255) {
    throw Error(ErrorKind::unsupported_format, path.string() + ": only maxval 255 is supported");
  }
  ++pos;  // single whitespace byte before the raster
  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (buf.size() < pos + n) throw Error(ErrorKind::unsupported_format, path.string() + ": truncated raster");
  return Frame(width, height, std::vector<std::uint8_t>(buf.begin() + static_cast<std::ptrdiff_t>(pos),
                                                        buf.begin() + static_cast<std::ptrdiff_t>(pos + n)));
}

inline void write_pgm(const Frame& f, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::invalid_argument, "cannot write " + path.string());
  out << "P5\n" << f.width() << ' ' << f.height() << "\n255\n";
  const auto lv = f.levels();
  out.write(reinterpret_cast<const char*>(lv.data()), static_cast<std::streamsize>(lv.size()));
}

inline Frame read_png(const fs::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw Error(ErrorKind::unsupported_format, path.string() + ": " + image.message);
  }
  if ((image.format & (PNG_FORMAT_FLAG_COLOR | PNG_FORMAT_FLAG_ALPHA)) != 0 ||
      (image.format & PNG_FORMAT_FLAG_LINEAR) != 0) {
    png_image_free(&image);
    throw Error(ErrorKind::unsupported_format, path.string() + ": only 8-bit grayscale PNG is supported");
  }
  image.format = PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> levels(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, levels.data(), 0, nullptr)) {
    throw Error(ErrorKind::unsupported_format, path.string() + ": " + image.message);
  }
  return Frame(static_cast<int>(image.width), static_cast<int>(image.height), std::move(levels));
}

inline void write_png(const Frame& f, const fs::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(f.width());
  image.height = static_cast<png_uint_32>(f.height());
  image.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.c_str(), 0, f.levels().data(), 0, nullptr)) {
    throw Error(ErrorKind::invalid_argument, "cannot write " + path.string() + ": " + image.message);
  }
}

inline bool is_frame_file(const fs::path& p) {
  const std::string ext = detail::lower_extension(p);
  return ext == ".pgm" || ext == ".png";
}

inline Frame read_frame(const fs::path& path) {
  const std::string ext = detail::lower_extension(path);
  if (ext == ".pgm") return read_pgm(path);
  if (ext == ".png") return read_png(path);
  throw Error(ErrorKind::unsupported_format, path.string() + ": expected .pgm or .png");
}

/// Loads a single frame file, or every .pgm/.png file of a directory in
/// lexicographic filename order.
inline Video load_video(const fs::path& path, double fps = 1.0) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && is_frame_file(entry.path())) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
  } else if (fs::exists(path)) {
    files.push_back(path);
  }
  if (files.empty()) throw Error(ErrorKind::empty_input, "no frames found at " + path.string());
  std::vector<Frame> frames;
  frames.reserve(files.size());
  for (const auto& f : files) {
    frames.push_back(read_frame(f));
    if (!(frames.back().extent() == frames.front().extent())) {
      throw Error(ErrorKind::mixed_dimensions, f.string() + " differs in size from " + files.front().string());
    }
  }
  return Video(frames, fps);
}

/// Writes frame k as `<dir>/frame_0000k.pgm`.
inline std::vector<fs::path> write_video(const Video& v, const fs::path& dir) {
  fs::create_directories(dir);
  std::vector<fs::path> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%05zu.pgm", k);
    out.push_back(dir / name);
    write_pgm(v.frame(k), out.back());
  }
  return out;
}

/// FNV-1a over frame dimensions and levels, as 16 hex digits.
inline std::string digest(const Video& v) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](std::uint8_t b) {
    h ^= b;
    h *= 1099511628211ull;
  };
  for (int d : {v.extent().width, v.extent().height, static_cast<int>(v.size())}) {
    for (int s = 0; s < 32; s += 8) mix(static_cast<std::uint8_t>(d >> s));
  }
  for (const Frame& f : v.frames()) {
    for (std::uint8_t l : f.levels()) mix(l);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tdt::io

#endif  // TDT_IO_HPP
