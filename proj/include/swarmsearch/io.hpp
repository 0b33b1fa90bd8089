#pragma once

// Binary graymap snapshots and the per-step metrics table.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmsearch/field.hpp"
#include "swarmsearch/lattice.hpp"
#include "swarmsearch/metrics.hpp"

namespace swarmsearch {

class IoError : public std::runtime_error {
public:
  IoError(const std::filesystem::path& path, const std::string& what)
      : std::runtime_error(path.string() + ": " + what), path_(path) {}
  const std::filesystem::path& path() const { return path_; }

private:
  std::filesystem::path path_;
};

struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, 0 = black
};

// Darker pixels mean more pheromone; the scale is the snapshot's own maximum.
inline GrayImage render_pheromone(const PheromoneField& field) {
  const Lattice& lat = field.lattice();
  GrayImage img{lat.width, lat.height, std::vector<std::uint8_t>(lat.size(), 255)};
  double peak = 0.0;
  for (double s : field.values()) peak = std::max(peak, s);
  if (peak <= 0.0) return img;
  for (CellIndex c = 0; c < field.size(); ++c) {
    const double level = std::round(255.0 * field[c] / peak);
    img.pixels[c] = static_cast<std::uint8_t>(255.0 - level);
  }
  return img;
}

// One black pixel per occupied cell on white.
inline GrayImage render_agents(const Lattice& lat, std::span<const CellIndex> cells) {
  GrayImage img{lat.width, lat.height, std::vector<std::uint8_t>(lat.size(), 255)};
  for (CellIndex c : cells) img.pixels[c] = 0;
  return img;
}

inline std::string encode_pgm(const GrayImage& img) {
  std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
  return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError(path, "cannot open for writing");
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  os.close();
  if (!os) throw IoError(path, "write failed");
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline const char* kMetricsHeader = "t,phase,capture_ratio,mean_altitude,best_altitude,best_so_far,pheromone_at_target";

inline std::string metrics_csv(std::span<const StepMetrics> rows) {
  std::string out = std::string(kMetricsHeader) + "\n";
  for (const StepMetrics& m : rows) {
    out += std::to_string(m.t) + "," + std::to_string(m.phase) + "," + format_double(m.capture_ratio) + "," +
           format_double(m.mean_altitude) + "," + format_double(m.best_altitude) + "," +
           format_double(m.best_so_far) + "," + format_double(m.pheromone_at_target) + "\n";
  }
  return out;
}

inline std::string snapshot_name(const char* kind, long t) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s_t%05ld.pgm", kind, t);
  return buf;
}

}  // namespace swarmsearch
