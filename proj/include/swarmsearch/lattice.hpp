#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace swarmsearch {

// Row-major cell index: row * width + col. Row 0 is the northern edge.
using CellIndex = std::size_t;

// One of the 8 compass headings, numbered counter-clockwise from east so
// that adjacent numbers differ by 45 degrees.
using Heading = std::uint8_t;
inline constexpr int kNumHeadings = 8;

struct Offset {
  int dcol;
  int drow;
};

//                                      E        NE       N        NW
inline constexpr std::array<Offset, kNumHeadings> kHeadingOffsets{{{1, 0}, {1, -1}, {0, -1}, {-1, -1},
                                                                  // W   SW       S       SE
                                                                  {-1, 0}, {-1, 1}, {0, 1}, {1, 1}}};

// Dimensions of a W x H torus plus the index arithmetic on it.
struct Lattice {
  std::size_t width = 0;
  std::size_t height = 0;

  Lattice() = default;
  Lattice(std::size_t w, std::size_t h) : width(w), height(h) {
    if (w == 0 || h == 0) throw std::invalid_argument("lattice dimensions must be positive");
  }

  std::size_t size() const { return width * height; }
  std::size_t col(CellIndex c) const { return c % width; }
  std::size_t row(CellIndex c) const { return c / width; }
  CellIndex index(std::size_t col, std::size_t row) const { return row * width + col; }

  // Neighbor in direction h with wrap-around on both axes.
  CellIndex neighbor(CellIndex c, Heading h) const {
    const Offset o = kHeadingOffsets[h];
    const std::size_t nc = (col(c) + width + static_cast<std::size_t>(o.dcol + 1) - 1) % width;
    const std::size_t nr = (row(c) + height + static_cast<std::size_t>(o.drow + 1) - 1) % height;
    return index(nc, nr);
  }

  bool operator==(const Lattice&) const = default;
};

}  // namespace swarmsearch
