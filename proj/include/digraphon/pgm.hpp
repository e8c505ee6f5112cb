#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "digraphon/digraphon.hpp"

namespace digraphon {

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major

  std::uint8_t& at(int row, int col) { return pixels[static_cast<std::size_t>(row) * width + col]; }
  std::uint8_t at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
};

// Value 0 renders white (255), value 1 black (0), linear in between; one
// scale x scale pixel block per entry.
GrayImage render_matrix(const std::vector<double>& values, int rows, int cols, int scale = 1);

GrayImage render_digraph(const Digraph& g, int scale = 1);

// The four weight channels evaluated on a resolution x resolution grid and
// laid out side by side (00, 01, 10, 11) with a one-pixel white gutter.
GrayImage render_digraphon_channels(const StepDigraphon& d, int resolution, int scale = 1);

// Binary PGM (P5).
void save_pgm(const GrayImage& img, const std::string& path);

}  // namespace digraphon
