#include "digraphon/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "digraphon/io.hpp"

namespace digraphon {

namespace {

std::uint8_t shade(double v) {
  v = std::clamp(v, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::lround((1.0 - v) * 255.0));
}

}  // namespace

GrayImage render_matrix(const std::vector<double>& values, int rows, int cols, int scale) {
  if (scale < 1) throw std::invalid_argument("render_matrix: scale must be >= 1");
  if (values.size() != static_cast<std::size_t>(rows) * cols)
    throw std::invalid_argument("render_matrix: value count must equal rows*cols");
  GrayImage img;
  img.width = cols * scale;
  img.height = rows * scale;
  img.pixels.assign(static_cast<std::size_t>(img.width) * img.height, 255);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      std::uint8_t g = shade(values[static_cast<std::size_t>(r) * cols + c]);
      for (int dr = 0; dr < scale; ++dr)
        for (int dc = 0; dc < scale; ++dc) img.at(r * scale + dr, c * scale + dc) = g;
    }
  }
  return img;
}

GrayImage render_digraph(const Digraph& g, int scale) {
  std::vector<double> values(g.adj.begin(), g.adj.end());
  return render_matrix(values, g.n, g.n, scale);
}

GrayImage render_digraphon_channels(const StepDigraphon& d, int resolution, int scale) {
  if (resolution < 1) throw std::invalid_argument("render_digraphon_channels: resolution must be >= 1");
  if (scale < 1) throw std::invalid_argument("render_digraphon_channels: scale must be >= 1");
  const int n = resolution;
  std::vector<int> cls(n);
  for (int t = 0; t < n; ++t) cls[t] = d.class_of((t + 0.5) / n);

  const int panel = n * scale;
  GrayImage img;
  img.width = 4 * panel + 3;  // one-pixel gutters
  img.height = panel;
  img.pixels.assign(static_cast<std::size_t>(img.width) * img.height, 255);
  for (int ch = 0; ch < 4; ++ch) {
    const int x0 = ch * (panel + 1);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        std::uint8_t g = shade(d.cell(cls[r], cls[c])[ch]);
        for (int dr = 0; dr < scale; ++dr)
          for (int dc = 0; dc < scale; ++dc)
            img.at(r * scale + dr, x0 + c * scale + dc) = g;
      }
    }
  }
  return img;
}

void save_pgm(const GrayImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
  if (!out) throw IoError("cannot write " + path);
}

}  // namespace digraphon
