#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynmahler/dynamics.hpp"

namespace dynmahler {

enum class RasterMode { FilledJulia, JuliaBoundary, Multibrot };

struct RasterConfig {
  double re_min = -2.0;
  double re_max = 2.0;
  double im_min = -2.0;
  double im_max = 2.0;
  int width = 400;
  int height = 400;
  int max_iter = 200;
  RasterMode mode = RasterMode::FilledJulia;
  int multibrot_degree = 2;
  unsigned threads = 0;

  void validate() const;
};

// Row-major, row 0 at im_max. escape[i] = first escaping iteration, or -1
// for bounded; black[i] is the rendered verdict.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<int> escape;
  std::vector<std::uint8_t> black;

  bool is_black(int col, int row) const { return black[static_cast<std::size_t>(row) * width + col] != 0; }
};

// Pixel centre: re_min + (col + 1/2) dx, im_max - (row + 1/2) dy.
Complex pixel_center(const RasterConfig& cfg, int col, int row);
// Pixel containing z, or nullopt outside the window.
std::optional<std::pair<int, int>> pixel_at(const RasterConfig& cfg, Complex z);

// f is ignored in Multibrot mode.
Image render(const std::optional<DynMap>& f, const RasterConfig& cfg);

// Binary P6: black/white. Binary P5: escape time scaled to 0..255, bounded
// pixels 0.
void write_ppm(const Image& img, const std::string& path);
void write_pgm(const Image& img, const RasterConfig& cfg, const std::string& path);

}  // namespace dynmahler
