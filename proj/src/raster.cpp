#include "dynmahler/raster.hpp"

#include <cmath>
#include <fstream>

#include "dynmahler/multibrot.hpp"
#include "dynmahler/parallel.hpp"

namespace dynmahler {

void RasterConfig::validate() const {
  if (width < 1 || height < 1) throw InputError("raster: width and height must be >= 1");
  if (!(re_min < re_max) || !(im_min < im_max)) throw InputError("raster: empty window");
  if (max_iter < 1) throw InputError("raster: max_iter must be >= 1");
  if (mode == RasterMode::Multibrot && multibrot_degree < 2) throw InputError("raster: degree must be >= 2");
}

Complex pixel_center(const RasterConfig& cfg, int col, int row) {
  const double dx = (cfg.re_max - cfg.re_min) / cfg.width;
  const double dy = (cfg.im_max - cfg.im_min) / cfg.height;
  return {cfg.re_min + (col + 0.5) * dx, cfg.im_max - (row + 0.5) * dy};
}

std::optional<std::pair<int, int>> pixel_at(const RasterConfig& cfg, Complex z) {
  const double u = (z.real() - cfg.re_min) / (cfg.re_max - cfg.re_min) * cfg.width;
  const double v = (cfg.im_max - z.imag()) / (cfg.im_max - cfg.im_min) * cfg.height;
  const int col = static_cast<int>(std::floor(u));
  const int row = static_cast<int>(std::floor(v));
  if (col < 0 || col >= cfg.width || row < 0 || row >= cfg.height) return std::nullopt;
  return std::make_pair(col, row);
}

Image render(const std::optional<DynMap>& f, const RasterConfig& cfg) {
  cfg.validate();
  if (cfg.mode != RasterMode::Multibrot && !f) throw InputError("raster: Julia modes need a map");
  Image img;
  img.width = cfg.width;
  img.height = cfg.height;
  const std::size_t npix = static_cast<std::size_t>(cfg.width) * static_cast<std::size_t>(cfg.height);
  img.escape.assign(npix, -1);
  img.black.assign(npix, 0);

  parallel_for(static_cast<std::size_t>(cfg.height), cfg.threads, [&](std::size_t r) {
    const int row = static_cast<int>(r);
    for (int col = 0; col < cfg.width; ++col) {
      const Complex p = pixel_center(cfg, col, row);
      int esc = -1;
      if (cfg.mode == RasterMode::Multibrot) {
        const MultibrotMember m = multibrot_member(cfg.multibrot_degree, p, cfg.max_iter);
        if (m.status == Membership::Outside) esc = m.escape_step;
      } else {
        const double R = f->escape_radius();
        Complex z = p;
        for (int n = 0; n <= cfg.max_iter; ++n) {
          if (std::abs(z) > R) {
            esc = n;
            break;
          }
          if (n < cfg.max_iter) z = (*f)(z);
        }
      }
      img.escape[r * static_cast<std::size_t>(cfg.width) + static_cast<std::size_t>(col)] = esc;
    }
  });

  for (std::size_t i = 0; i < npix; ++i) img.black[i] = img.escape[i] < 0 ? 1 : 0;
  if (cfg.mode == RasterMode::JuliaBoundary) {
    std::vector<std::uint8_t> edge(npix, 0);
    auto escapes = [&](int c, int r) {
      if (c < 0 || c >= cfg.width || r < 0 || r >= cfg.height) return false;
      return img.escape[static_cast<std::size_t>(r) * cfg.width + c] >= 0;
    };
    for (int r = 0; r < cfg.height; ++r) {
      for (int c = 0; c < cfg.width; ++c) {
        const std::size_t i = static_cast<std::size_t>(r) * cfg.width + c;
        if (!img.black[i]) continue;
        edge[i] = escapes(c - 1, r) || escapes(c + 1, r) || escapes(c, r - 1) || escapes(c, r + 1);
      }
    }
    img.black = std::move(edge);
  }
  return img;
}

void write_ppm(const Image& img, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path + " for writing");
  os << "P6\n" << img.width << " " << img.height << "\n255\n";
  for (std::uint8_t b : img.black) {
    const char v = b ? 0 : static_cast<char>(255);
    os.put(v).put(v).put(v);
  }
  if (!os) throw Error("write failed: " + path);
}

void write_pgm(const Image& img, const RasterConfig& cfg, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path + " for writing");
  os << "P5\n" << img.width << " " << img.height << "\n255\n";
  for (int e : img.escape) {
    int v = 0;
    if (e >= 0) v = 255 - static_cast<int>(std::lround(200.0 * std::min(1.0, std::log1p(e) / std::log1p(cfg.max_iter))));
    os.put(static_cast<char>(v));
  }
  if (!os) throw Error("write failed: " + path);
}

}  // namespace dynmahler
