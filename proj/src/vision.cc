// Copyright 2026 The ispace-nav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ispace/vision.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ispace::vision {

Kernel::Kernel(int radius, Grid<double> weights)
    : radius_(radius), weights_(std::move(weights)) {
  if (radius < 0 || !weights_.SameShape(side(), side())) {
    throw std::invalid_argument("kernel weights must be (2r+1)^2");
  }
  for (double w : weights_.values()) {
    if (!std::isfinite(w)) throw std::invalid_argument("non-finite kernel weight");
  }
}

double Kernel::Sum() const {
  return std::accumulate(weights_.values().begin(), weights_.values().end(), 0.0);
}

int VisionParams::EffectiveRadius() const {
  return radius > 0 ? radius : static_cast<int>(std::ceil(3.0 * sigma));
}

void VisionParams::Validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("vision.sigma must be > 0");
  }
  if (EffectiveRadius() < static_cast<int>(std::ceil(3.0 * sigma))) {
    throw std::invalid_argument("vision.radius must be >= ceil(3*sigma)");
  }
  if (!(zeta >= 0.0)) throw std::invalid_argument("vision.zeta must be >= 0");
}

double GaussianValue(double sigma, double x, double y) {
  const double s2 = sigma * sigma;
  return std::exp(-(x * x + y * y) / (2.0 * s2)) / (2.0 * kPi * s2);
}

double LogValue(double sigma, double x, double y) {
  const double s2 = sigma * sigma;
  const double r2 = x * x + y * y;
  return (r2 - 2.0 * s2) / (2.0 * kPi * s2 * s2 * s2) *
         std::exp(-r2 / (2.0 * s2));
}

namespace {

void CheckKernelArgs(double sigma, int radius) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
  if (radius < 1) throw std::invalid_argument("kernel radius must be >= 1");
}

template <typename F>
Grid<double> Sample(int radius, F f) {
  const int side = 2 * radius + 1;
  Grid<double> w(side, side, 0.0);
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      w(dx + radius, dy + radius) = f(dx, dy);
    }
  }
  return w;
}

}  // namespace

Kernel MakeGaussian(double sigma, int radius) {
  CheckKernelArgs(sigma, radius);
  Grid<double> w = Sample(radius, [&](int dx, int dy) {
    return GaussianValue(sigma, dx, dy);
  });
  const double sum = std::accumulate(w.values().begin(), w.values().end(), 0.0);
  for (double& v : w.values()) v /= sum;
  return Kernel(radius, std::move(w));
}

Kernel MakeLog(double sigma, int radius) {
  CheckKernelArgs(sigma, radius);
  Grid<double> w = Sample(radius, [&](int dx, int dy) {
    return LogValue(sigma, dx, dy);
  });
  const double mean = std::accumulate(w.values().begin(), w.values().end(), 0.0) /
                      static_cast<double>(w.size());
  for (double& v : w.values()) v -= mean;
  return Kernel(radius, std::move(w));
}

GogKernels MakeGog(double sigma, int radius) {
  CheckKernelArgs(sigma, radius);
  const double s2 = sigma * sigma;
  // dG/dx, antisymmetric in x by construction.
  Grid<double> wx = Sample(radius, [&](int dx, int dy) {
    return -dx / s2 * GaussianValue(sigma, dx, dy);
  });
  // Convolution with k maps the ramp I = s * x to -s * sum k(q) q_x.
  double moment = 0.0;
  for (int dy = -radius; dy <= radius; ++dy) {
    for (int dx = -radius; dx <= radius; ++dx) {
      moment += wx(dx + radius, dy + radius) * dx;
    }
  }
  for (double& v : wx.values()) v /= -moment;
  Grid<double> wy(wx.width(), wx.height(), 0.0);
  for (int j = 0; j < wx.height(); ++j) {
    for (int i = 0; i < wx.width(); ++i) wy(j, i) = wx(i, j);
  }
  return {Kernel(radius, std::move(wx)), Kernel(radius, std::move(wy))};
}

RealGrid ToReal(const GridImage& image) {
  RealGrid out(image.width(), image.height(), 0.0);
  std::transform(image.values().begin(), image.values().end(),
                 out.values().begin(),
                 [](std::uint8_t v) { return static_cast<double>(v); });
  return out;
}

RealGrid Convolve(const RealGrid& image, const Kernel& kernel) {
  const int w = image.width();
  const int h = image.height();
  if (kernel.side() > w || kernel.side() > h) {
    throw std::invalid_argument(
        "kernel side " + std::to_string(kernel.side()) +
        " larger than image " + std::to_string(w) + "x" + std::to_string(h));
  }
  const int r = kernel.radius();
  RealGrid out(w, h, 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int dy = -r; dy <= r; ++dy) {
        const int sy = std::clamp(y - dy, 0, h - 1);
        for (int dx = -r; dx <= r; ++dx) {
          const int sx = std::clamp(x - dx, 0, w - 1);
          acc += kernel.at(dx, dy) * image(sx, sy);
        }
      }
      out(x, y) = acc;
    }
  }
  return out;
}

RealGrid Convolve(const GridImage& image, const Kernel& kernel) {
  return Convolve(ToReal(image), kernel);
}

EdgeMap ZeroCross(const RealGrid& response) {
  const int w = response.width();
  const int h = response.height();
  EdgeMap edges(w, h, 0);
  constexpr int kDx[4] = {1, -1, 0, 0};
  constexpr int kDy[4] = {0, 0, 1, -1};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double v = response(x, y);
      bool mark = false;
      for (int k = 0; k < 4 && !mark; ++k) {
        const int nx = x + kDx[k];
        const int ny = y + kDy[k];
        if (!response.Contains(nx, ny)) continue;
        const double n = response(nx, ny);
        if (v == 0.0) {
          mark = n != 0.0;
        } else if ((v < 0.0) != (n < 0.0) && n != 0.0) {
          mark = std::abs(v) <= std::abs(n);
        }
      }
      edges(x, y) = mark ? 1 : 0;
    }
  }
  return edges;
}

EdgeMap ContrastFilter(const EdgeMap& candidates, const RealGrid& gog_x,
                       const RealGrid& gog_y, double zeta) {
  if (!candidates.SameShape(gog_x) || !candidates.SameShape(gog_y)) {
    throw std::invalid_argument("contrast filter: dimension mismatch");
  }
  EdgeMap out(candidates.width(), candidates.height(), 0);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates.values()[i] == 0) continue;
    const double magnitude = std::hypot(gog_x.values()[i], gog_y.values()[i]);
    out.values()[i] = magnitude >= zeta ? 1 : 0;
  }
  return out;
}

EdgeMap DetectEdges(const GridImage& image, const VisionParams& params) {
  params.Validate();
  const int radius = params.EffectiveRadius();
  const RealGrid input = ToReal(image);
  const RealGrid log_response = Convolve(input, MakeLog(params.sigma, radius));
  const GogKernels gog = MakeGog(params.sigma, radius);
  return ContrastFilter(ZeroCross(log_response), Convolve(input, gog.x),
                        Convolve(input, gog.y), params.zeta);
}

void SaveRealGridPgm(const std::filesystem::path& path, const RealGrid& grid) {
  const auto [lo, hi] = std::minmax_element(grid.values().begin(), grid.values().end());
  const double span = *hi - *lo;
  Grid<std::uint8_t> out(grid.width(), grid.height(), 0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = span > 0.0 ? (grid.values()[i] - *lo) / span : 0.0;
    out.values()[i] = static_cast<std::uint8_t>(std::lround(255.0 * t));
  }
  SavePgm(path, out);
}

}  // namespace ispace::vision
