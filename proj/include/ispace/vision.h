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

// Two-branch edge detector. One branch convolves the image with a
// Laplacian-of-Gaussian kernel and takes the zero crossings of the response
// as candidate edges; the other convolves with the gradient of a Gaussian to
// estimate local contrast. Candidates whose contrast falls below the
// threshold zeta are discarded.

#ifndef ISPACE_VISION_H_
#define ISPACE_VISION_H_

#include <filesystem>

#include "ispace/grid.h"
#include "ispace/workspace.h"

namespace ispace::vision {

using RealGrid = Grid<double>;

// Square filter kernel with side 2 * radius + 1, indexed by offset.
class Kernel {
 public:
  Kernel(int radius, Grid<double> weights);

  int radius() const { return radius_; }
  int side() const { return 2 * radius_ + 1; }
  double at(int dx, int dy) const { return weights_(dx + radius_, dy + radius_); }
  const Grid<double>& weights() const { return weights_; }
  double Sum() const;

 private:
  int radius_;
  Grid<double> weights_;
};

struct VisionParams {
  double sigma = 1.0;
  // 0 selects ceil(3 * sigma).
  int radius = 0;
  double zeta = 20.0;

  int EffectiveRadius() const;
  // Throws std::invalid_argument naming the offending field.
  void Validate() const;
};

// Closed forms, unnormalized.
double GaussianValue(double sigma, double x, double y);
double LogValue(double sigma, double x, double y);

// Gaussian sampled at integer offsets, normalized to unit sum.
Kernel MakeGaussian(double sigma, int radius);
// LoG sampled at integer offsets, then mean-subtracted to zero sum.
Kernel MakeLog(double sigma, int radius);

struct GogKernels {
  Kernel x;
  Kernel y;
};
// Derivative-of-Gaussian pair. Each kernel sums to zero and is scaled to
// unit first moment, so convolving a ramp of slope s returns s.
GogKernels MakeGog(double sigma, int radius);

// Same-size convolution out(p) = sum_q k(q) * in(p - q), replicate-edge
// padding. Throws std::invalid_argument if the kernel side exceeds either
// image dimension.
RealGrid Convolve(const RealGrid& image, const Kernel& kernel);
RealGrid Convolve(const GridImage& image, const Kernel& kernel);
RealGrid ToReal(const GridImage& image);

EdgeMap ZeroCross(const RealGrid& log_response);

EdgeMap ContrastFilter(const EdgeMap& candidates, const RealGrid& gog_x,
                       const RealGrid& gog_y, double zeta);

EdgeMap DetectEdges(const GridImage& image, const VisionParams& params);

// Debug dump, values affinely rescaled to [0, 255].
void SaveRealGridPgm(const std::filesystem::path& path, const RealGrid& grid);

}  // namespace ispace::vision

#endif  // ISPACE_VISION_H_
