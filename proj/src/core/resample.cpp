#include "core/resample.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/error.hpp"

namespace codeocr {

namespace {

struct Kernel {
  int start = 0;
  std::vector<double> weights;
};

std::vector<Kernel> build_kernels(int src, int dst) {
  const double scale = static_cast<double>(src) / dst;
  const double support = std::max(1.0, scale);  // triangle radius
  std::vector<Kernel> kernels(static_cast<std::size_t>(dst));
  for (int i = 0; i < dst; ++i) {
    const double center = (i + 0.5) * scale;
    int lo = static_cast<int>(std::floor(center - support));
    int hi = static_cast<int>(std::ceil(center + support));
    lo = std::max(lo, 0);
    hi = std::min(hi, src);
    Kernel& k = kernels[static_cast<std::size_t>(i)];
    k.start = lo;
    k.weights.resize(static_cast<std::size_t>(hi - lo));
    double sum = 0.0;
    for (int j = lo; j < hi; ++j) {
      const double t = std::fabs((j + 0.5 - center) / support);
      const double w = t < 1.0 ? 1.0 - t : 0.0;
      k.weights[static_cast<std::size_t>(j - lo)] = w;
      sum += w;
    }
    require(sum > 0.0, ErrorCode::Internal, "resample: empty kernel");
    for (double& w : k.weights) w /= sum;
  }
  return kernels;
}

}  // namespace

Image downsample_bilinear(const Image& src, int target_width, int target_height) {
  require(src.width > 0 && src.height > 0, ErrorCode::Precondition,
          "resample: empty source image");
  require(src.pixels.size() == static_cast<std::size_t>(src.width) * src.height * 3,
          ErrorCode::Precondition, "resample: pixel buffer size mismatch");
  require(target_width >= 1 && target_height >= 1, ErrorCode::Precondition,
          "resample: target dimensions must be positive");
  require(target_width <= src.width && target_height <= src.height,
          ErrorCode::Precondition, "resample: upscaling is not supported");

  const std::vector<Kernel> kx = build_kernels(src.width, target_width);
  const std::vector<Kernel> ky = build_kernels(src.height, target_height);

  // Horizontal pass keeps full precision; quantization happens once at the end.
  std::vector<double> mid(static_cast<std::size_t>(target_width) * src.height * 3);
  for (int y = 0; y < src.height; ++y) {
    const std::uint8_t* row =
        src.pixels.data() + static_cast<std::size_t>(y) * src.width * 3;
    double* out_row = mid.data() + static_cast<std::size_t>(y) * target_width * 3;
    for (int x = 0; x < target_width; ++x) {
      const Kernel& k = kx[static_cast<std::size_t>(x)];
      double acc[3] = {0.0, 0.0, 0.0};
      for (std::size_t j = 0; j < k.weights.size(); ++j) {
        const std::uint8_t* p = row + (static_cast<std::size_t>(k.start) + j) * 3;
        const double w = k.weights[j];
        acc[0] += w * p[0];
        acc[1] += w * p[1];
        acc[2] += w * p[2];
      }
      out_row[x * 3] = acc[0];
      out_row[x * 3 + 1] = acc[1];
      out_row[x * 3 + 2] = acc[2];
    }
  }

  Image out;
  out.width = target_width;
  out.height = target_height;
  out.pixels.resize(static_cast<std::size_t>(target_width) * target_height * 3);
  for (int y = 0; y < target_height; ++y) {
    const Kernel& k = ky[static_cast<std::size_t>(y)];
    std::uint8_t* out_row =
        out.pixels.data() + static_cast<std::size_t>(y) * target_width * 3;
    for (int x = 0; x < target_width * 3; ++x) {
      double acc = 0.0;
      for (std::size_t j = 0; j < k.weights.size(); ++j) {
        acc += k.weights[j] *
               mid[(static_cast<std::size_t>(k.start) + j) * target_width * 3 + x];
      }
      double v = std::floor(acc + 0.5);
      if (v < 0.0) v = 0.0;
      if (v > 255.0) v = 255.0;
      out_row[x] = static_cast<std::uint8_t>(v);
    }
  }
  return out;
}

}  // namespace codeocr
