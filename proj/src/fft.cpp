#include "besov_ns/fft.hpp"

#include <unsupported/Eigen/FFT>

#include <stdexcept>
#include <vector>

namespace besov_ns::fft {

namespace {

void transform_axes(Eigen::Ref<Eigen::ArrayXcd> data, int dim, int size, bool inverse) {
  Eigen::Index total = 1;
  for (int a = 0; a < dim; ++a) total *= size;
  if (data.size() != total) throw std::invalid_argument("fft: buffer size does not match grid");

  thread_local Eigen::FFT<double> engine;
  engine.SetFlag(Eigen::FFT<double>::Unscaled);

  std::vector<std::complex<double>> line(size), out(size);
  for (int axis = 0; axis < dim; ++axis) {
    Eigen::Index stride = 1;
    for (int a = axis + 1; a < dim; ++a) stride *= size;
    const Eigen::Index block = stride * size;
    for (Eigen::Index outer = 0; outer < total; outer += block) {
      for (Eigen::Index inner = 0; inner < stride; ++inner) {
        const Eigen::Index base = outer + inner;
        for (int k = 0; k < size; ++k) line[k] = data(base + k * stride);
        if (inverse)
          engine.inv(out, line);
        else
          engine.fwd(out, line);
        for (int k = 0; k < size; ++k) data(base + k * stride) = out[k];
      }
    }
  }
}

}  // namespace

void forward(Eigen::Ref<Eigen::ArrayXcd> data, int dim, int size) {
  transform_axes(data, dim, size, false);
}

void backward(Eigen::Ref<Eigen::ArrayXcd> data, int dim, int size) {
  transform_axes(data, dim, size, true);
}

}  // namespace besov_ns::fft
