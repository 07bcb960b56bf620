#pragma once

#include <Eigen/Dense>

#include <complex>

namespace besov_ns::fft {

// Unnormalized in-place n-D transforms on a cube of `size`^`dim` points stored
// row-major (axis 0 outermost). `forward` uses e^{-i}, `backward` e^{+i}.
// `size` may be any positive integer (padded product grids use 3N/2).
void forward(Eigen::Ref<Eigen::ArrayXcd> data, int dim, int size);
void backward(Eigen::Ref<Eigen::ArrayXcd> data, int dim, int size);

}  // namespace besov_ns::fft
