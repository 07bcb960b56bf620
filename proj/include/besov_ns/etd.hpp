#pragma once

#include "besov_ns/grid.hpp"
#include "besov_ns/green_propagator.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <memory>
#include <vector>

namespace besov_ns {

/// exp(A), phi1(A) = A^{-1}(e^A - I) and phi2(A) = A^{-2}(e^A - I - A) for a
/// small square matrix, read off the exponential of the augmented block
/// matrix [[A, I, 0], [0, 0, I], [0, 0, 0]].
template <typename Scalar, int K>
void phi_functions(const Eigen::Matrix<Scalar, K, K>& A, Eigen::Matrix<Scalar, K, K>& e,
                   Eigen::Matrix<Scalar, K, K>& phi1, Eigen::Matrix<Scalar, K, K>& phi2) {
  using Big = Eigen::Matrix<Scalar, 3 * K, 3 * K>;
  Big aug = Big::Zero();
  aug.template block<K, K>(0, 0) = A;
  aug.template block<K, K>(0, K).setIdentity();
  aug.template block<K, K>(K, 2 * K).setIdentity();
  const Big ex = aug.exp();
  e = ex.template block<K, K>(0, 0);
  phi1 = ex.template block<K, K>(0, K);
  phi2 = ex.template block<K, K>(0, 2 * K);
}

/// Per-frequency ETDRK2 coefficients for one step size h:
///   coupled (a, d) block with M = [[0, -r], [r, -nu r^2]],
///   scalar heat block with rate -mu r^2.
/// E is exp(hM) (the closed-form Green matrix), P1 = h phi1(hM), P2 = h phi2(hM).
class EtdTable {
 public:
  struct Pair {
    Eigen::Matrix2d E, P1, P2;
  };
  struct Heat {
    double E, P1, P2;
  };

  EtdTable(const Grid& grid, double h, double nu_bar, double mu_bar);

  double h() const { return h_; }
  const Pair& pair(Eigen::Index flat) const { return pairs_[key_[flat]]; }
  const Heat& heat(Eigen::Index flat) const { return heats_[key_[flat]]; }

 private:
  double h_;
  std::vector<int> key_;
  std::vector<Pair> pairs_;
  std::vector<Heat> heats_;
};

}  // namespace besov_ns
