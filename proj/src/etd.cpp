#include "besov_ns/etd.hpp"

#include <map>

namespace besov_ns {

EtdTable::EtdTable(const Grid& grid, double h, double nu_bar, double mu_bar) : h_(h) {
  std::map<int, int> slot;
  key_.resize(grid.num_points());
  for (Eigen::Index i = 0; i < grid.num_points(); ++i) {
    const int m2 = grid.mode_norm2()(i);
    auto [it, fresh] = slot.emplace(m2, static_cast<int>(pairs_.size()));
    key_[i] = it->second;
    if (!fresh) continue;
    const double r = grid.xi_norm()(i);
    Eigen::Matrix2d M;
    M << 0, -r, r, -nu_bar * r * r;
    Pair p;
    Eigen::Matrix2d e;
    phi_functions<double, 2>(h * M, e, p.P1, p.P2);
    p.E = ghat(r, h, nu_bar);
    p.P1 *= h;
    p.P2 *= h;
    pairs_.push_back(p);

    Eigen::Matrix<double, 1, 1> s, es, s1, s2;
    s(0, 0) = -h * mu_bar * r * r;
    phi_functions<double, 1>(s, es, s1, s2);
    heats_.push_back({std::exp(s(0, 0)), h * s1(0, 0), h * s2(0, 0)});
  }
}

}  // namespace besov_ns
