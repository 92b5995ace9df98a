#include "bmspec/instances.hpp"

#include "bmspec/error.hpp"

#include <algorithm>

namespace bmspec {

OrthParams random_orth_params(std::size_t n, std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> unif(-radius, radius);
  std::vector<double> r(orth_param_count(n));
  for (double& v : r) v = unif(rng);
  return OrthParams::from_flat(r, n);
}

Hypermatrix3 random_cyclic_symmetric(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Hypermatrix3 a(n);
  for (const auto& rep : cyclic_orbit_representatives(n)) {
    const double v = unif(rng);
    for (const auto& t : cyclic_rotations(rep)) a(t[0], t[1], t[2]) = v;
  }
  return a;
}

Hypermatrix3 random_hypermatrix(std::size_t n, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> unif(lo, hi);
  Hypermatrix3 a(n);
  for (double& v : a.data()) v = unif(rng);
  return a;
}

PlantedHyper planted_hyper(std::size_t n, std::mt19937_64& rng, double radius, double wlo, double whi) {
  std::uniform_real_distribution<double> unif(wlo, whi);
  PlantedHyper p;
  p.params = random_orth_params(n, rng, radius);
  p.data.Q = orth_direct_sum(p.params, n);
  p.data.W = MatrixR::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t b = 0; b + 1 < n; b += 2) {
    std::array<double, 3> w{unif(rng), unif(rng), unif(rng)};
    std::sort(w.begin(), w.end());
    const auto i = static_cast<Eigen::Index>(b);
    p.data.W(i, i) = w[0];
    p.data.W(i, i + 1) = p.data.W(i + 1, i) = w[1];
    p.data.W(i + 1, i + 1) = w[2];
  }
  if (n % 2 == 1) p.data.W(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n - 1)) = unif(rng);
  p.A = p.data.reconstruct();
  return p;
}

PlantedGeneral planted_general(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.5, 1.5);
  PlantedGeneral p;
  p.data.Q = orth_direct_sum(random_orth_params(n, rng), n);
  p.data.U = cyclic_transpose(orth_direct_sum(random_orth_params(n, rng), n), 2);
  p.data.V = complete_orthogonal_triple(p.data.Q, p.data.U);
  for (auto& w : p.data.W) {
    std::vector<double> vals(n * (n + 1) / 2);
    for (double& v : vals) v = unif(rng);
    w = symmetric_scaling_matrix(vals, n);
  }
  p.A = p.data.reconstruct();
  return p;
}

MatrixR random_orthogonal_matrix(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  MatrixR m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = g(rng);
  Eigen::HouseholderQR<MatrixR> qr(m);
  return qr.householderQ() * MatrixR::Identity(m.rows(), m.cols());
}

MatrixSpectralData random_matrix_spectral(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  MatrixSpectralData d;
  d.Q = random_orthogonal_matrix(n, rng);
  d.lambda.resize(static_cast<Eigen::Index>(n));
  // lambda^2 in [0.5, 0.5 + n], consecutive gaps at least 0.5.
  double l2 = 0.5;
  for (std::size_t k = 0; k < n; ++k) {
    d.lambda[static_cast<Eigen::Index>(k)] = std::sqrt(l2);
    l2 += 0.5 + unif(rng);
  }
  return d;
}

PlantedBiorthogonal planted_biorthogonal(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-0.4, 0.4);
  PlantedBiorthogonal p;
  MatrixR u = MatrixR::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < u.rows(); ++i)
    for (Eigen::Index j = 0; j < u.cols(); ++j) u(i, j) += unif(rng);
  p.U = u;
  p.V = u.inverse().transpose();
  const MatrixSpectralData s = random_matrix_spectral(n, rng);
  p.lambda = s.lambda;
  p.A = p.U.transpose() * p.lambda.cwiseAbs2().asDiagonal() * p.V;
  return p;
}

}  // namespace bmspec
