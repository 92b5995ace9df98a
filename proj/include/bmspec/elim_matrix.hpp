#pragma once

#include "bmspec/hypermatrix.hpp"
#include "bmspec/polynomial.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace bmspec {

using IndexPair = std::pair<std::size_t, std::size_t>;

// Rows of Q are eigenvectors: A = Q^T diag(lambda^2) Q.
struct MatrixSpectralData {
  MatrixR Q;
  VectorR lambda;

  MatrixR reconstruct() const;
};

// [A^0, ..., A^{K-1}]
std::vector<MatrixR> power_moment_stack(const MatrixR& a, int k);

// For each i <= j solves V(lambda^2) v_ij = ([A^m]_ij)_m. v_ij[k] is the
// candidate product of the i-th and j-th coordinates of eigenvector k.
std::map<IndexPair, VectorR> solve_hadamard_products(const MatrixR& a, const VectorR& lambda);

// max_{i<j} || v_ij^2 - v_ii * v_jj ||_inf
double id_residual(const MatrixR& a, const VectorR& lambda);

// Variables a00, a01, a11, l0, l1 in this order.
std::vector<std::string> id_generator_variables();
// Numerators of v_01^2 - v_00 * v_11 after clearing det V(lambda^2). n must be 2.
std::vector<MultiPoly> id_generators_symbolic(std::size_t n = 2);

struct MuTable {
  std::size_t n = 0;
  std::map<IndexPair, double> mu;  // i <= j

  double operator()(std::size_t i, std::size_t j) const;
};

struct IqSolution {
  MuTable mu;
  // Largest coefficient in the cross-product columns of the assembled system.
  // These vanish for orthonormal Q, which is why the cross products are taken
  // from the squared system.
  double cross_coupling = 0.0;
  // Least-squares residual of the diagonal block; nonzero when Q does not diagonalize A.
  double diagonal_residual = 0.0;
};

IqSolution iq_solve(const MatrixR& a, const MatrixR& q);

struct IqConsistency {
  double residual = 0.0;
  bool consistent = false;
  VectorR lambda;  // filled when consistent
};

IqConsistency iq_consistency(const MuTable& mu, double tol = 1e-8);

// max_{i != j} |[Q A Q^T]_ij| + ||Q^T Q - I||_inf
double offdiag_residual(const MatrixR& a, const MatrixR& q);

// |<u,v> - sum_t (q_t . u)(q_t . v)| over the rows q_t of Q.
double matrix_resolution_residual(const MatrixR& q, const VectorR& u, const VectorR& v);

struct UvSolution {
  MatrixR mu;  // mu(i,j) = lambda_i gamma_j
  double consistency_residual = 0.0;
  double cross_coupling = 0.0;
  double diagonal_residual = 0.0;
};

// A = U^T diag(lambda * gamma) V with U V^T = I.
UvSolution uv_solve(const MatrixR& a, const MatrixR& u, const MatrixR& v);

// Consistency tolerance default: 1e-8 * max(1, ||A||_inf^2).
double default_consistency_tol(const MatrixR& a);

}  // namespace bmspec
