#pragma once

#include "bmspec/elim_hyper.hpp"
#include "bmspec/elim_matrix.hpp"
#include "bmspec/hypermatrix.hpp"

#include <random>
#include <vector>

namespace bmspec {

struct BoundReport {
  double lower = 0.0;
  double value = 0.0;
  double upper = 0.0;
  bool admissible = false;
  bool holds = false;  // meaningful only when admissible
  std::vector<double> terms;  // per-k weighted terms
  std::vector<VectorR> witness;
};

// Sandwich with min/max of lambda^2; value = x^T A y for the reconstructed A.
BoundReport matrix_bound_check(const MatrixSpectralData& data, const VectorR& x, const VectorR& y,
                               double tol = 1e-10);

// Slices must satisfy 0 <= d_{j0}(i) <= d_{j1}(i) for j0 < j1, else precondition error.
BoundReport hyper_bound_check(const HyperSpectralData& data, const VectorR& x, const VectorR& y, const VectorR& z,
                              double tol = 1e-10);

// Reorders the rows of W so that slices are sorted by their sum; returns false
// if the result is still not entrywise monotone.
bool sort_slices(HyperSpectralData& data);

struct AdmissibleSearch {
  std::vector<BoundReport> reports;
  long trials = 0;
};

// Rejection sampling over Gaussian vectors until `wanted` admissible witnesses or `budget` trials.
AdmissibleSearch sample_matrix_bounds(const MatrixSpectralData& data, std::size_t wanted, long budget,
                                      std::mt19937_64& rng, double tol = 1e-10);
AdmissibleSearch sample_hyper_bounds(const HyperSpectralData& data, std::size_t wanted, long budget,
                                     std::mt19937_64& rng, double tol = 1e-10);

struct SymmetrizedTriple {
  Hypermatrix3 S0, S1, S2;
  double residual0 = 0.0, residual1 = 0.0, residual2 = 0.0;  // cyclic-symmetry residuals
};

SymmetrizedTriple symmetrize3(const Hypermatrix3& a);

struct AlphaFit {
  VectorR alpha;
  double residual = 0.0;  // Frobenius norm of A - sum_k alpha_k T^(k)
  bool degenerate = false;
};

AlphaFit fit_alphas(const Hypermatrix3& a, const Hypermatrix3& qt, const Hypermatrix3& et, const Hypermatrix3& ft);
// Fit over an explicit set of rank-one terms.
AlphaFit fit_alphas(const Hypermatrix3& a, const std::vector<Hypermatrix3>& terms);

struct Svd3Report {
  SymmetrizedTriple sym;
  std::array<SearchReport, 3> searches;
  Hypermatrix3 Qt, Et, Ft;
  AlphaFit fit;
  bool factors_found = false;
};

// Symmetrize, decompose each product with decomposability_search, map the
// factors back to (Q~, E~, F~) and fit the alphas.
Svd3Report symmetrization_svd(const Hypermatrix3& a, const SearchConfig& config);

}  // namespace bmspec
