#pragma once

#include "bmspec/hypermatrix.hpp"
#include "bmspec/orthogonal.hpp"
#include "bmspec/polynomial.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bmspec {

// Row k of W is the slice w_k; d_k = w_k^2 entrywise. The scaling hypermatrix D
// has D_{ikk} = W(k,i) and zeros elsewhere.
struct HyperSpectralData {
  Hypermatrix3 Q;
  MatrixR W;

  Hypermatrix3 scaling() const;
  // bm_product(B, B^{T^2}, B^T) with B = bm_product(Q, D, D^T).
  Hypermatrix3 reconstruct() const;
  // d_k = w_k^{*2}
  VectorR slice(std::size_t k) const;
};

Hypermatrix3 scaling_hypermatrix(const MatrixR& w);

// Non-symmetric case: A = bm_product_bg(G, B0, B1, B2) with
// B0 = (Q, D0, D0^T), B1 = (D1, U, D1^{T^2}), B2 = (D2^T, D2^{T^2}, V).
struct GeneralSpectralData {
  Hypermatrix3 Q, U, V;
  std::array<MatrixR, 3> W;

  Hypermatrix3 reconstruct() const;
};

// [U_0 .. U_{K-1}], U_0 = delta, U_{k+1} = bm_product_bg(U_k, Q, Q^{T^2}, Q^T).
std::vector<Hypermatrix3> u_sequence(const Hypermatrix3& q, int k);
// [G_0 .. G_{K-1}], G_{k+1} = bm_product_bg(G_k, Q, U, V).
std::vector<Hypermatrix3> g_sequence(const Hypermatrix3& q, const Hypermatrix3& u, const Hypermatrix3& v,
                                     int k);

// Fibers q_ab[k] = Q_{akb}.
struct Fibers222 {
  VectorR q00, q01, q10, q11;
  static Fibers222 from(const Hypermatrix3& q);
};

Hypermatrix3 assemble222(const Fibers222& fibers, const VectorR& w0, const VectorR& w1);
// The delta-compatibility rows: all weights replaced by their zeroth Hadamard power.
Hypermatrix3 assemble222_delta(const Fibers222& fibers, const VectorR& w0, const VectorR& w1);

struct Charpoly222 {
  double a000 = 0.0;
  double a111 = 0.0;
  MultiPoly poly;  // variables u, v, t

  static std::vector<std::string> variables() { return {"u", "v", "t"}; }
  double evaluate_uvt(double u, double v, double t) const;
  // At u = w00^6, v = w01^6, t = w11^6.
  double evaluate(double w00, double w01, double w11) const;
  // "p(u,v,t) = u·t − v² + c·v − a111·u − a000·t"
  std::string pretty() const;
};

Charpoly222 charpoly222(double a000, double a111);

struct Relations222 {
  double residual = 0.0;  // max |lhs - rhs| over both equalities
  double scale = 0.0;     // max |side|
};

Relations222 vandermonde_relations222(const Hypermatrix3& a, double w00, double w01, double w11);
double vandermonde_relations222_residual(const Hypermatrix3& a, double w00, double w01, double w11);

struct BasisKey {
  std::size_t tag = 0;  // cyclic orbit (or index triple) the monomial belongs to
  Exponents exponents;

  friend bool operator==(const BasisKey&, const BasisKey&) = default;
  friend auto operator<=>(const BasisKey&, const BasisKey&) = default;
};

struct SystemRow {
  std::size_t level = 0;
  std::array<std::size_t, 3> triple{};
  std::size_t tag = 0;
};

struct MonomialSystem {
  std::size_t n = 0;
  std::vector<std::string> variables;
  std::vector<BasisKey> basis;
  std::vector<SystemRow> rows;
  MatrixR coefficients;  // rows x basis
  VectorR rhs;
  std::size_t expected_basis_size = 0;  // closed-form count, 0 when not applicable
  std::vector<std::string> warnings;

  bool underdetermined() const { return rows.size() < basis.size(); }
  // Values of every basis monomial at concrete variable values.
  VectorR evaluate_basis(const std::vector<double>& variable_values) const;
};

// n (n + 2 C(n,2) + 2 C(n,3))
std::size_t basis_count_formula(std::size_t n);

// Variables w_ik (i <= k) with D_{ikk} = D_{kii} = w_ik.
std::vector<std::string> symmetric_scaling_variables(std::size_t n, const std::string& prefix = "w");
// Variable values for a symmetric W (only the upper triangle is read).
std::vector<double> symmetric_scaling_values(const MatrixR& w);
MatrixR symmetric_scaling_matrix(const std::vector<double>& values, std::size_t n);

// One row per (level k < K, cyclic orbit representative). Background entries
// below 1e-12 of the largest are treated as zero.
MonomialSystem spectral_system(const Hypermatrix3& a, const Hypermatrix3& q, int k);
// One row per (level, index triple); variables for D0, D1, D2.
MonomialSystem general_spectral_system(const Hypermatrix3& a, const Hypermatrix3& q, const Hypermatrix3& u,
                                       const Hypermatrix3& v, int k);

// value^3 against products of pure sixth-power values (sixth powers when an
// exponent is odd), relative to max(1, |lhs|, |rhs|). A basis with no pure
// powers at all is checked log-linearly against its exponent matrix.
double monomial_consistency_residual(const MonomialSystem& system, const VectorR& solution);

struct MonomialSolution {
  VectorR values;
  std::string method;              // "cramer" or "constrained-lsq"
  std::vector<double> variables;   // filled by the constrained solve
  double equation_residual = 0.0;  // max |M x - b| / max(1, |b|)
  double consistency_residual = 0.0;
};

// Cramer when square and nonsingular; otherwise least squares constrained to
// monomial values of actual scaling variables (Levenberg-Marquardt from up to
// `starts` initial points; the third onward are fixed-seed jitters).
MonomialSolution solve_monomial_system(const MonomialSystem& system, int starts = 8);

// W (rows are slices) from the sixth roots of the pure-power values,
// nonnegative branch. Only for systems built by spectral_system.
MatrixR recover_scaling(const MonomialSystem& system, const VectorR& values);

// Max relative row residual of `values` against the system.
double equation_residual(const MonomialSystem& system, const VectorR& values);

struct SearchConfig {
  int restarts = 20;
  int budget = 2000;  // objective evaluations per restart
  std::uint64_t seed = 0;
  double tol = 1e-6;
  int jobs = 1;
  int levels = 0;  // 0 means n
  double early_stop = 1e-12;
};

struct SearchReport {
  OrthParams best_params;
  Hypermatrix3 Q;
  double residual = 0.0;
  double equation_residual = 0.0;
  double consistency_residual = 0.0;
  bool decomposable = false;
  std::optional<MatrixR> W;  // rows are slices, recovered when decomposable
  int restarts_run = 0;
  long evaluations = 0;
};

// Multi-start Nelder-Mead over the direct-sum orthogonal family. A "not found"
// verdict does not prove that no decomposition exists.
SearchReport decomposability_search(const Hypermatrix3& a, const SearchConfig& config = {});

// Requires |A - A^T| <= 1e-8 max(1, |A|); throws precondition otherwise.
void require_cyclic_symmetry(const Hypermatrix3& a);

}  // namespace bmspec
