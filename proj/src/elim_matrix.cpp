#include "bmspec/elim_matrix.hpp"

#include "bmspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bmspec {

namespace {

constexpr double kOrthonormalTol = 1e-8;

std::vector<IndexPair> upper_pairs(std::size_t n) {
  std::vector<IndexPair> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) out.emplace_back(i, j);
  return out;
}

void require_square(const MatrixR& a, const char* name) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw Error(ErrorKind::InvalidDimension, std::string(name) + " must be square and non-empty");
}

// Least squares through the normal equations, solved by Cramer.
VectorR normal_solve(const MatrixR& m, const VectorR& b, const char* what) {
  try {
    return cramer_solve(m.transpose() * m, m.transpose() * b);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularSystem) throw;
    throw Error(ErrorKind::DegeneratePattern, std::string(what) + ": coefficient matrix is singular");
  }
}

double sqrt_signed(double v) { return v < 0 ? -std::sqrt(-v) : std::sqrt(v); }

}  // namespace

MatrixR MatrixSpectralData::reconstruct() const {
  if (Q.rows() != lambda.size()) throw Error(ErrorKind::InvalidDimension, "Q/lambda size mismatch");
  return Q.transpose() * lambda.cwiseAbs2().asDiagonal() * Q;
}

std::vector<MatrixR> power_moment_stack(const MatrixR& a, int k) {
  require_square(a, "A");
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "K must be >= 1");
  std::vector<MatrixR> out;
  MatrixR p = MatrixR::Identity(a.rows(), a.cols());
  for (int m = 0; m < k; ++m) {
    out.push_back(p);
    p = p * a;
  }
  return out;
}

std::map<IndexPair, VectorR> solve_hadamard_products(const MatrixR& a, const VectorR& lambda) {
  require_square(a, "A");
  const auto n = static_cast<std::size_t>(a.rows());
  if (static_cast<std::size_t>(lambda.size()) != n)
    throw Error(ErrorKind::InvalidDimension, "lambda length does not match A");
  const MatrixR v = vandermonde(lambda.cwiseAbs2());
  const auto powers = power_moment_stack(a, static_cast<int>(n));
  std::map<IndexPair, VectorR> out;
  for (const auto& [i, j] : upper_pairs(n)) {
    VectorR rhs(n);
    for (std::size_t m = 0; m < n; ++m) rhs[m] = powers[m](i, j);
    out[{i, j}] = cramer_solve(v, rhs);
  }
  return out;
}

double id_residual(const MatrixR& a, const VectorR& lambda) {
  const auto v = solve_hadamard_products(a, lambda);
  const auto n = static_cast<std::size_t>(a.rows());
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const VectorR d = v.at({i, j}).cwiseAbs2() - v.at({i, i}).cwiseProduct(v.at({j, j}));
      r = std::max(r, d.cwiseAbs().maxCoeff());
    }
  return r;
}

std::vector<std::string> id_generator_variables() { return {"a00", "a01", "a11", "l0", "l1"}; }

std::vector<MultiPoly> id_generators_symbolic(std::size_t n) {
  if (n != 2) throw Error(ErrorKind::Unsupported, "symbolic generators are implemented for n = 2 only");
  constexpr std::size_t arity = 5;
  const MultiPoly a00 = MultiPoly::variable(arity, 0);
  const MultiPoly a01 = MultiPoly::variable(arity, 1);
  const MultiPoly a11 = MultiPoly::variable(arity, 2);
  const MultiPoly l0 = MultiPoly::variable(arity, 3);
  const MultiPoly l1 = MultiPoly::variable(arity, 4);
  const MultiPoly one = MultiPoly::constant(arity, Rational(1));
  const MultiPoly zero(arity);
  const PolyMatrix v = vandermonde(std::vector<MultiPoly>{l0 * l0, l1 * l1});
  // Right-hand sides ([A^0]_ij, [A^1]_ij).
  const auto v00 = cramer_solve(v, {one, a00});
  const auto v01 = cramer_solve(v, {zero, a01});
  const auto v11 = cramer_solve(v, {one, a11});
  // All three share the denominator det V, so clearing it leaves numerators.
  std::vector<MultiPoly> gens;
  for (std::size_t k = 0; k < 2; ++k)
    gens.push_back(v01[k].numerator * v01[k].numerator - v00[k].numerator * v11[k].numerator);
  return gens;
}

double MuTable::operator()(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  auto it = mu.find({i, j});
  if (it == mu.end()) throw Error(ErrorKind::Index, "mu index out of range");
  return it->second;
}

IqSolution iq_solve(const MatrixR& a, const MatrixR& q) {
  require_square(a, "A");
  require_square(q, "Q");
  const auto n = static_cast<std::size_t>(a.rows());
  if (static_cast<std::size_t>(q.rows()) != n) throw Error(ErrorKind::InvalidDimension, "A/Q size mismatch");
  if ((q * q.transpose() - MatrixR::Identity(n, n)).cwiseAbs().maxCoeff() > kOrthonormalTol)
    throw Error(ErrorKind::Precondition, "Q rows are not orthonormal");
  // Work in the frame E = Q^T where a_ij = sum_k lambda_k^2 E_ik E_jk.
  const MatrixR e = q.transpose();
  const auto pairs = upper_pairs(n);
  const auto np = pairs.size();

  MatrixR m(np, np);
  VectorR rhs(np);
  for (std::size_t r = 0; r < np; ++r) {
    const auto [i, j] = pairs[r];
    rhs[r] = a(i, j);
    for (std::size_t c = 0; c < np; ++c) {
      const auto [s, t] = pairs[c];
      double g = 0.0;
      for (std::size_t k = 0; k < n; ++k) g += e(k, s) * e(k, t);
      m(r, c) = s == t ? g * e(i, s) * e(j, s) : g * (e(i, s) * e(j, t) + e(i, t) * e(j, s));
    }
  }

  IqSolution out;
  out.mu.n = n;
  std::vector<Eigen::Index> diag_cols;
  for (std::size_t c = 0; c < np; ++c) {
    if (pairs[c].first == pairs[c].second) {
      diag_cols.push_back(static_cast<Eigen::Index>(c));
    } else {
      out.cross_coupling = std::max(out.cross_coupling, m.col(c).cwiseAbs().maxCoeff());
    }
  }
  MatrixR md(np, n);
  for (std::size_t s = 0; s < n; ++s) md.col(s) = m.col(diag_cols[s]);
  const VectorR mu_diag = normal_solve(md, rhs, "iq_solve diagonal block");
  out.diagonal_residual = (md * mu_diag - rhs).cwiseAbs().maxCoeff();
  for (std::size_t s = 0; s < n; ++s) out.mu.mu[{s, s}] = mu_diag[s];

  if (n > 1) {
    // Hadamard square: a_ij^2 = sum_{s<=t} nu_st c_st E_is E_js E_it E_jt, nu_st = mu_ss mu_tt.
    MatrixR sq(np, np);
    VectorR rhs2(np);
    for (std::size_t r = 0; r < np; ++r) {
      const auto [i, j] = pairs[r];
      rhs2[r] = a(i, j) * a(i, j);
      for (std::size_t c = 0; c < np; ++c) {
        const auto [s, t] = pairs[c];
        sq(r, c) = (s == t ? 1.0 : 2.0) * e(i, s) * e(j, s) * e(i, t) * e(j, t);
      }
    }
    VectorR nu;
    try {
      nu = cramer_solve(sq, rhs2);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::SingularSystem) throw;
      throw Error(ErrorKind::DegeneratePattern, "iq_solve cross products: coefficient matrix is singular");
    }
    for (std::size_t c = 0; c < np; ++c) {
      const auto [s, t] = pairs[c];
      if (s != t) out.mu.mu[{s, t}] = sqrt_signed(nu[c]);
    }
  }
  return out;
}

IqConsistency iq_consistency(const MuTable& mu, double tol) {
  IqConsistency out;
  const std::size_t n = mu.n;
  bool nonneg = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = mu(i, i);
    if (d < -tol) throw Error(ErrorKind::NegativeSquare, "mu_" + std::to_string(i) + std::to_string(i) + " < 0");
    if (d < 0) nonneg = false;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.residual = std::max(out.residual, std::abs(mu(i, j) * mu(i, j) - mu(i, i) * mu(j, j)));
  out.consistent = out.residual <= tol;
  if (out.consistent) {
    out.lambda.resize(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      double l = nonneg ? std::sqrt(mu(i, i)) : std::sqrt(std::max(mu(i, i), 0.0));
      if (i > 0 && mu(0, i) < 0) l = -l;
      out.lambda[static_cast<Eigen::Index>(i)] = l;
    }
  }
  return out;
}

double offdiag_residual(const MatrixR& a, const MatrixR& q) {
  require_square(a, "A");
  if (q.cols() != a.rows()) throw Error(ErrorKind::InvalidDimension, "A/Q size mismatch");
  const MatrixR m = q * a * q.transpose();
  double r = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j) r = std::max(r, std::abs(m(i, j)));
  const MatrixR g = q.transpose() * q - MatrixR::Identity(q.cols(), q.cols());
  return r + g.cwiseAbs().maxCoeff();
}

double matrix_resolution_residual(const MatrixR& q, const VectorR& u, const VectorR& v) {
  if (q.cols() != u.size() || u.size() != v.size())
    throw Error(ErrorKind::InvalidDimension, "resolution of identity dimension mismatch");
  double s = 0.0;
  for (Eigen::Index t = 0; t < q.rows(); ++t) s += q.row(t).dot(u) * q.row(t).dot(v);
  return std::abs(u.dot(v) - s);
}

UvSolution uv_solve(const MatrixR& a, const MatrixR& u, const MatrixR& v) {
  require_square(a, "A");
  require_square(u, "U");
  require_square(v, "V");
  const auto n = static_cast<std::size_t>(a.rows());
  if (static_cast<std::size_t>(u.rows()) != n || static_cast<std::size_t>(v.rows()) != n)
    throw Error(ErrorKind::InvalidDimension, "A/U/V size mismatch");
  if ((u * v.transpose() - MatrixR::Identity(n, n)).cwiseAbs().maxCoeff() > kOrthonormalTol)
    throw Error(ErrorKind::Precondition, "U V^T is not the identity");
  const MatrixR e = u.transpose();
  const MatrixR f = v.transpose();
  const std::size_t nn = n * n;

  // Full n^2 x n^2 system a_ij = sum_{s,t} mu_st (sum_k E_ks F_kt) E_is F_jt.
  const MatrixR g = e.transpose() * f;
  UvSolution out;
  MatrixR md(nn, n);
  VectorR rhs(nn);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t r = i * n + j;
      rhs[r] = a(i, j);
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) {
          const double c = g(s, t) * e(i, s) * f(j, t);
          if (s == t) {
            md(r, s) = c;
          } else {
            out.cross_coupling = std::max(out.cross_coupling, std::abs(c));
          }
        }
    }
  const VectorR mu_diag = normal_solve(md, rhs, "uv_solve diagonal block");
  out.diagonal_residual = (md * mu_diag - rhs).cwiseAbs().maxCoeff();
  out.mu = MatrixR::Zero(n, n);
  for (std::size_t s = 0; s < n; ++s) out.mu(s, s) = mu_diag[s];

  if (n > 1) {
    const auto pairs = upper_pairs(n);
    MatrixR sq(nn, pairs.size());
    VectorR rhs2(nn);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t r = i * n + j;
        rhs2[r] = a(i, j) * a(i, j);
        for (std::size_t c = 0; c < pairs.size(); ++c) {
          const auto [s, t] = pairs[c];
          sq(r, c) = (s == t ? 1.0 : 2.0) * e(i, s) * f(j, s) * e(i, t) * f(j, t);
        }
      }
    const VectorR nu = normal_solve(sq, rhs2, "uv_solve cross products");
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      const auto [s, t] = pairs[c];
      if (s != t) out.mu(s, t) = out.mu(t, s) = sqrt_signed(nu[c]);
    }
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          out.consistency_residual =
              std::max(out.consistency_residual, std::abs(out.mu(i, j) * out.mu(k, l) - out.mu(i, l) * out.mu(k, j)));
  return out;
}

double default_consistency_tol(const MatrixR& a) {
  const double norm = a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
  return 1e-8 * std::max(1.0, norm * norm);
}

}  // namespace bmspec
