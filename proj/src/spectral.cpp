#include "bmspec/spectral.hpp"

#include "bmspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bmspec {

BoundReport matrix_bound_check(const MatrixSpectralData& data, const VectorR& x, const VectorR& y, double tol) {
  const Eigen::Index n = data.Q.rows();
  if (x.size() != n || y.size() != n || data.Q.cols() != n || data.lambda.size() != n)
    throw Error(ErrorKind::InvalidDimension, "bound check dimension mismatch");
  BoundReport rep;
  rep.witness = {x, y};
  rep.admissible = true;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double t = data.Q.row(k).dot(x) * data.Q.row(k).dot(y);
    rep.terms.push_back(t);
    if (t < -tol) rep.admissible = false;
  }
  const VectorR l2 = data.lambda.cwiseAbs2();
  const double xy = x.dot(y);
  rep.value = multilinear_form(data.reconstruct(), x, y);
  rep.lower = l2.minCoeff() * xy;
  rep.upper = l2.maxCoeff() * xy;
  const double slack = tol * std::max(1.0, std::abs(rep.value));
  rep.holds = rep.admissible && rep.lower - slack <= rep.value && rep.value <= rep.upper + slack;
  return rep;
}

namespace {

bool monotone(const MatrixR& w) {
  const MatrixR d = w.cwiseAbs2();
  for (Eigen::Index i = 0; i < d.cols(); ++i)
    for (Eigen::Index j = 1; j < d.rows(); ++j)
      if (d(j - 1, i) > d(j, i)) return false;
  return true;
}

double diagonal_form(const VectorR& d, const VectorR& x, const VectorR& y, const VectorR& z) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < d.size(); ++i) s += d[i] * d[i] * d[i] * x[i] * y[i] * z[i];
  return s;
}

}  // namespace

BoundReport hyper_bound_check(const HyperSpectralData& data, const VectorR& x, const VectorR& y, const VectorR& z,
                              double tol) {
  const std::size_t n = data.Q.side();
  if (static_cast<std::size_t>(data.W.rows()) != n || static_cast<std::size_t>(data.W.cols()) != n)
    throw Error(ErrorKind::InvalidDimension, "W must be n x n");
  if (!monotone(data.W)) throw Error(ErrorKind::Precondition, "scaling slices are not entrywise nondecreasing");
  const Hypermatrix3 q2 = cyclic_transpose(data.Q, 2);
  const Hypermatrix3 q1 = cyclic_transpose(data.Q, 1);
  BoundReport rep;
  rep.witness = {x, y, z};
  rep.admissible = true;
  for (std::size_t k = 0; k < n; ++k) {
    const VectorR d = data.slice(k);
    const double t = multilinear_form(bm_summand(data.Q, q2, q1, k), hadamard(d, x), hadamard(d, y), hadamard(d, z));
    rep.terms.push_back(t);
    if (t < -tol) rep.admissible = false;
  }
  rep.value = multilinear_form(data.reconstruct(), x, y, z);
  rep.lower = diagonal_form(data.slice(0), x, y, z);
  rep.upper = diagonal_form(data.slice(n - 1), x, y, z);
  const double slack = tol * std::max(1.0, std::abs(rep.value));
  rep.holds = rep.admissible && rep.lower - slack <= rep.value && rep.value <= rep.upper + slack;
  return rep;
}

bool sort_slices(HyperSpectralData& data) {
  const auto n = data.W.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const MatrixR d = data.W.cwiseAbs2();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return d.row(a).sum() < d.row(b).sum(); });
  MatrixR w(data.W.rows(), data.W.cols());
  for (Eigen::Index r = 0; r < n; ++r) w.row(r) = data.W.row(order[static_cast<std::size_t>(r)]);
  data.W = w;
  return monotone(w);
}

namespace {

VectorR gaussian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  VectorR v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = g(rng);
  return v;
}

}  // namespace

AdmissibleSearch sample_matrix_bounds(const MatrixSpectralData& data, std::size_t wanted, long budget,
                                      std::mt19937_64& rng, double tol) {
  AdmissibleSearch out;
  const auto n = static_cast<std::size_t>(data.Q.rows());
  while (out.reports.size() < wanted && out.trials < budget) {
    ++out.trials;
    const VectorR x = gaussian(n, rng), y = gaussian(n, rng);
    BoundReport r = matrix_bound_check(data, x, y, tol);
    if (r.admissible) out.reports.push_back(std::move(r));
  }
  return out;
}

AdmissibleSearch sample_hyper_bounds(const HyperSpectralData& data, std::size_t wanted, long budget,
                                     std::mt19937_64& rng, double tol) {
  AdmissibleSearch out;
  const std::size_t n = data.Q.side();
  while (out.reports.size() < wanted && out.trials < budget) {
    ++out.trials;
    const VectorR x = gaussian(n, rng), y = gaussian(n, rng), z = gaussian(n, rng);
    BoundReport r = hyper_bound_check(data, x, y, z, tol);
    if (r.admissible) out.reports.push_back(std::move(r));
  }
  return out;
}

SymmetrizedTriple symmetrize3(const Hypermatrix3& a) {
  const Hypermatrix3 t1 = cyclic_transpose(a, 1);
  const Hypermatrix3 t2 = cyclic_transpose(a, 2);
  SymmetrizedTriple s;
  s.S0 = bm_product(a, t2, t1);
  s.S1 = bm_product(t1, a, t2);
  s.S2 = bm_product(t2, t1, a);
  s.residual0 = cyclic_symmetry_residual(s.S0);
  s.residual1 = cyclic_symmetry_residual(s.S1);
  s.residual2 = cyclic_symmetry_residual(s.S2);
  return s;
}

AlphaFit fit_alphas(const Hypermatrix3& a, const std::vector<Hypermatrix3>& terms) {
  const auto m = static_cast<Eigen::Index>(a.size());
  const auto p = static_cast<Eigen::Index>(terms.size());
  MatrixR x(m, p);
  for (Eigen::Index k = 0; k < p; ++k) {
    if (terms[static_cast<std::size_t>(k)].dims() != a.dims())
      throw Error(ErrorKind::InvalidDimension, "term shape mismatch");
    x.col(k) = Eigen::Map<const VectorR>(terms[static_cast<std::size_t>(k)].data().data(), m);
  }
  const VectorR target = Eigen::Map<const VectorR>(a.data().data(), m);
  AlphaFit fit;
  fit.alpha = VectorR::Zero(p);
  if (p > 0) {
    // Normal equations; pseudo-inverse of the Gram matrix gives the minimum-norm solution.
    const MatrixR gram = x.transpose() * x;
    const VectorR h = x.transpose() * target;
    Eigen::SelfAdjointEigenSolver<MatrixR> eig(gram);
    const VectorR ev = eig.eigenvalues();
    const double cut = 1e-12 * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
    const VectorR proj = eig.eigenvectors().transpose() * h;
    VectorR scaled = VectorR::Zero(p);
    for (Eigen::Index t = 0; t < p; ++t) {
      if (ev[t] > cut) {
        scaled[t] = proj[t] / ev[t];
      } else {
        fit.degenerate = true;
      }
    }
    fit.alpha = eig.eigenvectors() * scaled;
  }
  fit.residual = (target - x * fit.alpha).norm();
  return fit;
}

AlphaFit fit_alphas(const Hypermatrix3& a, const Hypermatrix3& qt, const Hypermatrix3& et, const Hypermatrix3& ft) {
  const std::size_t n = qt.side();
  if (a.side() != n || et.side() != n || ft.side() != n) throw Error(ErrorKind::InvalidDimension, "side mismatch");
  std::vector<Hypermatrix3> terms;
  for (std::size_t k = 0; k < n; ++k) terms.push_back(bm_summand(qt, et, ft, k));
  return fit_alphas(a, terms);
}

Svd3Report symmetrization_svd(const Hypermatrix3& a, const SearchConfig& config) {
  Svd3Report rep;
  rep.sym = symmetrize3(a);
  const std::array<const Hypermatrix3*, 3> s{&rep.sym.S0, &rep.sym.S1, &rep.sym.S2};
  std::array<Hypermatrix3, 3> x;
  rep.factors_found = true;
  for (int t = 0; t < 3; ++t) {
    rep.searches[static_cast<std::size_t>(t)] = decomposability_search(*s[static_cast<std::size_t>(t)], config);
    const SearchReport& sr = rep.searches[static_cast<std::size_t>(t)];
    rep.factors_found = rep.factors_found && sr.decomposable;
    const int levels = config.levels > 0 ? config.levels : static_cast<int>(a.side());
    const MonomialSystem sys = spectral_system(*s[static_cast<std::size_t>(t)], sr.Q, levels);
    const MonomialSolution sol = solve_monomial_system(sys);
    const MatrixR w = sol.variables.empty() ? recover_scaling(sys, sol.values)
                                            : symmetric_scaling_matrix(sol.variables, a.side());
    const Hypermatrix3 d = scaling_hypermatrix(w);
    x[static_cast<std::size_t>(t)] = bm_product(sr.Q, d, cyclic_transpose(d));
  }
  // S0 = (X0, X0^{T^2}, X0^T) gives Q~ = X0; S1 = (E~^T, E~, E~^{T^2}) gives
  // E~ = X1^{T^2}; S2 = (F~^{T^2}, F~^T, F~) gives F~ = X2^T.
  rep.Qt = x[0];
  rep.Et = cyclic_transpose(x[1], 2);
  rep.Ft = cyclic_transpose(x[2], 1);
  rep.fit = fit_alphas(a, rep.Qt, rep.Et, rep.Ft);
  return rep;
}

}  // namespace bmspec
