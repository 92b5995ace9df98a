#include "bmspec/polynomial.hpp"

#include "bmspec/format.hpp"

#include <cmath>
#include <numeric>

namespace bmspec {

unsigned total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

namespace detail {

std::string coeff_to_string(const Rational& c) { return c.get_str(); }
std::string coeff_to_string(double c) { return shortest_repr(c); }

}  // namespace detail

MultiPoly exact_divide(const MultiPoly& num, const MultiPoly& den) {
  if (den.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by the zero polynomial");
  if (num.arity() != den.arity()) throw Error(ErrorKind::InvalidArgument, "arity mismatch in division");
  const auto& [lead_e, lead_c] = *den.terms().begin();
  MultiPoly quotient(num.arity());
  MultiPoly rem = num;
  Exponents e(num.arity());
  while (!rem.is_zero()) {
    const auto& [re, rc] = *rem.terms().begin();
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (re[v] < lead_e[v]) throw Error(ErrorKind::InvalidArgument, "polynomial division is not exact");
      e[v] = static_cast<std::uint16_t>(re[v] - lead_e[v]);
    }
    const MultiPoly t = MultiPoly::monomial(e, Rational(rc / lead_c));
    quotient += t;
    rem -= t * den;
  }
  return quotient;
}

RationalFunction RationalFunction::make(MultiPoly num, MultiPoly den) {
  if (den.is_zero()) throw Error(ErrorKind::SingularSystem, "zero denominator");
  if (sgn(den.terms().begin()->second) < 0) {
    num = -num;
    den = -den;
  }
  return RationalFunction{std::move(num), std::move(den)};
}

double RationalFunction::evaluate(std::span<const double> point) const {
  return numerator.evaluate(point) / denominator.evaluate(point);
}

Rational RationalFunction::evaluate(std::span<const Rational> point) const {
  const Rational d = denominator.evaluate(point);
  if (sgn(d) == 0) throw Error(ErrorKind::SingularSystem, "denominator vanishes at point");
  return Rational(numerator.evaluate(point) / d);
}

MultiPoly fraction_free_det(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) throw Error(ErrorKind::InvalidDimension, "empty matrix");
  for (const auto& row : m)
    if (row.size() != n) throw Error(ErrorKind::InvalidDimension, "matrix is not square");
  const std::size_t arity = m[0][0].arity();
  PolyMatrix a = m;
  MultiPoly prev = MultiPoly::constant(arity, Rational(1));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a[p][k].is_zero()) ++p;
      if (p == n) return MultiPoly(arity);
      std::swap(a[k], a[p]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = exact_divide(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
      a[i][k] = MultiPoly(arity);
    }
    prev = a[k][k];
  }
  return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

double determinant(const MatrixR& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidDimension, "matrix is not square");
  if (m.rows() == 0) return 1.0;
  return Eigen::PartialPivLU<MatrixR>(m).determinant();
}

VectorR cramer_solve(const MatrixR& m, const VectorR& b) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n || b.size() != n) throw Error(ErrorKind::InvalidDimension, "cramer_solve shape mismatch");
  double scale = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) scale *= m.row(i).norm();
  const double det = determinant(m);
  if (!(std::abs(det) > 1e-12 * scale))
    throw Error(ErrorKind::SingularSystem, "determinant below singularity threshold");
  VectorR x(n);
  MatrixR mi = m;
  for (Eigen::Index i = 0; i < n; ++i) {
    mi.col(i) = b;
    x[i] = determinant(mi) / det;
    mi.col(i) = m.col(i);
  }
  return x;
}

std::vector<RationalFunction> cramer_solve(const PolyMatrix& m, const std::vector<MultiPoly>& b) {
  const std::size_t n = m.size();
  if (b.size() != n) throw Error(ErrorKind::InvalidDimension, "cramer_solve shape mismatch");
  const MultiPoly det = fraction_free_det(m);
  if (det.is_zero()) throw Error(ErrorKind::SingularSystem, "determinant is identically zero");
  std::vector<RationalFunction> x;
  PolyMatrix mi = m;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < n; ++r) mi[r][i] = b[r];
    x.push_back(RationalFunction::make(fraction_free_det(mi), det));
    for (std::size_t r = 0; r < n; ++r) mi[r][i] = m[r][i];
  }
  return x;
}

MatrixR vandermonde(const VectorR& x) {
  const Eigen::Index n = x.size();
  if (n == 0) throw Error(ErrorKind::InvalidDimension, "empty node vector");
  MatrixR v(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double p = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      v(i, j) = p;
      p *= x[j];
    }
  }
  return v;
}

PolyMatrix vandermonde(const std::vector<MultiPoly>& x) {
  const std::size_t n = x.size();
  if (n == 0) throw Error(ErrorKind::InvalidDimension, "empty node vector");
  PolyMatrix v(n, std::vector<MultiPoly>(n, MultiPoly(x[0].arity())));
  for (std::size_t j = 0; j < n; ++j) {
    MultiPoly p = MultiPoly::constant(x[j].arity(), Rational(1));
    for (std::size_t i = 0; i < n; ++i) {
      v[i][j] = p;
      p *= x[j];
    }
  }
  return v;
}

}  // namespace bmspec
