#include "bmspec/verify/oracles.hpp"

#include "bmspec/error.hpp"

namespace bmspec::verify {

Hypermatrix3 naive_bm_product(const Hypermatrix3& a, const Hypermatrix3& b, const Hypermatrix3& c) {
  const std::size_t n = a.side();
  Hypermatrix3 p(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t k = 0; k < n; ++k) p(i, j, l) += a(i, k, l) * b(i, j, k) * c(k, j, l);
  return p;
}

Hypermatrix3 naive_bm_product_bg(const Hypermatrix3& u, const Hypermatrix3& a, const Hypermatrix3& b,
                                 const Hypermatrix3& c) {
  const std::size_t n = a.side();
  Hypermatrix3 p(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t k0 = 0; k0 < n; ++k0)
          for (std::size_t k1 = 0; k1 < n; ++k1)
            for (std::size_t k2 = 0; k2 < n; ++k2)
              p(i, j, l) += a(i, k1, l) * b(i, j, k2) * c(k0, j, l) * u(k1, k2, k0);
  return p;
}

double naive_multilinear(const Hypermatrix3& t, const VectorR& x, const VectorR& y, const VectorR& z) {
  const std::size_t n = t.side();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        s += t(i, j, k) * x[static_cast<Eigen::Index>(i)] * y[static_cast<Eigen::Index>(j)] *
             z[static_cast<Eigen::Index>(k)];
  return s;
}

MultiPoly cofactor_det(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  MultiPoly det(m[0][0].arity());
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    PolyMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<MultiPoly> row;
      for (std::size_t cc = 0; cc < n; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(std::move(row));
    }
    const MultiPoly term = m[0][c] * cofactor_det(minor);
    if (c % 2 == 0) {
      det += term;
    } else {
      det -= term;
    }
  }
  return det;
}

}  // namespace bmspec::verify
