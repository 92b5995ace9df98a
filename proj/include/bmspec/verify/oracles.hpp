#pragma once

#include "bmspec/hypermatrix.hpp"
#include "bmspec/polynomial.hpp"

namespace bmspec::verify {

struct JacobiResult {
  VectorR values;   // ascending
  MatrixR vectors;  // row k is the eigenvector for values[k]
  int sweeps = 0;
};

// Cyclic Jacobi rotations until the off-diagonal mass falls below tol * ||A||_F.
JacobiResult jacobi_eigen(const MatrixR& a, double tol = 1e-12, int max_sweeps = 100);

Hypermatrix3 naive_bm_product(const Hypermatrix3& a, const Hypermatrix3& b, const Hypermatrix3& c);
Hypermatrix3 naive_bm_product_bg(const Hypermatrix3& u, const Hypermatrix3& a, const Hypermatrix3& b,
                                 const Hypermatrix3& c);
double naive_multilinear(const Hypermatrix3& t, const VectorR& x, const VectorR& y, const VectorR& z);

// Laplace expansion along the first row.
MultiPoly cofactor_det(const PolyMatrix& m);

}  // namespace bmspec::verify
