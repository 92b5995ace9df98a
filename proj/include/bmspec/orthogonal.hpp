#pragma once

#include "bmspec/hypermatrix.hpp"

#include <array>
#include <vector>

namespace bmspec {

struct OrthBlock {
  bool singleton = false;
  std::array<double, 6> r{};  // r1..r6, unused for singletons
};

struct OrthParams {
  std::vector<OrthBlock> blocks;

  // n/2 parameter blocks, plus a trailing singleton when n is odd.
  static OrthParams from_flat(const std::vector<double>& r, std::size_t n);
  std::vector<double> flat() const;
  std::size_t side() const;
};

// Number of r-parameters of the direct-sum family at side n.
std::size_t orth_param_count(std::size_t n);

// The closed-form orthogonal 2x2x2 family. |r_k| > 300 or non-finite -> numeric-range error.
Hypermatrix3 orth222(const std::array<double, 6>& r);
Hypermatrix3 orth_direct_sum(const OrthParams& params, std::size_t n);

// ||bm_product(Q, Q^{T^2}, Q^T) - delta||_inf
double orthogonality_residual(const Hypermatrix3& q);
// ||bm_product(Q, U, V) - delta||_inf
double orthogonality_residual(const Hypermatrix3& q, const Hypermatrix3& u, const Hypermatrix3& v);

// |<x,y,z>_Delta - sum_k <x,y,z>_{T^(k)}| with T^(k) = bm_summand(Q, Q^{T^2}, Q^T, k).
double resolution_residual(const Hypermatrix3& q, const VectorR& x, const VectorR& y, const VectorR& z);

// Solves for V with bm_product(Q, U, V) = delta, one n x n linear system per (j,l).
// Throws singular-system if some (j,l) system is singular.
Hypermatrix3 complete_orthogonal_triple(const Hypermatrix3& q, const Hypermatrix3& u);

}  // namespace bmspec
