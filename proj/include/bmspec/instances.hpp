#pragma once

#include "bmspec/elim_hyper.hpp"
#include "bmspec/elim_matrix.hpp"
#include "bmspec/orthogonal.hpp"

#include <random>

namespace bmspec {

OrthParams random_orth_params(std::size_t n, std::mt19937_64& rng, double radius = 1.0);

// Entries uniform in [-1, 1], one draw per cyclic orbit.
Hypermatrix3 random_cyclic_symmetric(std::size_t n, std::mt19937_64& rng);
Hypermatrix3 random_hypermatrix(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0);

struct PlantedHyper {
  OrthParams params;
  HyperSpectralData data;  // W symmetric and block diagonal, slices nondecreasing
  Hypermatrix3 A;
};

// Direct sum of planted 2x2x2 blocks (plus a unit singleton for odd n). Each
// block has 0 < w00 < w01 < w11 drawn from [wlo, whi].
PlantedHyper planted_hyper(std::size_t n, std::mt19937_64& rng, double radius = 1.0, double wlo = 0.5,
                           double whi = 1.5);

struct PlantedGeneral {
  GeneralSpectralData data;
  Hypermatrix3 A;
};

// Q and U from independent family members (U = member^{T^2}), V completing the
// triple; three independent symmetric scalings.
PlantedGeneral planted_general(std::size_t n, std::mt19937_64& rng);

// Orthogonal matrix from the QR factorization of a Gaussian matrix.
MatrixR random_orthogonal_matrix(std::size_t n, std::mt19937_64& rng);

// Symmetric A = Q^T diag(lambda^2) Q with well separated positive lambda^2.
MatrixSpectralData random_matrix_spectral(std::size_t n, std::mt19937_64& rng);

struct PlantedBiorthogonal {
  MatrixR U, V;
  VectorR lambda;  // gamma = lambda
  MatrixR A;       // U^T diag(lambda^2) V
};

PlantedBiorthogonal planted_biorthogonal(std::size_t n, std::mt19937_64& rng);

}  // namespace bmspec
