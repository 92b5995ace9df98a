#include "bmspec/elim_matrix.hpp"
#include "bmspec/instances.hpp"
#include "bmspec/verify/oracles.hpp"
#include "support.hpp"

#include <cmath>

using namespace bmspec;
using testing::error_kind;
using testing::gaussian;
using testing::vec;

namespace {

MatrixR rotation(double th) {
  MatrixR q(2, 2);
  q << std::cos(th), std::sin(th), -std::sin(th), std::cos(th);
  return q;
}

MatrixR diag2(double a, double b) { return vec({a, b}).asDiagonal(); }

}  // namespace

TEST_CASE("power moments") {
  MatrixR a(2, 2);
  a << 1, 2, 3, 4;
  const auto s = power_moment_stack(a, 3);
  REQUIRE(s.size() == 3);
  CHECK(s[0] == MatrixR::Identity(2, 2));
  CHECK(s[1] == a);
  CHECK(s[2] == a * a);
  CHECK(error_kind([&] { power_moment_stack(a, 0); }) == ErrorKind::InvalidArgument);
  CHECK(error_kind([] { power_moment_stack(MatrixR(2, 3), 2); }) == ErrorKind::InvalidDimension);
}

TEST_CASE("Hadamard products of eigenvector coordinates") {
  const auto v = solve_hadamard_products(diag2(4, 9), vec({2, 3}));
  CHECK(v.at({0, 0}).isApprox(vec({1, 0})));
  CHECK(v.at({1, 1}).isApprox(vec({0, 1})));
  CHECK(v.at({0, 1}).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(id_residual(diag2(4, 9), vec({2, 3})) < 1e-15);

  CHECK(error_kind([] { solve_hadamard_products(MatrixR::Identity(2, 2), vec({1, 1})); }) ==
        ErrorKind::SingularSystem);
  CHECK(error_kind([] { solve_hadamard_products(MatrixR::Identity(2, 2), vec({1, 2, 3})); }) ==
        ErrorKind::InvalidDimension);

  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 3);
    MatrixR a = random_matrix_spectral(n, rng).reconstruct();
    a = 0.5 * (a + a.transpose());
    const verify::JacobiResult oracle = verify::jacobi_eigen(a);
    const auto prods = solve_hadamard_products(a, oracle.values.cwiseSqrt());
    for (const auto& [ij, got] : prods) {
      VectorR want(static_cast<Eigen::Index>(n));
      for (Eigen::Index k = 0; k < want.size(); ++k)
        want[k] = oracle.vectors(k, static_cast<Eigen::Index>(ij.first)) *
                  oracle.vectors(k, static_cast<Eigen::Index>(ij.second));
      CHECK((got - want).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("id residual separates true and perturbed eigenvalues") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 20; ++t) {
    const MatrixSpectralData d = random_matrix_spectral(3, rng);
    const MatrixR a = d.reconstruct();
    const double good = id_residual(a, d.lambda.cwiseAbs());
    VectorR bad = d.lambda.cwiseAbs();
    bad[1] *= 1.1;
    CHECK(good < 1e-8 * a.norm());
    CHECK(id_residual(a, bad) > 1e3 * good);
  }
}

TEST_CASE("symbolic id generators") {
  const auto gens = id_generators_symbolic(2);
  REQUIRE(gens.size() == 2);
  CHECK(id_generator_variables() == std::vector<std::string>{"a00", "a01", "a11", "l0", "l1"});
  const std::vector<Rational> diag{Rational(4), Rational(0), Rational(9), Rational(2), Rational(3)};
  for (const auto& g : gens) CHECK(g.evaluate(diag) == 0);
  // A rational consistent point: Q with rows (3/5, 4/5), (-4/5, 3/5), lambda = (1, 2).
  const Rational a00 = Rational(9, 25) + 4 * Rational(16, 25), a01 = Rational(12, 25) - 4 * Rational(12, 25),
                 a11 = Rational(16, 25) + 4 * Rational(9, 25);
  const std::vector<Rational> rot{a00, a01, a11, Rational(1), Rational(2)};
  for (const auto& g : gens) CHECK(g.evaluate(rot) == 0);
  const std::vector<Rational> off{a00, a01, a11, Rational(1), Rational(3)};
  bool some_nonzero = false;
  for (const auto& g : gens) some_nonzero = some_nonzero || g.evaluate(off) != 0;
  CHECK(some_nonzero);
  CHECK(error_kind([] { id_generators_symbolic(3); }) == ErrorKind::Unsupported);
}

TEST_CASE("iq_solve worked example") {
  MatrixR q(2, 2);
  q << 0.6, 0.8, -0.8, 0.6;
  const MatrixR a = MatrixSpectralData{q, vec({1, 2})}.reconstruct();
  const IqSolution s = iq_solve(a, q);
  CHECK(s.mu(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.mu(0, 1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s.mu(1, 0) == s.mu(0, 1));
  CHECK(s.mu(1, 1) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(s.diagonal_residual < 1e-12);
  const IqConsistency c = iq_consistency(s.mu);
  CHECK(c.consistent);
  CHECK(c.lambda.cwiseAbs().isApprox(vec({1, 2}), 1e-10));
  CHECK(error_kind([&] { s.mu(0, 2); }) == ErrorKind::Index);
}

TEST_CASE("iq_solve edge cases") {
  CHECK(error_kind([] { iq_solve(diag2(4, 9), MatrixR::Identity(2, 2)); }) == ErrorKind::DegeneratePattern);
  CHECK(error_kind([] { iq_solve(diag2(4, 9), 2.0 * MatrixR::Identity(2, 2)); }) == ErrorKind::Precondition);
  const IqSolution s = iq_solve(MatrixR::Identity(2, 2), rotation(0.3));
  CHECK(s.mu(0, 0) == doctest::Approx(1.0));
  CHECK(s.mu(1, 1) == doctest::Approx(1.0));
  CHECK(s.mu(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("iq_solve matches a Jacobi eigendecomposition") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 4);
    MatrixR a = random_matrix_spectral(n, rng).reconstruct();
    a = 0.5 * (a + a.transpose());
    const verify::JacobiResult oracle = verify::jacobi_eigen(a);
    const IqSolution s = iq_solve(a, oracle.vectors);
    const IqConsistency c = iq_consistency(s.mu, default_consistency_tol(a));
    REQUIRE(c.consistent);
    for (Eigen::Index k = 0; k < c.lambda.size(); ++k)
      CHECK(std::abs(c.lambda[k]) == doctest::Approx(std::sqrt(oracle.values[k])).epsilon(1e-6));
  }
}

TEST_CASE("iq consistency") {
  MuTable mu;
  mu.n = 3;
  mu.mu = {{{0, 0}, 8.0}, {{1, 1}, 2.0}, {{2, 2}, 0.5}, {{0, 1}, 4.0}, {{0, 2}, -2.0}, {{1, 2}, -1.0}};
  const IqConsistency c = iq_consistency(mu);
  CHECK(c.consistent);
  CHECK(c.residual == 0.0);
  CHECK(c.lambda[1] / c.lambda[0] == doctest::Approx(0.5));
  CHECK(c.lambda[2] / c.lambda[0] == doctest::Approx(-0.25));

  mu.mu[{0, 1}] = 5.0;
  const IqConsistency bad = iq_consistency(mu);
  CHECK_FALSE(bad.consistent);
  CHECK(bad.residual == doctest::Approx(9.0));
  CHECK(bad.lambda.size() == 0);

  mu.mu[{1, 1}] = -1.0;
  CHECK(error_kind([&] { iq_consistency(mu); }) == ErrorKind::NegativeSquare);
}

TEST_CASE("off-diagonal residual") {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 20; ++t) {
    const MatrixSpectralData d = random_matrix_spectral(4, rng);
    const MatrixR a = d.reconstruct();
    CHECK(offdiag_residual(a, d.Q) < 1e-10 * a.norm());
    MatrixR flipped = d.Q;
    flipped.row(2) *= -1.0;
    flipped.row(0).swap(flipped.row(3));
    CHECK(offdiag_residual(a, flipped) < 1e-10 * a.norm());
    CHECK(offdiag_residual(a, random_orthogonal_matrix(4, rng)) > 1e-6);
  }
  CHECK(offdiag_residual(diag2(4, 9), 2.0 * MatrixR::Identity(2, 2)) == 3.0);
}

TEST_CASE("matrix resolution of identity") {
  std::mt19937_64 rng(45);
  for (std::size_t n : {2, 3, 5}) {
    const MatrixR q = random_orthogonal_matrix(n, rng);
    const VectorR u = gaussian(n, rng), v = gaussian(n, rng);
    CHECK(matrix_resolution_residual(q, u, v) < 1e-12 * std::max(1.0, u.norm() * v.norm()));
  }
  CHECK(matrix_resolution_residual(2.0 * MatrixR::Identity(2, 2), vec({1, 0}), vec({1, 0})) == 3.0);
}

TEST_CASE("uv_solve on biorthogonal instances") {
  std::mt19937_64 rng(46);
  for (int t = 0; t < 20; ++t) {
    const PlantedBiorthogonal p = planted_biorthogonal(2, rng);
    const UvSolution s = uv_solve(p.A, p.U, p.V);
    for (Eigen::Index i = 0; i < 2; ++i)
      for (Eigen::Index j = 0; j < 2; ++j)
        CHECK(s.mu(i, j) == doctest::Approx(p.lambda[i] * p.lambda[j]).epsilon(1e-8));
    CHECK(s.consistency_residual < 1e-8 * std::max(1.0, p.A.squaredNorm()));
  }
  CHECK(error_kind([] { uv_solve(MatrixR::Identity(2, 2), MatrixR::Identity(2, 2), 2.0 * MatrixR::Identity(2, 2)); }) ==
        ErrorKind::Precondition);
  CHECK(error_kind([] { uv_solve(MatrixR::Identity(2, 2), MatrixR::Identity(3, 3), MatrixR::Identity(3, 3)); }) ==
        ErrorKind::InvalidDimension);
}

TEST_CASE("default consistency tolerance") {
  CHECK(default_consistency_tol(diag2(0.5, 0.1)) == 1e-8);
  CHECK(default_consistency_tol(diag2(10, 1)) == doctest::Approx(1e-6));
}
