#include "bmspec/instances.hpp"
#include "bmspec/orthogonal.hpp"
#include "support.hpp"

#include <cmath>
#include <limits>

using namespace bmspec;
using testing::error_kind;
using testing::gaussian;

TEST_CASE("orth222 at the origin") {
  const Hypermatrix3 q = orth222({0, 0, 0, 0, 0, 0});
  const double c = std::cbrt(0.5);
  CHECK(q(0, 0, 0) == doctest::Approx(c).epsilon(1e-15));
  CHECK(q(0, 1, 0) == doctest::Approx(c).epsilon(1e-15));
  CHECK(q(1, 0, 1) == doctest::Approx(c).epsilon(1e-15));
  CHECK(q(1, 1, 1) == doctest::Approx(c).epsilon(1e-15));
  CHECK(q(0, 0, 1) == 1.0);
  CHECK(q(0, 1, 1) == 1.0);
  CHECK(q(1, 1, 0) == 1.0);
  CHECK(q(1, 0, 0) == -1.0);
  CHECK(q(0, 0, 0) == doctest::Approx(0.7937005).epsilon(1e-7));
  CHECK(orthogonality_residual(q) < 1e-12);
}

TEST_CASE("orth222 family is orthogonal with a single negative entry") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    std::array<double, 6> r{};
    for (double& v : r) v = unif(rng);
    const Hypermatrix3 q = orth222(r);
    CHECK(orthogonality_residual(q) < 1e-9);
    int negatives = 0;
    for (double v : q.data()) negatives += v < 0;
    CHECK(negatives == 1);
    CHECK(q(1, 0, 0) < 0);
  }
}

TEST_CASE("orth222 closed form") {
  const std::array<double, 6> r{0.3, -0.7, 0.2, 0.5, -0.1, 0.9};
  const double r1 = r[0], r2 = r[1], r3 = r[2], r4 = r[3], r5 = r[4], r6 = r[5];
  const double n1 = std::cbrt(std::exp(3 * r3) + std::exp(3 * r6));
  const double n2 = std::cbrt(std::exp(3 * r1) + std::exp(3 * r1 + 3 * r3 - 3 * r6));
  const Hypermatrix3 q = orth222(r);
  CHECK(q(0, 0, 0) == doctest::Approx(std::exp(r3) / n1).epsilon(1e-14));
  CHECK(q(0, 0, 1) == doctest::Approx(std::exp(r4)).epsilon(1e-14));
  CHECK(q(0, 1, 0) == doctest::Approx(std::exp(r6) / n1).epsilon(1e-14));
  CHECK(q(0, 1, 1) == doctest::Approx(std::exp(r2)).epsilon(1e-14));
  CHECK(q(1, 0, 0) == doctest::Approx(-std::exp(r2 - r3 - r4 + r5 + r6)).epsilon(1e-14));
  CHECK(q(1, 0, 1) == doctest::Approx(std::exp(r1 + r3 - r6) / n2).epsilon(1e-14));
  CHECK(q(1, 1, 0) == doctest::Approx(std::exp(r5)).epsilon(1e-14));
  CHECK(q(1, 1, 1) == doctest::Approx(std::exp(r1) / n2).epsilon(1e-14));
}

TEST_CASE("orth222 range guard") {
  CHECK(error_kind([] { orth222({301, 0, 0, 0, 0, 0}); }) == ErrorKind::NumericRange);
  CHECK(error_kind([] { orth222({0, 0, std::numeric_limits<double>::quiet_NaN(), 0, 0, 0}); }) ==
        ErrorKind::NumericRange);
  CHECK(error_kind([] { orth222({0, 0, 0, 0, 0, std::numeric_limits<double>::infinity()}); }) ==
        ErrorKind::NumericRange);
  CHECK(orthogonality_residual(orth222({0, 0, 100, 0, 0, 100})) < 1e-9);
}

TEST_CASE("direct-sum family") {
  CHECK(orth_direct_sum(OrthParams::from_flat({}, 1), 1) == delta(1));
  const Hypermatrix3 q4 = orth_direct_sum(OrthParams::from_flat(std::vector<double>(12, 0.0), 4), 4);
  CHECK(orthogonality_residual(q4) < 1e-12);
  std::mt19937_64 rng(22);
  for (std::size_t n : {3, 5, 6, 7}) {
    const OrthParams p = random_orth_params(n, rng);
    CHECK(p.side() == n);
    CHECK(p.flat().size() == orth_param_count(n));
    CHECK(orthogonality_residual(orth_direct_sum(p, n)) < 1e-9);
  }
  CHECK(error_kind([] { OrthParams::from_flat(std::vector<double>(6, 0.0), 4); }) == ErrorKind::InvalidArgument);
  CHECK(error_kind([] { orth_direct_sum(OrthParams::from_flat(std::vector<double>(6, 0.0), 2), 3); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("orthogonality residual") {
  for (std::size_t n = 1; n <= 5; ++n) CHECK(orthogonality_residual(delta(n)) == 0.0);
  CHECK(orthogonality_residual(ones(2)) == 2.0);
}

TEST_CASE("hypermatrix resolution of identity") {
  std::mt19937_64 rng(23);
  for (std::size_t n = 1; n <= 4; ++n) {
    const VectorR x = gaussian(n, rng), y = gaussian(n, rng), z = gaussian(n, rng);
    CHECK(resolution_residual(delta(n), x, y, z) == 0.0);
  }
  const Hypermatrix3 q = orth222({0, 0, 0, 0, 0, 0});
  for (int t = 0; t < 100; ++t) {
    const VectorR x = gaussian(2, rng), y = gaussian(2, rng), z = gaussian(2, rng);
    CHECK(resolution_residual(q, x, y, z) < 1e-10 * std::max(1.0, x.norm() * y.norm() * z.norm()));
  }
  for (int t = 0; t < 50; ++t) {
    const Hypermatrix3 q4 = orth_direct_sum(random_orth_params(4, rng), 4);
    const VectorR x = gaussian(4, rng), y = gaussian(4, rng), z = gaussian(4, rng);
    const double l1 = x.lpNorm<1>() * y.lpNorm<1>() * z.lpNorm<1>();
    const double r = resolution_residual(q4, x, y, z);
    CHECK(r < 1e-9 * std::max(1.0, l1));
    CHECK(r <= orthogonality_residual(q4) * l1 + 1e-14 * l1);
  }
}

TEST_CASE("completing an orthogonal triple") {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 20; ++t) {
    const Hypermatrix3 q = orth_direct_sum(random_orth_params(2, rng), 2);
    const Hypermatrix3 u = cyclic_transpose(orth_direct_sum(random_orth_params(2, rng), 2), 2);
    const Hypermatrix3 v = complete_orthogonal_triple(q, u);
    CHECK(orthogonality_residual(q, u, v) < 1e-10);
    CHECK(error_kind([&] { complete_orthogonal_triple(q, cyclic_transpose(q, 2)); }) == ErrorKind::SingularSystem);
  }
  CHECK(error_kind([] { complete_orthogonal_triple(ones(2), ones(2)); }) == ErrorKind::SingularSystem);
}
