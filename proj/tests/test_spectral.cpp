#include "bmspec/instances.hpp"
#include "bmspec/spectral.hpp"
#include "bmspec/verify/oracles.hpp"
#include "support.hpp"

using namespace bmspec;
using testing::error_kind;
using testing::gaussian;
using testing::vec;

TEST_CASE("matrix bound examples") {
  const MatrixSpectralData d{MatrixR::Identity(2, 2), vec({1, 2})};
  const BoundReport r = matrix_bound_check(d, vec({1, 1}), vec({1, 1}));
  CHECK(r.admissible);
  CHECK(r.holds);
  CHECK(r.value == 5.0);
  CHECK(r.lower == 2.0);
  CHECK(r.upper == 8.0);
  CHECK(r.terms == std::vector<double>{1.0, 1.0});

  const BoundReport mixed = matrix_bound_check(d, vec({1, 1}), vec({1, -1}));
  CHECK_FALSE(mixed.admissible);
  CHECK_FALSE(mixed.holds);
  CHECK(error_kind([&] { matrix_bound_check(d, vec({1, 1, 1}), vec({1, 1})); }) == ErrorKind::InvalidDimension);
}

TEST_CASE("matrix bound holds on admissible witnesses") {
  std::mt19937_64 rng(71);
  for (int t = 0; t < 20; ++t) {
    const MatrixSpectralData d = random_matrix_spectral(2 + static_cast<std::size_t>(t % 3), rng);
    const AdmissibleSearch s = sample_matrix_bounds(d, 50, 100000, rng);
    CHECK(s.reports.size() == 50);
    for (const auto& r : s.reports) CHECK(r.holds);
    const VectorR x = gaussian(static_cast<std::size_t>(d.Q.rows()), rng);
    CHECK(matrix_bound_check(d, x, x).holds);
  }
}

TEST_CASE("hyper bound with equal slices is an equality") {
  HyperSpectralData eq{orth222({0.3, -0.2, 0.1, 0.5, -0.4, 0.2}), MatrixR(2, 2)};
  eq.W << 0.8, 1.2, 0.8, 1.2;
  std::mt19937_64 rng(72);
  for (int t = 0; t < 20; ++t) {
    const VectorR x = gaussian(2, rng), y = gaussian(2, rng), z = gaussian(2, rng);
    const BoundReport r = hyper_bound_check(eq, x, y, z);
    CHECK(r.lower == r.upper);
    CHECK(std::abs(r.value - r.lower) < 1e-12 * std::max(1.0, std::abs(r.value)));
  }
}

TEST_CASE("hyper bound with unit scaling reduces to the diagonal form") {
  HyperSpectralData d{orth222({0, 0, 0, 0, 0, 0}), MatrixR::Ones(2, 2)};
  const VectorR x = vec({1, 2}), y = vec({-1, 3}), z = vec({0.5, 1});
  const BoundReport r = hyper_bound_check(d, x, y, z);
  CHECK(r.value == doctest::Approx(-0.5 + 6.0));
  CHECK(r.lower == 5.5);
  CHECK(r.upper == 5.5);
  CHECK(r.terms.size() == 2);
}

TEST_CASE("hyper bound preconditions") {
  HyperSpectralData d{orth222({0, 0, 0, 0, 0, 0}), MatrixR(2, 2)};
  d.W << 1.2, 1.2, 0.8, 0.8;
  const VectorR x = vec({1, 1});
  CHECK(error_kind([&] { hyper_bound_check(d, x, x, x); }) == ErrorKind::Precondition);
  CHECK(sort_slices(d));
  CHECK(d.W(0, 0) == 0.8);
  CHECK(hyper_bound_check(d, x, x, x).terms.size() == 2);

  HyperSpectralData crossing{orth222({0, 0, 0, 0, 0, 0}), MatrixR(2, 2)};
  crossing.W << 0.5, 1.5, 1.2, 1.0;
  CHECK_FALSE(sort_slices(crossing));
  d.W = MatrixR::Ones(3, 3);
  CHECK(error_kind([&] { hyper_bound_check(d, x, x, x); }) == ErrorKind::InvalidDimension);
}

TEST_CASE("hyper bound is not implied by admissibility") {
  // Positive per-slice terms do not make each term monotone in the slice, so
  // planted instances yield admissible witnesses outside the sandwich.
  std::mt19937_64 rng(73);
  long admissible = 0, violations = 0;
  for (int t = 0; t < 20; ++t) {
    PlantedHyper p = planted_hyper(2, rng);
    for (const auto& r : sample_hyper_bounds(p.data, 5, 100000, rng).reports) {
      ++admissible;
      if (!r.holds) ++violations;
    }
  }
  CHECK(admissible == 100);
  CHECK(violations > 0);
}

TEST_CASE("symmetrization") {
  for (std::size_t n : {2, 3}) {
    const SymmetrizedTriple d = symmetrize3(delta(n));
    CHECK(d.S0 == delta(n));
    CHECK(d.S1 == delta(n));
    CHECK(d.S2 == delta(n));
    const SymmetrizedTriple j = symmetrize3(ones(n));
    CHECK(j.S0 == static_cast<double>(n) * ones(n));
  }
  std::mt19937_64 rng(74);
  for (int t = 0; t < 10; ++t) {
    const Hypermatrix3 a = random_hypermatrix(3, rng);
    const SymmetrizedTriple s = symmetrize3(a);
    CHECK(max_abs_diff(s.S0, verify::naive_bm_product(a, cyclic_transpose(a, 2), cyclic_transpose(a))) < 1e-12);
    CHECK(max_abs_diff(s.S1, verify::naive_bm_product(cyclic_transpose(a), a, cyclic_transpose(a, 2))) < 1e-12);
    CHECK(s.residual0 < 1e-12);
    CHECK(s.residual1 < 1e-12);
    CHECK(s.residual2 < 1e-12);
    const SymmetrizedTriple c = symmetrize3(random_cyclic_symmetric(3, rng));
    CHECK(c.S0 == c.S1);
    CHECK(c.S1 == c.S2);
  }
}

TEST_CASE("alpha fits") {
  std::mt19937_64 rng(75);
  for (std::size_t n : {2, 3}) {
    const Hypermatrix3 q = random_hypermatrix(n, rng), e = random_hypermatrix(n, rng), f = random_hypermatrix(n, rng);
    const AlphaFit exact = fit_alphas(bm_product(q, e, f), q, e, f);
    CHECK(exact.residual < 1e-10);
    CHECK((exact.alpha - VectorR::Ones(static_cast<Eigen::Index>(n))).cwiseAbs().maxCoeff() < 1e-8);

    const AlphaFit zero = fit_alphas(Hypermatrix3(n), q, e, f);
    CHECK(zero.alpha.cwiseAbs().maxCoeff() < 1e-14);
    CHECK(zero.residual < 1e-14);

    const AlphaFit single = fit_alphas(3.0 * bm_summand(q, e, f, n - 1), q, e, f);
    CHECK(single.alpha[static_cast<Eigen::Index>(n - 1)] == doctest::Approx(3.0).epsilon(1e-10));
    CHECK_FALSE(single.degenerate);

    const Hypermatrix3 target = random_hypermatrix(n, rng);
    std::vector<Hypermatrix3> terms;
    double prev = fit_alphas(target, terms).residual;
    for (std::size_t k = 0; k < n; ++k) {
      terms.push_back(bm_summand(q, e, f, k));
      const double r = fit_alphas(target, terms).residual;
      CHECK(r <= prev + 1e-12);
      prev = r;
    }
  }
  const Hypermatrix3 t = random_hypermatrix(2, rng);
  const AlphaFit dup = fit_alphas(2.0 * t, std::vector<Hypermatrix3>{t, t});
  CHECK(dup.degenerate);
  CHECK(dup.residual < 1e-12);
  CHECK(dup.alpha[0] == doctest::Approx(1.0));
  CHECK(error_kind([&] { fit_alphas(t, std::vector<Hypermatrix3>{delta(3)}); }) == ErrorKind::InvalidDimension);
}

TEST_CASE("symmetrization-based decomposition of delta") {
  SearchConfig cfg;
  cfg.restarts = 2;
  cfg.seed = 3;
  const Svd3Report r = symmetrization_svd(delta(2), cfg);
  CHECK(r.factors_found);
  CHECK(r.fit.residual < 1e-8);
  CHECK(max_abs_diff(bm_product(r.Qt, r.Et, r.Ft), delta(2)) < 1e-6);
}
