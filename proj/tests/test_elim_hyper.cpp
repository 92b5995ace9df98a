#include "bmspec/elim_hyper.hpp"
#include "bmspec/instances.hpp"
#include "bmspec/orthogonal.hpp"
#include "bmspec/verify/oracles.hpp"
#include "support.hpp"

#include <cmath>

using namespace bmspec;
using testing::error_kind;
using testing::vec;

namespace {

Fibers222 diagonal_class() {
  Fibers222 f;
  f.q00 = f.q10 = vec({1, 0});
  f.q01 = f.q11 = vec({0, 1});
  return f;
}

MatrixR random_symmetric_positive(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.5, 1.5);
  MatrixR w(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    for (Eigen::Index k = i; k < w.cols(); ++k) w(i, k) = w(k, i) = u(rng);
  return w;
}

MonomialSystem two_variable_system(std::vector<Exponents> exps) {
  MonomialSystem s;
  s.n = 1;
  s.variables = {"x", "y"};
  for (auto& e : exps) s.basis.push_back(BasisKey{0, std::move(e)});
  return s;
}

}  // namespace

TEST_CASE("background sequences") {
  std::mt19937_64 rng(51);
  for (std::size_t n = 1; n <= 5; ++n) {
    const Hypermatrix3 q = orth_direct_sum(random_orth_params(n, rng), n);
    const auto us = u_sequence(q, 4);
    REQUIRE(us.size() == 4);
    CHECK(us[0] == delta(n));
    for (const auto& u : us) CHECK(max_abs_diff(u, delta(n)) < 1e-9);
  }
  for (int t = 0; t < 5; ++t) {
    const Hypermatrix3 q = random_hypermatrix(3, rng);
    const auto us = u_sequence(q, 3);
    const Hypermatrix3 u1 = verify::naive_bm_product(q, cyclic_transpose(q, 2), cyclic_transpose(q));
    CHECK(max_abs_diff(us[1], u1) < 1e-12);
    CHECK(max_abs_diff(us[2], verify::naive_bm_product_bg(u1, q, cyclic_transpose(q, 2), cyclic_transpose(q))) <
          1e-12 * std::max(1.0, us[2].max_abs()));
  }
  const Hypermatrix3 q = orth_direct_sum(random_orth_params(2, rng), 2);
  const Hypermatrix3 u = cyclic_transpose(orth_direct_sum(random_orth_params(2, rng), 2), 2);
  const Hypermatrix3 v = complete_orthogonal_triple(q, u);
  for (const auto& gk : g_sequence(q, u, v, 3)) CHECK(max_abs_diff(gk, delta(2)) < 1e-9);
  CHECK(error_kind([&] { u_sequence(q, 0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("assembled 2x2x2 diagonal class") {
  const Hypermatrix3 a = assemble222(diagonal_class(), vec({1, 2}), vec({2, 3}));
  CHECK(a(0, 0, 0) == 1.0);
  CHECK(a(1, 1, 1) == 729.0);
  CHECK(a(0, 1, 1) == 0.0);
  CHECK(a(1, 0, 0) == 0.0);
  CHECK(cyclic_symmetry_residual(a) == 0.0);
  CHECK(assemble222_delta(diagonal_class(), vec({1, 2}), vec({2, 3})) == delta(2));
  CHECK(error_kind([] { assemble222(diagonal_class(), vec({1, 2, 3}), vec({2, 3})); }) ==
        ErrorKind::InvalidDimension);
}

TEST_CASE("assembly matches the planted reconstruction") {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 50; ++t) {
    const PlantedHyper p = planted_hyper(2, rng);
    const Fibers222 f = Fibers222::from(p.data.Q);
    const Hypermatrix3 a = assemble222(f, p.data.W.row(0).transpose(), p.data.W.row(1).transpose());
    CHECK(max_abs_diff(a, p.A) < 1e-12 * std::max(1.0, p.A.max_abs()));
    CHECK(cyclic_symmetry_residual(a) == 0.0);
    CHECK(max_abs_diff(assemble222_delta(f, p.data.W.row(0).transpose(), p.data.W.row(1).transpose()), delta(2)) <
          1e-12);
  }
}

TEST_CASE("characteristic polynomial") {
  const Charpoly222 cp = charpoly222(1, 729);
  CHECK(cp.pretty() == "p(u,v,t) = u·t − v² + 730·v − 729·u − 1·t");
  for (double v : {-3.0, 0.0, 1.0, 2.5, 729.0, 1000.0})
    CHECK(cp.evaluate_uvt(1, v, 729) == doctest::Approx(-(v - 1) * (v - 729)));
  const std::vector<double> pt{1.0, 1.0, 729.0};
  CHECK(cp.poly.evaluate(pt) == 0.0);
  CHECK(cp.evaluate(1, 1, 3) == 0.0);

  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int t = 0; t < 20; ++t) {
    const double a = u(rng), b = u(rng), x = u(rng), y = u(rng), z = u(rng);
    const Charpoly222 p = charpoly222(a, b), q = charpoly222(b, a);
    CHECK(p.evaluate_uvt(x, y, z) == doctest::Approx(q.evaluate_uvt(z, y, x)));
    CHECK(p.poly.evaluate(std::vector<double>{x, y, z}) == doctest::Approx(p.evaluate_uvt(x, y, z)));
  }
  CHECK(charpoly222(-2, 0.5).pretty() == "p(u,v,t) = u·t − v² − 1.5·v − 0.5·u + 2·t");
}

TEST_CASE("Vandermonde relations") {
  CHECK(error_kind([] { vandermonde_relations222(assemble222(diagonal_class(), vec({1, 2}), vec({2, 3})), 1, 2, 3); }) ==
        ErrorKind::DegenerateInstance);
  CHECK(error_kind([] { vandermonde_relations222(delta(3), 1, 2, 3); }) == ErrorKind::InvalidDimension);

  std::mt19937_64 rng(54);
  int checked = 0;
  while (checked < 30) {
    const PlantedHyper p = planted_hyper(2, rng, 0.5);
    const double w00 = p.data.W(0, 0), w01 = p.data.W(0, 1), w11 = p.data.W(1, 1);
    try {
      const Relations222 good = vandermonde_relations222(p.A, w00, w01, w11);
      const Relations222 bad = vandermonde_relations222(p.A, w00, 1.1 * w01, w11);
      CHECK(good.residual <= 1e-8 * std::max(1.0, good.scale));
      CHECK(bad.residual > 1e-6 * std::max(1.0, bad.scale));
      CHECK(std::abs(charpoly222(p.A(0, 0, 0), p.A(1, 1, 1)).evaluate(w00, w01, w11)) <
            1e-8 * std::max(1.0, std::pow(w11, 12) + std::pow(w01, 12)));
      ++checked;
    } catch (const Error& e) {
      REQUIRE(e.kind() == ErrorKind::DegenerateInstance);
    }
  }
}

TEST_CASE("variable counts") {
  CHECK(basis_count_formula(1) == 1);
  CHECK(basis_count_formula(2) == 8);
  CHECK(basis_count_formula(3) == 33);
  CHECK(basis_count_formula(4) == 96);
  CHECK(symmetric_scaling_variables(2) == std::vector<std::string>{"w00", "w01", "w11"});
  MatrixR w(2, 2);
  w << 1, 2, 2, 3;
  CHECK(symmetric_scaling_values(w) == std::vector<double>{1, 2, 3});
  CHECK(symmetric_scaling_matrix({1, 2, 3}, 2) == w);
  CHECK(error_kind([] { symmetric_scaling_matrix({1, 2}, 2); }) == ErrorKind::InvalidDimension);
}

TEST_CASE("spectral system shape") {
  std::mt19937_64 rng(55);
  for (std::size_t n : {2, 3}) {
    const PlantedHyper p = planted_hyper(n, rng);
    const MonomialSystem s = spectral_system(p.A, p.data.Q, static_cast<int>(n));
    CHECK(s.basis.size() == basis_count_formula(n));
    CHECK(s.rows.size() == n * cyclic_orbit_representatives(n).size());
    CHECK(s.warnings.empty());
    CHECK(s.coefficients.rows() == static_cast<Eigen::Index>(s.rows.size()));
    CHECK(s.coefficients.cols() == static_cast<Eigen::Index>(s.basis.size()));
    const MonomialSystem one = spectral_system(p.A, p.data.Q, 1);
    CHECK(one.underdetermined());
    CHECK_FALSE(one.warnings.empty());
  }
  const PlantedHyper p = planted_hyper(2, rng);
  CHECK(error_kind([&] { spectral_system(p.A, p.data.Q, 3); }) == ErrorKind::InvalidArgument);
  CHECK(error_kind([&] { spectral_system(random_hypermatrix(2, rng), p.data.Q, 2); }) == ErrorKind::Precondition);
  CHECK(error_kind([&] { spectral_system(delta(3), p.data.Q, 2); }) == ErrorKind::InvalidDimension);
}

TEST_CASE("delta has the all-ones scaling") {
  std::mt19937_64 rng(56);
  for (std::size_t n : {2, 3}) {
    const Hypermatrix3 q = orth_direct_sum(random_orth_params(n, rng), n);
    CHECK(max_abs_diff(HyperSpectralData{q, MatrixR::Ones(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))}
                           .reconstruct(),
                       delta(n)) < 1e-12);
    const MonomialSystem s = spectral_system(delta(n), q, static_cast<int>(n));
    const VectorR x = s.evaluate_basis(std::vector<double>(s.variables.size(), 1.0));
    CHECK(equation_residual(s, x) < 1e-12);
    CHECK(monomial_consistency_residual(s, x) == 0.0);
  }
}

TEST_CASE("system rows are linear in the basis monomials") {
  std::mt19937_64 rng(57);
  for (std::size_t n : {2, 3}) {
    for (int t = 0; t < 5; ++t) {
      const Hypermatrix3 q = orth_direct_sum(random_orth_params(n, rng), n);
      const MatrixR w = random_symmetric_positive(n, rng);
      const Hypermatrix3 a = HyperSpectralData{q, w}.reconstruct();
      const MonomialSystem s = spectral_system(a, q, static_cast<int>(n));
      const VectorR x = s.evaluate_basis(symmetric_scaling_values(w));
      CHECK((s.coefficients * x - s.rhs).cwiseAbs().maxCoeff() < 1e-10 * std::max(1.0, a.max_abs()));
      CHECK(monomial_consistency_residual(s, x) < 1e-12);
    }
  }
}

TEST_CASE("monomial consistency") {
  MonomialSystem s = two_variable_system({{6, 0}, {0, 6}, {4, 2}});
  CHECK(monomial_consistency_residual(s, vec({8, 27, 12})) == 0.0);
  CHECK(monomial_consistency_residual(s, vec({8, 27, 13})) > 0.1);
  CHECK(error_kind([&] { monomial_consistency_residual(s, vec({1, 2})); }) == ErrorKind::InvalidDimension);

  MonomialSystem odd = two_variable_system({{6, 0}, {0, 6}, {3, 3}});
  CHECK(monomial_consistency_residual(odd, vec({8, 27, -std::sqrt(8.0 * 27.0)})) < 1e-14);

  MonomialSystem missing = two_variable_system({{6, 0}, {3, 3}});
  CHECK(error_kind([&] { monomial_consistency_residual(missing, vec({1, 1})); }) == ErrorKind::IncompleteBasis);

  MonomialSystem mixed = two_variable_system({{2, 4}, {4, 2}, {3, 3}});
  const double x = 1.3, y = 0.7;
  const VectorR good = vec({x * x * std::pow(y, 4), std::pow(x, 4) * y * y, std::pow(x * y, 3)});
  CHECK(monomial_consistency_residual(mixed, good) < 1e-12);
  CHECK(monomial_consistency_residual(mixed, vec({good[0], good[1], 2 * good[2]})) > 0.2);
  CHECK(monomial_consistency_residual(mixed, vec({-good[0], good[1], good[2]})) > 0.1);
}

TEST_CASE("solving a planted system recovers W") {
  std::mt19937_64 rng(58);
  for (int t = 0; t < 10; ++t) {
    const PlantedHyper p = planted_hyper(2, rng);
    const MonomialSystem s = spectral_system(p.A, p.data.Q, 2);
    const MonomialSolution sol = solve_monomial_system(s);
    CHECK(sol.method == "constrained-lsq");
    CHECK(sol.equation_residual < 1e-10);
    CHECK(sol.consistency_residual < 1e-8);
    CHECK((recover_scaling(s, sol.values) - p.data.W).cwiseAbs().maxCoeff() < 1e-6);
    CHECK((symmetric_scaling_matrix(sol.variables, 2).cwiseAbs() - p.data.W).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("decomposability search") {
  SearchConfig cfg;
  cfg.seed = 5;
  cfg.restarts = 4;
  const SearchReport d = decomposability_search(delta(2), cfg);
  CHECK(d.decomposable);
  CHECK(d.restarts_run == 1);
  REQUIRE(d.W.has_value());
  CHECK((d.W->cwiseAbs() - MatrixR::Ones(2, 2)).cwiseAbs().maxCoeff() < 1e-6);

  std::mt19937_64 rng(59);
  const PlantedHyper p = planted_hyper(2, rng);
  cfg.restarts = 10;
  const SearchReport one = decomposability_search(p.A, cfg);
  CHECK(one.decomposable);
  CHECK(one.residual < 1e-6);
  CHECK(max_abs_diff(HyperSpectralData{one.Q, *one.W}.reconstruct(), p.A) < 1e-5);
  cfg.jobs = 3;
  const SearchReport many = decomposability_search(p.A, cfg);
  CHECK(many.residual == one.residual);
  CHECK(many.Q == one.Q);
  CHECK(many.restarts_run == one.restarts_run);

  CHECK(error_kind([&] { decomposability_search(random_hypermatrix(2, rng), cfg); }) == ErrorKind::Precondition);
}

TEST_CASE("general spectral data") {
  std::mt19937_64 rng(60);
  for (int t = 0; t < 5; ++t) {
    const Hypermatrix3 q = orth_direct_sum(random_orth_params(2, rng), 2);
    const MatrixR w = random_symmetric_positive(2, rng);
    const GeneralSpectralData g{q, cyclic_transpose(q, 2), cyclic_transpose(q), {w, w, w}};
    CHECK(max_abs_diff(g.reconstruct(), HyperSpectralData{q, w}.reconstruct()) < 1e-12);
  }
}

TEST_CASE("general spectral system") {
  std::mt19937_64 rng(61);
  const Hypermatrix3 q = orth_direct_sum(random_orth_params(2, rng), 2);
  const Hypermatrix3 u = cyclic_transpose(orth_direct_sum(random_orth_params(2, rng), 2), 2);
  const Hypermatrix3 v = complete_orthogonal_triple(q, u);
  const MonomialSystem trivial = general_spectral_system(delta(2), q, u, v, 2);
  CHECK(trivial.variables.size() == 9);
  CHECK(trivial.rows.size() == 16);
  const VectorR ones = trivial.evaluate_basis(std::vector<double>(9, 1.0));
  CHECK(equation_residual(trivial, ones) < 1e-12);

  for (int t = 0; t < 3; ++t) {
    const PlantedGeneral p = planted_general(2, rng);
    const MonomialSystem s = general_spectral_system(p.A, p.data.Q, p.data.U, p.data.V, 2);
    const MonomialSolution sol = solve_monomial_system(s);
    CHECK(sol.equation_residual < 1e-6);
    CHECK(sol.consistency_residual < 1e-6);
  }
  CHECK(error_kind([&] { general_spectral_system(delta(2), q, q, q, 2); }) == ErrorKind::Precondition);
}
