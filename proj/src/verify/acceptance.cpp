#include "bmspec/verify/acceptance.hpp"

#include "bmspec/elim_hyper.hpp"
#include "bmspec/elim_matrix.hpp"
#include "bmspec/error.hpp"
#include "bmspec/instances.hpp"
#include "bmspec/io.hpp"
#include "bmspec/orthogonal.hpp"
#include "bmspec/spectral.hpp"
#include "bmspec/verify/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <random>

namespace bmspec::verify {

namespace {

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::mt19937_64 stream(std::uint64_t seed, int criterion) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(criterion)};
  return std::mt19937_64(seq);
}

VectorR gaussian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  VectorR v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = nd(rng);
  return v;
}

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome c1_orthogonal_family(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    std::array<double, 6> r{};
    for (double& v : r) v = unif(rng);
    worst = std::max(worst, orthogonality_residual(orth222(r)));
  }
  const Hypermatrix3 q = orth222({0, 0, 0, 0, 0, 0});
  const double c = std::pow(2.0, -1.0 / 3.0);
  const double expect[8] = {c, 1, c, 1, -1, c, 1, c};
  double closed = 0.0;
  for (std::size_t t = 0; t < 8; ++t) closed = std::max(closed, std::abs(q.data()[t] - expect[t]));
  return {worst < 1e-9 && closed <= 1e-15, "max residual " + g(worst) + ", r=0 closed-form error " + g(closed)};
}

Outcome c2_direct_sums(std::mt19937_64& rng) {
  double worst = 0.0;
  std::size_t stray = 0;
  for (std::size_t n : {4, 5, 6}) {
    for (int t = 0; t < 20; ++t) {
      const Hypermatrix3 q = orth_direct_sum(random_orth_params(n, rng), n);
      worst = std::max(worst, orthogonality_residual(q));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k)
            if (!(i / 2 == j / 2 && j / 2 == k / 2) && q(i, j, k) != 0.0) ++stray;
    }
  }
  return {worst < 1e-9 && stray == 0, "max residual " + g(worst) + ", nonzero off-block entries " + std::to_string(stray)};
}

Outcome c3_resolution(std::mt19937_64& rng) {
  double worst_matrix = 0.0, worst_hyper = 0.0;
  for (std::size_t n : {2, 4}) {
    for (int t = 0; t < 100; ++t) {
      const MatrixR qm = random_orthogonal_matrix(n, rng);
      const VectorR u = gaussian(n, rng), v = gaussian(n, rng);
      worst_matrix = std::max(worst_matrix, matrix_resolution_residual(qm, u, v) / std::max(1.0, u.norm() * v.norm()));
      const Hypermatrix3 q = orth_direct_sum(random_orth_params(n, rng), n);
      const VectorR x = gaussian(n, rng), y = gaussian(n, rng), z = gaussian(n, rng);
      worst_hyper = std::max(worst_hyper,
                             resolution_residual(q, x, y, z) / std::max(1.0, x.norm() * y.norm() * z.norm()));
    }
  }
  return {worst_matrix < 1e-9 && worst_hyper < 1e-9,
          "relative residual matrix " + g(worst_matrix) + ", hypermatrix " + g(worst_hyper)};
}

struct MatrixInstance {
  MatrixR a;
  JacobiResult oracle;
  VectorR lambda;  // sqrt of oracle eigenvalues
};

std::vector<MatrixInstance> matrix_instances(std::mt19937_64& rng) {
  std::vector<MatrixInstance> out;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 4);
    MatrixInstance m;
    m.a = random_matrix_spectral(n, rng).reconstruct();
    m.a = 0.5 * (m.a + m.a.transpose());
    m.oracle = jacobi_eigen(m.a);
    m.lambda = m.oracle.values.cwiseMax(0.0).cwiseSqrt();
    out.push_back(std::move(m));
  }
  return out;
}

Outcome c4_id_route(const std::vector<MatrixInstance>& inst) {
  double worst = 0.0, worst_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < inst.size(); ++t) {
    const auto& m = inst[t];
    const double consistent = id_residual(m.a, m.lambda);
    worst = std::max(worst, consistent / m.a.norm());
    VectorR bad = m.lambda;
    bad[static_cast<Eigen::Index>(t % static_cast<std::size_t>(bad.size()))] *= 1.1;
    const double perturbed = id_residual(m.a, bad);
    worst_ratio = std::min(worst_ratio, consistent == 0.0 ? std::numeric_limits<double>::infinity() : perturbed / consistent);
  }
  return {worst < 1e-8 && worst_ratio >= 1e3,
          "max residual/||A|| " + g(worst) + ", min perturbed/consistent ratio " + g(worst_ratio)};
}

Outcome c5_iq_route(const std::vector<MatrixInstance>& inst) {
  double worst_cons = 0.0, worst_lambda = 0.0;
  int failures = 0;
  for (const auto& m : inst) {
    try {
      const IqSolution sol = iq_solve(m.a, m.oracle.vectors);
      const IqConsistency c = iq_consistency(sol.mu, default_consistency_tol(m.a));
      const double norm2 = m.a.norm() * m.a.norm();
      worst_cons = std::max(worst_cons, c.residual / norm2);
      if (!c.consistent) {
        ++failures;
        continue;
      }
      for (Eigen::Index k = 0; k < m.lambda.size(); ++k)
        worst_lambda = std::max(worst_lambda, std::abs(std::abs(c.lambda[k]) - m.lambda[k]) / m.lambda[k]);
    } catch (const Error&) {
      ++failures;
    }
  }
  MatrixR q(2, 2);
  q << 0.6, 0.8, -0.8, 0.6;
  const MatrixR a = MatrixSpectralData{q, (VectorR(2) << 1.0, 2.0).finished()}.reconstruct();
  const MuTable mu = iq_solve(a, q).mu;
  const double worked = std::max({std::abs(mu(0, 0) - 1.0), std::abs(mu(0, 1) - 2.0), std::abs(mu(1, 1) - 4.0)});
  return {failures == 0 && worst_cons < 1e-8 && worst_lambda < 1e-6 && worked < 1e-10,
          "failures " + std::to_string(failures) + ", consistency/||A||^2 " + g(worst_cons) + ", lambda rel err " +
              g(worst_lambda) + ", worked example err " + g(worked)};
}

// Sum of |term| at the point: the cancellation scale of a generator value.
double term_scale(const MultiPoly& p, const std::vector<double>& x) {
  double s = 0.0;
  for (const auto& [e, c] : p.terms()) {
    double term = std::abs(c.get_d());
    for (std::size_t v = 0; v < e.size(); ++v) term *= std::pow(std::abs(x[v]), e[v]);
    s += term;
  }
  return std::max(s, 1e-300);
}

Outcome c6_symbolic_generators(std::mt19937_64& rng) {
  const std::vector<MultiPoly> gens = id_generators_symbolic(2);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI), lam(0.5, 2.0), bump(1.1, 1.5);
  double worst_consistent = 0.0, weakest_inconsistent = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 1000; ++t) {
    const double th = angle(rng);
    double l0 = lam(rng), l1 = lam(rng);
    while (std::abs(l0 * l0 - l1 * l1) < 0.1) l1 = lam(rng);
    MatrixR q(2, 2);
    q << std::cos(th), std::sin(th), -std::sin(th), std::cos(th);
    const MatrixR a = MatrixSpectralData{q, (VectorR(2) << l0, l1).finished()}.reconstruct();
    std::vector<double> x{a(0, 0), a(0, 1), a(1, 1), l0, l1};
    double rel = 0.0;
    for (const auto& p : gens) rel = std::max(rel, std::abs(p.evaluate(x)) / term_scale(p, x));
    worst_consistent = std::max(worst_consistent, rel);
    double l1b = l1 * bump(rng);
    while (std::abs(l1b * l1b - l0 * l0) < 0.1) l1b = l1 * bump(rng);
    x[4] = l1b;
    rel = 0.0;
    for (const auto& p : gens) rel = std::max(rel, std::abs(p.evaluate(x)) / term_scale(p, x));
    weakest_inconsistent = std::min(weakest_inconsistent, rel);
  }
  return {worst_consistent < 1e-8 && weakest_inconsistent > 1e-6,
          "consistent max " + g(worst_consistent) + ", inconsistent min " + g(weakest_inconsistent) + " (relative)"};
}

Outcome c7_roundtrip222(std::mt19937_64& rng) {
  double worst_rel = 0.0, worst_poly = 0.0;
  int skipped = 0;
  for (int t = 0; t < 200;) {
    const PlantedHyper p = planted_hyper(2, rng, 0.5);
    const double w00 = p.data.W(0, 0), w01 = p.data.W(0, 1), w11 = p.data.W(1, 1);
    Relations222 rel;
    try {
      rel = vandermonde_relations222(p.A, w00, w01, w11);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateInstance) throw;
      ++skipped;
      continue;
    }
    worst_rel = std::max(worst_rel, rel.residual / std::max(1.0, rel.scale));
    const Charpoly222 cp = charpoly222(p.A(0, 0, 0), p.A(1, 1, 1));
    const double u = std::pow(w00, 6), v = std::pow(w01, 6), s = std::pow(w11, 6);
    const double scale = std::max({1.0, std::abs(u * s), v * v, std::abs(v * (cp.a000 + cp.a111)),
                                   std::abs(cp.a111 * u), std::abs(cp.a000 * s)});
    worst_poly = std::max(worst_poly, std::abs(cp.evaluate(w00, w01, w11)) / scale);
    ++t;
  }
  Fibers222 f;
  f.q00 = f.q10 = (VectorR(2) << 1, 0).finished();
  f.q01 = f.q11 = (VectorR(2) << 0, 1).finished();
  const Hypermatrix3 diag = assemble222(f, (VectorR(2) << 1, 2).finished(), (VectorR(2) << 2, 3).finished());
  bool raised = false;
  try {
    vandermonde_relations222(diag, 1, 2, 3);
  } catch (const Error& e) {
    raised = e.kind() == ErrorKind::DegenerateInstance;
  }
  return {worst_rel < 1e-8 && worst_poly < 1e-8 && raised,
          "relations " + g(worst_rel) + ", charpoly " + g(worst_poly) + " (relative), near-degenerate redraws " +
              std::to_string(skipped) + ", diagonal class " + (raised ? "raises degenerate-instance" : "did not raise")};
}

Outcome c8_background(std::mt19937_64& rng) {
  double worst_orth = 0.0, worst_oracle = 0.0;
  for (std::size_t n = 1; n <= 6; ++n) {
    const Hypermatrix3 q = orth_direct_sum(random_orth_params(n, rng), n);
    for (const auto& u : u_sequence(q, static_cast<int>(n) + 1)) worst_orth = std::max(worst_orth, max_abs_diff(u, delta(n)));
  }
  for (std::size_t n : {2, 3}) {
    for (int t = 0; t < 10; ++t) {
      const Hypermatrix3 q = random_hypermatrix(n, rng);
      const Hypermatrix3 q2 = cyclic_transpose(q, 2), q1 = cyclic_transpose(q, 1);
      const auto us = u_sequence(q, 3);
      const Hypermatrix3 u1 = naive_bm_product(q, q2, q1);
      const Hypermatrix3 u2 = naive_bm_product_bg(u1, q, q2, q1);
      worst_oracle = std::max({worst_oracle, max_abs_diff(us[1], u1) / std::max(1.0, u1.max_abs()),
                               max_abs_diff(us[2], u2) / std::max(1.0, u2.max_abs())});
    }
  }
  return {worst_orth < 1e-9 && worst_oracle < 1e-12,
          "orthogonal |U_k - delta| " + g(worst_orth) + ", generic vs oracle " + g(worst_oracle)};
}

Outcome c9_variable_count(std::mt19937_64& rng) {
  std::string detail;
  bool ok = true;
  for (std::size_t n : {2, 3}) {
    const PlantedHyper p = planted_hyper(n, rng);
    const MonomialSystem sys = spectral_system(p.A, p.data.Q, static_cast<int>(n));
    const std::size_t want = basis_count_formula(n);
    ok = ok && sys.basis.size() == want && sys.warnings.empty();
    detail += (detail.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + ": " +
              std::to_string(sys.basis.size()) + " (expected " + std::to_string(want) + ")";
    for (const auto& w : sys.warnings) detail += "; warning: " + w;
  }
  return {ok, detail};
}

Outcome c10_decomposability(std::uint64_t seed, std::mt19937_64& rng, int jobs) {
  int found = 0, ranked = 0, random_decomposable = 0;
  const int trials = 50;
  for (int t = 0; t < trials; ++t) {
    const PlantedHyper p = planted_hyper(2, rng);
    const Hypermatrix3 r = random_cyclic_symmetric(2, rng);
    SearchConfig cfg;
    cfg.jobs = jobs;
    cfg.seed = seed * 1000003ULL + static_cast<std::uint64_t>(2 * t);
    const SearchReport planted = decomposability_search(p.A, cfg);
    cfg.seed += 1;
    const SearchReport random = decomposability_search(r, cfg);
    if (planted.residual < 1e-6) ++found;
    if (planted.residual < random.residual) ++ranked;
    if (random.decomposable) ++random_decomposable;
  }
  const bool ok = found >= 45 && ranked >= 48;
  return {ok, "planted found " + std::to_string(found) + "/50 (need 45), ranked below random " +
                  std::to_string(ranked) + "/50 (need 48), random instances decomposable " +
                  std::to_string(random_decomposable) + "/50"};
}

Outcome c11_bounds(std::mt19937_64& rng) {
  long matrix_found = 0, matrix_bad = 0;
  for (int t = 0; t < 100; ++t) {
    const MatrixSpectralData d = random_matrix_spectral(2 + static_cast<std::size_t>(t % 4), rng);
    for (const auto& rep : sample_matrix_bounds(d, 100, 100000, rng).reports) {
      ++matrix_found;
      if (!rep.holds) ++matrix_bad;
    }
  }
  long hyper_found = 0, hyper_bad = 0;
  for (int t = 0; t < 20; ++t) {
    const PlantedHyper p = planted_hyper(2, rng);
    for (const auto& rep : sample_hyper_bounds(p.data, 5, 100000, rng).reports) {
      ++hyper_found;
      if (!rep.holds) ++hyper_bad;
    }
  }
  HyperSpectralData eq{orth222({0.3, -0.2, 0.1, 0.5, -0.4, 0.2}), MatrixR(2, 2)};
  eq.W << 0.8, 1.2, 0.8, 1.2;
  double gap = 0.0;
  for (int t = 0; t < 20; ++t) {
    const VectorR x = gaussian(2, rng), y = gaussian(2, rng), z = gaussian(2, rng);
    const BoundReport rep = hyper_bound_check(eq, x, y, z);
    const double scale = std::max(1.0, std::abs(rep.value));
    gap = std::max({gap, std::abs(rep.upper - rep.lower) / scale, std::abs(rep.value - rep.lower) / scale});
  }
  const bool ok = matrix_found >= 10000 && matrix_bad == 0 && hyper_found >= 100 && hyper_bad == 0 && gap < 1e-12;
  return {ok, "matrix violations " + std::to_string(matrix_bad) + "/" + std::to_string(matrix_found) +
                  ", hypermatrix violations " + std::to_string(hyper_bad) + "/" + std::to_string(hyper_found) +
                  ", equal-slice gap " + g(gap)};
}

Outcome c12_svd(std::mt19937_64& rng) {
  double worst_fit = 0.0, worst_alpha = 0.0;
  for (std::size_t n : {2, 3}) {
    for (int t = 0; t < 10; ++t) {
      const Hypermatrix3 qt = random_hypermatrix(n, rng), et = random_hypermatrix(n, rng), ft = random_hypermatrix(n, rng);
      worst_fit = std::max(worst_fit, fit_alphas(bm_product(qt, et, ft), qt, et, ft).residual);
      const AlphaFit single = fit_alphas(3.0 * bm_summand(qt, et, ft, 0), qt, et, ft);
      worst_alpha = std::max(worst_alpha, std::abs(single.alpha[0] - 3.0));
    }
  }
  return {worst_fit < 1e-8 && worst_alpha < 1e-8, "fit residual " + g(worst_fit) + ", alpha_0 error " + g(worst_alpha)};
}

Outcome c13_general(std::mt19937_64& rng) {
  double worst_uv = 0.0, worst_general = 0.0;
  for (int t = 0; t < 20; ++t) {
    const PlantedBiorthogonal p = planted_biorthogonal(2, rng);
    const UvSolution s = uv_solve(p.A, p.U, p.V);
    for (Eigen::Index i = 0; i < 2; ++i)
      for (Eigen::Index j = 0; j < 2; ++j) {
        const double want = p.lambda[i] * p.lambda[j];
        worst_uv = std::max(worst_uv, std::abs(s.mu(i, j) - want) / std::max(1.0, std::abs(want)));
      }
  }
  for (int t = 0; t < 10; ++t) {
    const PlantedGeneral p = planted_general(2, rng);
    const MonomialSystem sys = general_spectral_system(p.A, p.data.Q, p.data.U, p.data.V, 2);
    const MonomialSolution sol = solve_monomial_system(sys);
    worst_general = std::max({worst_general, sol.equation_residual, sol.consistency_residual});
  }
  return {worst_uv < 1e-8 && worst_general < 1e-6,
          "uv_solve error " + g(worst_uv) + ", general system residual " + g(worst_general)};
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

Outcome c14_cli(std::uint64_t seed, std::mt19937_64& rng, bool earlier_green, int jobs) {
  Hypermatrix3 h = random_hypermatrix(3, rng, -1e3, 1e3);
  const double specials[] = {0.1, 1.0 / 3.0, -0.0, 5e-324, std::numeric_limits<double>::max(), -1e-300, M_PI,
                             2.2250738585072014e-308, 9007199254740993.0};
  for (std::size_t t = 0; t < std::size(specials); ++t) h.data()[t] = specials[t];
  bool roundtrip = true;
  const HypermatrixDocument doc = HypermatrixDocument::from(h, {{"seed", seed}});
  const std::string text = to_json_text(doc);
  roundtrip = roundtrip && bit_equal(parse_document(text).data, h.data()) && to_json_text(parse_document(text)) == text;
  const MatrixR m = MatrixR::Random(3, 4);
  const HypermatrixDocument mdoc = HypermatrixDocument::from(m);
  roundtrip = roundtrip && parse_document(to_json_text(mdoc)).matrix() == m;

  auto planted_text = [&](std::uint64_t s) {
    std::mt19937_64 r(s);
    return to_json_text(HypermatrixDocument::from(planted_hyper(2, r).A, {{"seed", s}}));
  };
  bool deterministic = planted_text(seed) == planted_text(seed);
  std::mt19937_64 r(seed);
  const Hypermatrix3 a = random_cyclic_symmetric(2, r);
  SearchConfig cfg;
  cfg.seed = seed;
  cfg.restarts = 6;
  cfg.jobs = 1;
  const SearchReport one = decomposability_search(a, cfg);
  cfg.jobs = std::max(2, jobs);
  const SearchReport many = decomposability_search(a, cfg);
  deterministic = deterministic && one.residual == many.residual && bit_equal(one.Q.data(), many.Q.data());
  return {roundtrip && deterministic && earlier_green,
          std::string("round trip ") + (roundtrip ? "exact" : "MISMATCH") + ", determinism " +
              (deterministic ? "ok" : "MISMATCH") + ", criteria 1-13 " + (earlier_green ? "green" : "not all green")};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, std::ostream& out, int jobs) {
  std::vector<CriterionResult> results;
  std::vector<MatrixInstance> matrix_inst;
  auto run = [&](int id, const std::string& name, const std::function<Outcome(std::mt19937_64&)>& body) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    auto rng = stream(seed, id);
    const auto start = std::chrono::steady_clock::now();
    try {
      const Outcome o = body(rng);
      r.pass = o.pass;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char head[96];
    std::snprintf(head, sizeof head, "[%s] %2d %-28s (%.2fs) ", r.pass ? "PASS" : "FAIL", id, name.c_str(), r.seconds);
    out << head << r.detail << std::endl;
    results.push_back(r);
  };

  run(1, "orthogonal family", c1_orthogonal_family);
  run(2, "direct sums", c2_direct_sums);
  run(3, "resolution of identity", c3_resolution);
  {
    auto rng = stream(seed, 4);
    matrix_inst = matrix_instances(rng);
  }
  run(4, "matrix I_D route", [&](std::mt19937_64&) { return c4_id_route(matrix_inst); });
  run(5, "matrix I_Q route", [&](std::mt19937_64&) { return c5_iq_route(matrix_inst); });
  run(6, "symbolic n=2 generators", c6_symbolic_generators);
  run(7, "2x2x2 round trip", c7_roundtrip222);
  run(8, "background recurrence", c8_background);
  run(9, "variable count", c9_variable_count);
  run(10, "decomposability", [&](std::mt19937_64& rng) { return c10_decomposability(seed, rng, jobs); });
  run(11, "spectral bounds", c11_bounds);
  run(12, "symmetrization fit", c12_svd);
  run(13, "general case", c13_general);
  const bool green = all_passed(results);
  run(14, "serialization and selftest", [&](std::mt19937_64& rng) { return c14_cli(seed, rng, green, jobs); });
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass; });
}

}  // namespace bmspec::verify
