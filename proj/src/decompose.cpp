#include "bmspec/elim_hyper.hpp"
#include "bmspec/error.hpp"
#include "bmspec/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

namespace bmspec {

namespace {

struct Candidate {
  double total = std::numeric_limits<double>::infinity();
  double equation = std::numeric_limits<double>::infinity();
  double consistency = std::numeric_limits<double>::infinity();
};

Candidate score(const Hypermatrix3& a, const std::vector<double>& r, std::size_t n, int levels) {
  Candidate c;
  try {
    const Hypermatrix3 q = orth_direct_sum(OrthParams::from_flat(r, n), n);
    const MonomialSystem s = spectral_system(a, q, levels);
    const MonomialSolution sol = solve_monomial_system(s, 1);
    c.equation = sol.equation_residual;
    c.consistency = sol.consistency_residual;
    c.total = c.equation + c.consistency;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NumericRange) throw;
  }
  return c;
}

struct RestartResult {
  std::vector<double> r;
  Candidate best;
  long evaluations = 0;
};

RestartResult run_restart(const Hypermatrix3& a, std::size_t n, int levels, const SearchConfig& cfg, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed & 0xffffffffu), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> x0(orth_param_count(n));
  for (double& v : x0) v = unif(rng);
  auto f = [&](const std::vector<double>& r) { return score(a, r, n, levels).total; };
  const NelderMeadResult nm = nelder_mead(f, x0, 0.5, cfg.budget, cfg.early_stop);
  RestartResult out;
  out.r = nm.x;
  out.best = score(a, nm.x, n, levels);
  out.evaluations = nm.evaluations + 1;
  return out;
}

}  // namespace

SearchReport decomposability_search(const Hypermatrix3& a, const SearchConfig& cfg) {
  const std::size_t n = a.side();
  require_cyclic_symmetry(a);
  const int levels = cfg.levels > 0 ? cfg.levels : static_cast<int>(n);
  const int restarts = std::max(1, cfg.restarts);
  const int jobs = std::max(1, cfg.jobs);

  // Restarts are consumed in index order; everything after the first one that
  // reaches early_stop is discarded so the report does not depend on `jobs`.
  std::vector<RestartResult> done;
  for (int first = 0; first < restarts; first += jobs) {
    const int count = std::min(jobs, restarts - first);
    std::vector<RestartResult> batch(static_cast<std::size_t>(count));
    if (count == 1) {
      batch[0] = run_restart(a, n, levels, cfg, first);
    } else {
      std::vector<std::thread> workers;
      for (int t = 0; t < count; ++t)
        workers.emplace_back([&, t] { batch[static_cast<std::size_t>(t)] = run_restart(a, n, levels, cfg, first + t); });
      for (auto& w : workers) w.join();
    }
    bool stop = false;
    for (auto& r : batch) {
      done.push_back(std::move(r));
      if (done.back().best.total <= cfg.early_stop) {
        stop = true;
        break;
      }
    }
    if (stop) break;
  }

  SearchReport rep;
  const RestartResult* best = &done.front();
  for (const auto& r : done) {
    rep.evaluations += r.evaluations;
    if (r.best.total < best->best.total) best = &r;
  }
  rep.restarts_run = static_cast<int>(done.size());
  rep.best_params = OrthParams::from_flat(best->r, n);
  rep.Q = orth_direct_sum(rep.best_params, n);
  rep.residual = best->best.total;
  rep.equation_residual = best->best.equation;
  rep.consistency_residual = best->best.consistency;
  rep.decomposable = rep.residual < cfg.tol;
  if (rep.decomposable) {
    const MonomialSystem s = spectral_system(a, rep.Q, levels);
    const MonomialSolution sol = solve_monomial_system(s, 1);
    rep.W = recover_scaling(s, sol.values);
  }
  return rep;
}

}  // namespace bmspec
