#include "commands.hpp"

#include "bmspec/elim_hyper.hpp"
#include "bmspec/elim_matrix.hpp"
#include "bmspec/error.hpp"
#include "bmspec/format.hpp"
#include "bmspec/instances.hpp"
#include "bmspec/io.hpp"
#include "bmspec/orthogonal.hpp"
#include "bmspec/spectral.hpp"
#include "bmspec/verify/acceptance.hpp"

#include <functional>
#include <iostream>
#include <random>
#include <sstream>

namespace bmspec::cli {

using Report = nlohmann::ordered_json;
using nlohmann::json;

namespace {

void flatten(const std::string& prefix, const Report& v, std::ostream& out) {
  if (v.is_object()) {
    for (const auto& [k, sub] : v.items()) flatten(prefix.empty() ? k : prefix + "." + k, sub, out);
    return;
  }
  out << prefix << ": ";
  std::function<void(const Report&)> scalar = [&](const Report& s) {
    if (s.is_number_float()) {
      out << shortest_repr(s.get<double>());
    } else if (s.is_string()) {
      out << s.get<std::string>();
    } else if (s.is_array()) {
      out << "[";
      for (std::size_t t = 0; t < s.size(); ++t) {
        if (t) out << ", ";
        scalar(s[t]);
      }
      out << "]";
    } else {
      out << s.dump();
    }
  };
  scalar(v);
  out << "\n";
}

Report rows_of(const MatrixR& m) {
  Report rows = Report::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Report row = Report::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

MatrixR matrix_of(const json& rows) {
  if (!rows.is_array() || rows.empty()) throw Error(ErrorKind::Parse, "expected a non-empty list of rows");
  MatrixR m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw Error(ErrorKind::Parse, "ragged matrix rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j].get<double>();
  }
  return m;
}

HypermatrixDocument load(const std::string& file) { return parse_document(read_text(file), file); }

Hypermatrix3 load_hyper(const std::string& file) {
  const Hypermatrix3 h = load(file).hypermatrix();
  if (!h.is_cubic()) throw Error(ErrorKind::InvalidDimension, file + ": hypermatrix must be cubic");
  return h;
}

std::mt19937_64 rng_for(const Globals& g) { return std::mt19937_64(g.seed); }

std::string truth_path(const Globals& g, const std::string& explicit_path) {
  if (!explicit_path.empty()) return explicit_path;
  if (g.out != "-" && !g.out.empty()) return g.out + ".truth.json";
  return {};
}

int verdict(bool pass) { return pass ? kOk : kVerdictFail; }

void emit(const Globals& g, const Report& report) {
  if (g.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    flatten("", report, std::cout);
  }
}

}  // namespace

int gen_orth(const Globals& g, const GenOrthArgs& a) {
  auto rng = rng_for(g);
  const OrthParams p = a.params.empty() ? random_orth_params(a.n, rng) : OrthParams::from_flat(a.params, a.n);
  const Hypermatrix3 q = orth_direct_sum(p, a.n);
  json meta = {{"kind", "orthogonal"}, {"seed", g.seed}, {"params", p.flat()}};
  write_text(g.out, to_json_text(HypermatrixDocument::from(q, meta)));
  return kOk;
}

int gen_planted(const Globals& g, const GenPlantedArgs& a) {
  auto rng = rng_for(g);
  json truth = {{"kind", "planted-" + a.kind}, {"n", a.n}, {"seed", g.seed}};
  std::string doc;
  if (a.kind == "hyper") {
    const PlantedHyper p = planted_hyper(a.n, rng);
    truth["params"] = p.params.flat();
    truth["W"] = json::parse(rows_of(p.data.W).dump());
    doc = to_json_text(HypermatrixDocument::from(p.A, {{"kind", "planted-hyper"}, {"seed", g.seed}}));
  } else if (a.kind == "matrix") {
    const MatrixSpectralData d = random_matrix_spectral(a.n, rng);
    truth["Q"] = json::parse(rows_of(d.Q).dump());
    truth["lambda"] = std::vector<double>(d.lambda.data(), d.lambda.data() + d.lambda.size());
    doc = to_json_text(HypermatrixDocument::from(d.reconstruct(), {{"kind", "planted-matrix"}, {"seed", g.seed}}));
  } else if (a.kind == "general") {
    const PlantedGeneral p = planted_general(a.n, rng);
    truth["Q"] = p.data.Q.data();
    truth["U"] = p.data.U.data();
    truth["V"] = p.data.V.data();
    for (std::size_t t = 0; t < 3; ++t) truth["W" + std::to_string(t)] = json::parse(rows_of(p.data.W[t]).dump());
    doc = to_json_text(HypermatrixDocument::from(p.A, {{"kind", "planted-general"}, {"seed", g.seed}}));
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown planted kind '" + a.kind + "' (hyper, matrix, general)");
  }
  write_text(g.out, doc);
  const std::string tp = truth_path(g, a.truth);
  if (tp.empty()) {
    std::cerr << "note: no --truth path and output is stdout; ground truth not written\n";
  } else {
    write_text(tp, truth.dump(2) + "\n");
  }
  return kOk;
}

int check_orth(const Globals& g, const std::string& file) {
  const Hypermatrix3 q = load_hyper(file);
  const double tol = g.tol_or(1e-9);
  const double r = orthogonality_residual(q);
  Report rep;
  rep["n"] = q.side();
  rep["orthogonality_residual"] = r;
  rep["tol"] = tol;
  rep["verdict"] = r < tol ? "orthogonal" : "not orthogonal";
  emit(g, rep);
  return verdict(r < tol);
}

int elim_matrix(const Globals& g, const ElimMatrixArgs& a) {
  const MatrixR am = load(a.file).matrix();
  if (am.rows() != am.cols()) throw Error(ErrorKind::InvalidDimension, a.file + ": matrix must be square");
  const auto n = static_cast<std::size_t>(am.rows());
  Report rep;
  MatrixR q;
  if (!a.q.empty()) {
    q = load(a.q).matrix();
    rep["q_source"] = a.q;
  } else {
    auto rng = rng_for(g);
    q = random_orthogonal_matrix(n, rng);
    rep["q_source"] = "random orthogonal probe, seed " + std::to_string(g.seed);
  }
  const double scale = std::max(1.0, am.cwiseAbs().maxCoeff());
  const IqSolution sol = iq_solve(am, q);
  const IqConsistency cons = iq_consistency(sol.mu, g.tol_or(default_consistency_tol(am)));
  Report mu;
  for (const auto& [ij, v] : sol.mu.mu) mu[std::to_string(ij.first) + "," + std::to_string(ij.second)] = v;
  rep["mu"] = mu;
  rep["diagonal_residual"] = sol.diagonal_residual;
  rep["cross_coupling"] = sol.cross_coupling;
  rep["consistency_residual"] = cons.residual;
  rep["offdiag_residual"] = offdiag_residual(am, q);
  if (cons.consistent)
    rep["lambda"] = std::vector<double>(cons.lambda.data(), cons.lambda.data() + cons.lambda.size());
  bool pass = cons.consistent && sol.diagonal_residual <= 1e-8 * scale;
  if (!a.lambda.empty()) {
    const VectorR l = Eigen::Map<const VectorR>(a.lambda.data(), static_cast<Eigen::Index>(a.lambda.size()));
    const double idr = id_residual(am, l);
    rep["id_residual"] = idr;
    pass = pass && idr <= 1e-8 * scale;
  }
  rep["verdict"] = pass ? "consistent" : "inconsistent";
  emit(g, rep);
  return verdict(pass);
}

int elim_hyper(const Globals& g, const ElimHyperArgs& a) {
  const Hypermatrix3 am = load_hyper(a.file);
  const std::size_t n = am.side();
  Report rep;
  Hypermatrix3 q;
  if (!a.q.empty()) {
    q = load_hyper(a.q);
    rep["q_source"] = a.q;
  } else if (!a.params.empty()) {
    q = orth_direct_sum(OrthParams::from_flat(a.params, n), n);
    rep["q_source"] = "params";
  } else {
    auto rng = rng_for(g);
    q = orth_direct_sum(random_orth_params(n, rng), n);
    rep["q_source"] = "random family probe, seed " + std::to_string(g.seed);
  }
  const int levels = a.levels > 0 ? a.levels : static_cast<int>(n);
  const MonomialSystem sys = spectral_system(am, q, levels);
  const MonomialSolution sol = solve_monomial_system(sys);
  const double tol = g.tol_or(1e-6);
  const double total = sol.equation_residual + sol.consistency_residual;
  rep["n"] = n;
  rep["levels"] = levels;
  rep["rows"] = sys.rows.size();
  rep["basis_size"] = sys.basis.size();
  rep["expected_basis_size"] = sys.expected_basis_size;
  rep["warnings"] = sys.warnings;
  rep["method"] = sol.method;
  rep["equation_residual"] = sol.equation_residual;
  rep["consistency_residual"] = sol.consistency_residual;
  rep["verdict"] = total < tol ? "consistent" : "inconsistent";
  if (total < tol) rep["W"] = rows_of(recover_scaling(sys, sol.values));
  emit(g, rep);
  return verdict(total < tol);
}

int charpoly(const Globals& g, const CharpolyArgs& a) {
  double a000 = a.a000, a111 = a.a111;
  if (!a.file.empty()) {
    const Hypermatrix3 h = load_hyper(a.file);
    if (h.side() != 2) throw Error(ErrorKind::InvalidDimension, a.file + ": charpoly needs a 2x2x2 hypermatrix");
    if (!a.have_a000) a000 = h(0, 0, 0);
    if (!a.have_a111) a111 = h(1, 1, 1);
  } else if (!a.have_a000 || !a.have_a111) {
    throw Error(ErrorKind::InvalidArgument, "charpoly needs a file or both --a000 and --a111");
  }
  const Charpoly222 cp = charpoly222(a000, a111);
  Report rep;
  rep["a000"] = a000;
  rep["a111"] = a111;
  rep["polynomial"] = cp.pretty();
  if (!a.w.empty()) {
    if (a.w.size() != 3) throw Error(ErrorKind::InvalidArgument, "--w takes w00,w01,w11");
    rep["value"] = cp.evaluate(a.w[0], a.w[1], a.w[2]);
  }
  emit(g, rep);
  return kOk;
}

namespace {

SearchConfig search_config(const Globals& g, const SearchArgs& a) {
  SearchConfig cfg;
  cfg.restarts = a.restarts;
  cfg.budget = a.budget;
  cfg.levels = a.levels;
  cfg.seed = g.seed;
  cfg.jobs = g.jobs;
  cfg.tol = g.tol_or(cfg.tol);
  return cfg;
}

Report search_report(const SearchReport& r) {
  Report rep;
  rep["residual"] = r.residual;
  rep["equation_residual"] = r.equation_residual;
  rep["consistency_residual"] = r.consistency_residual;
  rep["verdict"] = r.decomposable ? "decomposable" : "not found (inconclusive)";
  rep["restarts_run"] = r.restarts_run;
  rep["evaluations"] = r.evaluations;
  rep["params"] = r.best_params.flat();
  if (r.W) rep["W"] = rows_of(*r.W);
  return rep;
}

}  // namespace

int decompose(const Globals& g, const SearchArgs& a) {
  const Hypermatrix3 am = load_hyper(a.file);
  const SearchReport r = decomposability_search(am, search_config(g, a));
  emit(g, search_report(r));
  return verdict(r.decomposable);
}

int svd3(const Globals& g, const SearchArgs& a) {
  const Hypermatrix3 am = load_hyper(a.file);
  const Svd3Report r = symmetrization_svd(am, search_config(g, a));
  Report rep;
  rep["symmetry_residuals"] = {r.sym.residual0, r.sym.residual1, r.sym.residual2};
  for (std::size_t t = 0; t < 3; ++t) rep["search" + std::to_string(t)] = search_report(r.searches[t]);
  rep["factors_found"] = r.factors_found;
  if (r.factors_found) {
    rep["alpha"] = std::vector<double>(r.fit.alpha.data(), r.fit.alpha.data() + r.fit.alpha.size());
    rep["fit_residual"] = r.fit.residual;
    rep["fit_degenerate"] = r.fit.degenerate;
  }
  emit(g, rep);
  return verdict(r.factors_found);
}

int bounds(const Globals& g, const BoundsArgs& a) {
  const json truth = json::parse(read_text(a.truth));
  const std::string kind = truth.value("kind", "");
  auto rng = rng_for(g);
  const double tol = g.tol_or(1e-10);
  AdmissibleSearch found;
  if (kind == "planted-hyper") {
    const auto n = truth.at("n").get<std::size_t>();
    HyperSpectralData d;
    d.Q = orth_direct_sum(OrthParams::from_flat(truth.at("params").get<std::vector<double>>(), n), n);
    d.W = matrix_of(truth.at("W"));
    if (!sort_slices(d))
      throw Error(ErrorKind::Precondition, a.truth + ": scaling slices cannot be ordered entrywise");
    found = sample_hyper_bounds(d, a.samples, a.budget, rng, tol);
  } else if (kind == "planted-matrix") {
    MatrixSpectralData d;
    d.Q = matrix_of(truth.at("Q"));
    const auto l = truth.at("lambda").get<std::vector<double>>();
    d.lambda = Eigen::Map<const VectorR>(l.data(), static_cast<Eigen::Index>(l.size()));
    found = sample_matrix_bounds(d, a.samples, a.budget, rng, tol);
  } else {
    throw Error(ErrorKind::Parse, a.truth + ": field 'kind': expected planted-hyper or planted-matrix");
  }
  std::size_t violations = 0;
  double worst = 0.0;
  for (const auto& r : found.reports) {
    if (!r.holds) ++violations;
    worst = std::max({worst, r.lower - r.value, r.value - r.upper});
  }
  Report rep;
  rep["kind"] = kind;
  rep["trials"] = found.trials;
  rep["admissible"] = found.reports.size();
  rep["violations"] = violations;
  rep["worst_excess"] = worst;
  const bool pass = !found.reports.empty() && violations == 0;
  rep["verdict"] = found.reports.empty() ? "no admissible witnesses found" : (pass ? "bounds hold" : "bounds violated");
  emit(g, rep);
  return verdict(pass);
}

int selftest(const Globals& g) {
  std::ostringstream sink;
  const auto results = verify::run_acceptance(g.seed, g.json ? static_cast<std::ostream&>(sink) : std::cout, g.jobs);
  if (g.json) {
    Report arr = Report::array();
    for (const auto& r : results)
      arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
    std::cout << arr.dump(2) << "\n";
  }
  return verdict(verify::all_passed(results));
}

}  // namespace bmspec::cli
