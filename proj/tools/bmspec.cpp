#include "commands.hpp"

#include "bmspec/error.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

using namespace bmspec::cli;

int main(int argc, char** argv) {
  Globals g;
  if (const char* env = std::getenv("BMSPEC_SEED")) {
    try {
      g.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "bmspec: BMSPEC_SEED is not an unsigned integer: " << env << "\n";
      return kUsage;
    }
  }

  CLI::App app{"Spectral elimination tools for 3-hypermatrices under the BM product"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--json", g.json, "Machine-readable report");
  app.add_option("--tol", g.tol, "Verdict tolerance (default depends on the command)");
  app.add_option("--jobs", g.jobs, "Parallel search restarts")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "RNG seed (default 1 or $BMSPEC_SEED)");
  app.add_option("-o,--out", g.out, "Output file for generated documents, - for stdout");

  auto* gen = app.add_subcommand("gen", "Generate instances");
  gen->require_subcommand(1);
  GenOrthArgs go;
  auto* gen_orth_cmd = gen->add_subcommand("orth", "Orthogonal hypermatrix from the direct-sum family");
  gen_orth_cmd->add_option("--n", go.n, "Side length")->check(CLI::PositiveNumber);
  gen_orth_cmd->add_option("--params", go.params, "r parameters, 6 per 2x2x2 block")->delimiter(',');
  GenPlantedArgs gp;
  auto* gen_planted_cmd = gen->add_subcommand("planted", "Decomposable instance plus ground-truth sidecar");
  gen_planted_cmd->add_option("--n", gp.n, "Side length")->check(CLI::PositiveNumber);
  gen_planted_cmd->add_option("--kind", gp.kind, "hyper, matrix or general")
      ->check(CLI::IsMember({"hyper", "matrix", "general"}));
  gen_planted_cmd->add_option("--truth", gp.truth, "Sidecar path (default <out>.truth.json)");

  auto* check = app.add_subcommand("check", "Checks");
  check->require_subcommand(1);
  std::string check_file;
  auto* check_orth_cmd = check->add_subcommand("orth", "Orthogonality residual");
  check_orth_cmd->add_option("file", check_file, "Hypermatrix document, - for stdin")->required();

  auto* elim = app.add_subcommand("elim", "Elimination pipelines");
  elim->require_subcommand(1);
  ElimMatrixArgs em;
  auto* elim_matrix_cmd = elim->add_subcommand("matrix", "Matrix I_D / I_Q report");
  elim_matrix_cmd->add_option("file", em.file, "Symmetric matrix document")->required();
  elim_matrix_cmd->add_option("--q", em.q, "Matrix document whose rows are candidate eigenvectors");
  elim_matrix_cmd->add_option("--lambda", em.lambda, "Candidate square roots of the eigenvalues")->delimiter(',');
  ElimHyperArgs eh;
  auto* elim_hyper_cmd = elim->add_subcommand("hyper", "Spectral monomial system and consistency report");
  elim_hyper_cmd->add_option("file", eh.file, "Cyclically symmetric hypermatrix document")->required();
  auto* q_opt = elim_hyper_cmd->add_option("--q", eh.q, "Orthogonal hypermatrix document");
  elim_hyper_cmd->add_option("--params", eh.params, "Family parameters for Q")->delimiter(',')->excludes(q_opt);
  elim_hyper_cmd->add_option("--levels", eh.levels, "Background levels K (default n)");

  CharpolyArgs cp;
  auto* charpoly_cmd = app.add_subcommand("charpoly", "Characteristic polynomial of a 2x2x2 hypermatrix");
  charpoly_cmd->add_option("file", cp.file, "2x2x2 hypermatrix document");
  auto* a000_opt = charpoly_cmd->add_option("--a000", cp.a000);
  auto* a111_opt = charpoly_cmd->add_option("--a111", cp.a111);
  charpoly_cmd->add_option("--w", cp.w, "Evaluate at w00,w01,w11")->delimiter(',');

  SearchArgs sa;
  auto add_search = [&](CLI::App* c) {
    c->add_option("file", sa.file, "Hypermatrix document")->required();
    c->add_option("--restarts", sa.restarts)->check(CLI::PositiveNumber);
    c->add_option("--budget", sa.budget, "Evaluations per restart")->check(CLI::PositiveNumber);
    c->add_option("--levels", sa.levels, "Background levels K (default n)");
  };
  auto* decompose_cmd = app.add_subcommand("decompose", "Multi-start decomposability search");
  add_search(decompose_cmd);
  auto* svd3_cmd = app.add_subcommand("svd3", "Symmetrize, decompose the products and fit the alphas");
  add_search(svd3_cmd);

  BoundsArgs ba;
  auto* bounds_cmd = app.add_subcommand("bounds", "Sample the spectral sandwich on planted ground truth");
  bounds_cmd->add_option("truth", ba.truth, "Sidecar written by gen planted")->required();
  bounds_cmd->add_option("--samples", ba.samples, "Admissible witnesses wanted");
  bounds_cmd->add_option("--budget", ba.budget, "Maximum trials");

  auto* selftest_cmd = app.add_subcommand("selftest", "Run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_orth_cmd) return gen_orth(g, go);
    if (*gen_planted_cmd) return gen_planted(g, gp);
    if (*check_orth_cmd) return check_orth(g, check_file);
    if (*elim_matrix_cmd) return elim_matrix(g, em);
    if (*elim_hyper_cmd) return elim_hyper(g, eh);
    if (*charpoly_cmd) {
      cp.have_a000 = a000_opt->count() > 0;
      cp.have_a111 = a111_opt->count() > 0;
      return charpoly(g, cp);
    }
    if (*decompose_cmd) return decompose(g, sa);
    if (*svd3_cmd) return svd3(g, sa);
    if (*bounds_cmd) return bounds(g, ba);
    if (*selftest_cmd) return selftest(g);
  } catch (const bmspec::Error& e) {
    std::cerr << "bmspec: " << e.what() << "\n";
    return bmspec::is_numeric_degeneracy(e.kind()) ? kNumeric : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "bmspec: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
