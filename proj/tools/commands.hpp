#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bmspec::cli {

inline constexpr int kOk = 0;
inline constexpr int kVerdictFail = 1;
inline constexpr int kUsage = 2;
inline constexpr int kNumeric = 3;

struct Globals {
  bool json = false;
  double tol = -1.0;  // negative: per-command default
  int jobs = 1;
  std::uint64_t seed = 1;
  std::string out = "-";

  double tol_or(double fallback) const { return tol >= 0 ? tol : fallback; }
};

struct GenOrthArgs {
  std::size_t n = 2;
  std::vector<double> params;
};
int gen_orth(const Globals& g, const GenOrthArgs& a);

struct GenPlantedArgs {
  std::size_t n = 2;
  std::string kind = "hyper";  // hyper | matrix | general
  std::string truth;
};
int gen_planted(const Globals& g, const GenPlantedArgs& a);

int check_orth(const Globals& g, const std::string& file);

struct ElimMatrixArgs {
  std::string file, q;
  std::vector<double> lambda;
};
int elim_matrix(const Globals& g, const ElimMatrixArgs& a);

struct ElimHyperArgs {
  std::string file, q;
  std::vector<double> params;
  int levels = 0;
};
int elim_hyper(const Globals& g, const ElimHyperArgs& a);

struct CharpolyArgs {
  std::string file;
  double a000 = 0.0, a111 = 0.0;
  bool have_a000 = false, have_a111 = false;
  std::vector<double> w;
};
int charpoly(const Globals& g, const CharpolyArgs& a);

struct SearchArgs {
  std::string file;
  int restarts = 20;
  int budget = 2000;
  int levels = 0;
};
int decompose(const Globals& g, const SearchArgs& a);
int svd3(const Globals& g, const SearchArgs& a);

struct BoundsArgs {
  std::string truth;
  std::size_t samples = 100;
  long budget = 100000;
};
int bounds(const Globals& g, const BoundsArgs& a);

int selftest(const Globals& g);

}  // namespace bmspec::cli
