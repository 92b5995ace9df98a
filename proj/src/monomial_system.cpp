#include "bmspec/elim_hyper.hpp"

#include "bmspec/error.hpp"
#include "bmspec/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <string>

namespace bmspec {

namespace {

constexpr double kBackgroundSnap = 1e-12;

// Structural polynomial: terms are kept even when their coefficient is zero,
// so the monomial basis does not depend on accidental zeros of Q.
using SPoly = std::map<Exponents, double>;
using SCube = std::vector<SPoly>;  // n^3, last index fastest

struct CubeIndex {
  std::size_t n;
  std::size_t operator()(std::size_t i, std::size_t j, std::size_t k) const { return (i * n + j) * n + k; }
};

SPoly mul(const SPoly& a, const SPoly& b) {
  SPoly out;
  if (a.empty() || b.empty()) return out;
  Exponents e(a.begin()->first.size());
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = static_cast<std::uint16_t>(ea[v] + eb[v]);
      out[e] += ca * cb;
    }
  return out;
}

void add_scaled(SPoly& acc, const SPoly& a, double s) {
  for (const auto& [e, c] : a) acc[e] += s * c;
}

SCube lift(const Hypermatrix3& h, std::size_t arity) {
  SCube out(h.size());
  for (std::size_t t = 0; t < h.size(); ++t) out[t][Exponents(arity, 0)] = h.data()[t];
  return out;
}

SCube transpose(const SCube& a, std::size_t n) {
  CubeIndex at{n};
  SCube b(a.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) b[at(i, j, k)] = a[at(k, i, j)];
  return b;
}

SCube bm(const SCube& a, const SCube& b, const SCube& c, std::size_t n) {
  CubeIndex at{n};
  SCube p(a.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) {
        SPoly& acc = p[at(i, j, l)];
        for (std::size_t k = 0; k < n; ++k) {
          const SPoly& x = a[at(i, k, l)];
          const SPoly& y = b[at(i, j, k)];
          const SPoly& z = c[at(k, j, l)];
          if (x.empty() || y.empty() || z.empty()) continue;
          add_scaled(acc, mul(mul(x, y), z), 1.0);
        }
      }
  return p;
}

// Entry (i,j,l) of the background product with a numeric background.
SPoly bg_entry(const Hypermatrix3& u, const SCube& a, const SCube& b, const SCube& c, std::size_t n,
               std::size_t i, std::size_t j, std::size_t l) {
  CubeIndex at{n};
  const double cut = kBackgroundSnap * u.max_abs();
  SPoly acc;
  for (std::size_t k1 = 0; k1 < n; ++k1) {
    const SPoly& x = a[at(i, k1, l)];
    if (x.empty()) continue;
    for (std::size_t k2 = 0; k2 < n; ++k2) {
      const SPoly& y = b[at(i, j, k2)];
      if (y.empty()) continue;
      const SPoly xy = mul(x, y);
      for (std::size_t k0 = 0; k0 < n; ++k0) {
        const double w = u(k1, k2, k0);
        if (std::abs(w) <= cut) continue;
        const SPoly& z = c[at(k0, j, l)];
        if (z.empty()) continue;
        add_scaled(acc, mul(xy, z), w);
      }
    }
  }
  return acc;
}

std::size_t sym_var(std::size_t i, std::size_t k, std::size_t n) {
  if (i > k) std::swap(i, k);
  // Row-major upper triangle index.
  return i * n - i * (i - 1) / 2 + (k - i);
}

// D_{ikk} = w_{min(i,k) max(i,k)}; variables offset by `base` in a pool of `arity`.
SCube symbolic_scaling(std::size_t n, std::size_t base, std::size_t arity) {
  CubeIndex at{n};
  SCube d(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      Exponents e(arity, 0);
      e[base + sym_var(i, k, n)] = 1;
      d[at(i, k, k)][e] = 1.0;
    }
  return d;
}

struct Assembler {
  std::map<BasisKey, std::size_t> index;
  std::vector<std::vector<std::pair<BasisKey, double>>> rows;

  void add_row(std::size_t tag, const SPoly& p) {
    std::vector<std::pair<BasisKey, double>> row;
    for (const auto& [e, c] : p) {
      BasisKey key{tag, e};
      index.try_emplace(key, 0);
      row.emplace_back(std::move(key), c);
    }
    rows.push_back(std::move(row));
  }

  void finish(MonomialSystem& s) {
    std::size_t t = 0;
    for (auto& [key, idx] : index) {
      idx = t++;
      s.basis.push_back(key);
    }
    s.coefficients = MatrixR::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(t));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& [key, c] : rows[r])
        s.coefficients(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(index.at(key))) += c;
  }
};

std::size_t choose(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t t = 0; t < k; ++t) r = r * (n - t) / (t + 1);
  return r;
}

}  // namespace

std::size_t basis_count_formula(std::size_t n) { return n * (n + 2 * choose(n, 2) + 2 * choose(n, 3)); }

std::vector<std::string> symmetric_scaling_variables(std::size_t n, const std::string& prefix) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i; k < n; ++k) names.push_back(prefix + std::to_string(i) + std::to_string(k));
  return names;
}

std::vector<double> symmetric_scaling_values(const MatrixR& w) {
  const auto n = static_cast<std::size_t>(w.rows());
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i; k < n; ++k) out.push_back(w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
  return out;
}

MatrixR symmetric_scaling_matrix(const std::vector<double>& values, std::size_t n) {
  if (values.size() != n * (n + 1) / 2) throw Error(ErrorKind::InvalidDimension, "scaling value count mismatch");
  MatrixR w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = values[sym_var(i, k, n)];
  return w;
}

VectorR MonomialSystem::evaluate_basis(const std::vector<double>& vals) const {
  if (vals.size() != variables.size()) throw Error(ErrorKind::InvalidDimension, "variable value count mismatch");
  VectorR x(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t b = 0; b < basis.size(); ++b) {
    double m = 1.0;
    for (std::size_t v = 0; v < vals.size(); ++v)
      for (unsigned p = 0; p < basis[b].exponents[v]; ++p) m *= vals[v];
    x[static_cast<Eigen::Index>(b)] = m;
  }
  return x;
}

MonomialSystem spectral_system(const Hypermatrix3& a, const Hypermatrix3& q, int k) {
  const std::size_t n = q.side();
  if (a.side() != n) throw Error(ErrorKind::InvalidDimension, "A/Q side mismatch");
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw Error(ErrorKind::InvalidArgument, "levels must satisfy 1 <= K <= n");
  require_cyclic_symmetry(a);

  MonomialSystem s;
  s.n = n;
  s.variables = symmetric_scaling_variables(n);
  const std::size_t arity = s.variables.size();
  const SCube d = symbolic_scaling(n, 0, arity);
  const SCube b = bm(lift(q, arity), d, transpose(d, n), n);
  const SCube b1 = transpose(b, n);
  const SCube b2 = transpose(b1, n);
  const auto reps = cyclic_orbit_representatives(n);
  const auto levels = u_sequence(q, k);

  Assembler asmb;
  std::vector<double> rhs;
  for (std::size_t lv = 0; lv < levels.size(); ++lv)
    for (std::size_t o = 0; o < reps.size(); ++o) {
      const auto& t = reps[o];
      asmb.add_row(o, bg_entry(levels[lv], b, b2, b1, n, t[0], t[1], t[2]));
      s.rows.push_back(SystemRow{lv, t, o});
      rhs.push_back(a(t[0], t[1], t[2]));
    }
  asmb.finish(s);
  s.rhs = Eigen::Map<const VectorR>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  s.expected_basis_size = basis_count_formula(n);
  if (s.basis.size() != s.expected_basis_size)
    s.warnings.push_back("basis size " + std::to_string(s.basis.size()) + " differs from the count formula " +
                         std::to_string(s.expected_basis_size));
  if (s.underdetermined())
    s.warnings.push_back("underdetermined: " + std::to_string(s.rows.size()) + " rows for " +
                         std::to_string(s.basis.size()) + " monomials; increase K up to n");
  return s;
}

MonomialSystem general_spectral_system(const Hypermatrix3& a, const Hypermatrix3& q, const Hypermatrix3& u,
                                       const Hypermatrix3& v, int k) {
  const std::size_t n = q.side();
  if (a.side() != n || u.side() != n || v.side() != n) throw Error(ErrorKind::InvalidDimension, "side mismatch");
  if (k < 1 || static_cast<std::size_t>(k) > n)
    throw Error(ErrorKind::InvalidArgument, "levels must satisfy 1 <= K <= n");
  const double orth = orthogonality_residual(q, u, v);
  if (orth > 1e-8) throw Error(ErrorKind::Precondition, "(Q,U,V) is not orthogonal, residual " + shortest_repr(orth));

  MonomialSystem s;
  s.n = n;
  for (int l = 0; l < 3; ++l) {
    const auto names = symmetric_scaling_variables(n, "d" + std::to_string(l) + "_");
    s.variables.insert(s.variables.end(), names.begin(), names.end());
  }
  const std::size_t arity = s.variables.size();
  const std::size_t block = n * (n + 1) / 2;
  const SCube d0 = symbolic_scaling(n, 0, arity);
  const SCube d1 = symbolic_scaling(n, block, arity);
  const SCube d2 = symbolic_scaling(n, 2 * block, arity);
  const SCube b0 = bm(lift(q, arity), d0, transpose(d0, n), n);
  const SCube b1 = bm(d1, lift(u, arity), transpose(transpose(d1, n), n), n);
  const SCube b2 = bm(transpose(d2, n), transpose(transpose(d2, n), n), lift(v, arity), n);
  const auto levels = g_sequence(q, u, v, k);

  Assembler asmb;
  std::vector<double> rhs;
  for (std::size_t lv = 0; lv < levels.size(); ++lv)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) {
          const std::size_t tag = (i * n + j) * n + l;
          asmb.add_row(tag, bg_entry(levels[lv], b0, b1, b2, n, i, j, l));
          s.rows.push_back(SystemRow{lv, {i, j, l}, tag});
          rhs.push_back(a(i, j, l));
        }
  asmb.finish(s);
  s.rhs = Eigen::Map<const VectorR>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  if (s.underdetermined())
    s.warnings.push_back("underdetermined: " + std::to_string(s.rows.size()) + " rows for " +
                         std::to_string(s.basis.size()) + " monomials; increase K up to n");
  return s;
}

namespace {

// Bases without pure powers (the general case): |x| must be a monomial image,
// i.e. log|x| must lie in the span of the exponent matrix.
double log_linear_residual(const MonomialSystem& s, const VectorR& x) {
  const auto nb = static_cast<Eigen::Index>(s.basis.size());
  const auto nv = static_cast<Eigen::Index>(s.variables.size());
  const double top = x.cwiseAbs().maxCoeff();
  if (top == 0.0) return 0.0;
  std::vector<Eigen::Index> live;
  double r = 0.0;
  for (Eigen::Index b = 0; b < nb; ++b) {
    const auto& e = s.basis[static_cast<std::size_t>(b)].exponents;
    const bool even = std::all_of(e.begin(), e.end(), [](auto p) { return p % 2 == 0; });
    if (even && x[b] < 0) r = std::max(r, std::min(1.0, -x[b] / std::max(1.0, top)));
    if (std::abs(x[b]) > 1e-12 * top) live.push_back(b);
  }
  MatrixR e(static_cast<Eigen::Index>(live.size()), nv);
  VectorR logs(static_cast<Eigen::Index>(live.size()));
  for (std::size_t t = 0; t < live.size(); ++t) {
    const auto& ex = s.basis[static_cast<std::size_t>(live[t])].exponents;
    for (Eigen::Index v = 0; v < nv; ++v) e(static_cast<Eigen::Index>(t), v) = ex[static_cast<std::size_t>(v)];
    logs[static_cast<Eigen::Index>(t)] = std::log(std::abs(x[live[t]]));
  }
  const VectorR y = e.colPivHouseholderQr().solve(logs);
  const VectorR dev = e * y - logs;
  for (Eigen::Index t = 0; t < dev.size(); ++t) r = std::max(r, std::abs(std::expm1(dev[t])));
  return r;
}

}  // namespace

double monomial_consistency_residual(const MonomialSystem& s, const VectorR& x) {
  if (static_cast<std::size_t>(x.size()) != s.basis.size())
    throw Error(ErrorKind::InvalidDimension, "solution length does not match the basis");
  const std::size_t nv = s.variables.size();
  auto rel = [](double lhs, double rhs) {
    return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
  };
  // Pure sixth powers, per tag and pooled.
  std::map<std::pair<std::size_t, std::size_t>, double> pure_in_tag;
  std::map<std::size_t, double> pure_any;
  double r = 0.0;
  std::vector<std::size_t> composite;
  for (std::size_t b = 0; b < s.basis.size(); ++b) {
    const auto& e = s.basis[b].exponents;
    std::size_t nz = 0, var = 0;
    for (std::size_t v = 0; v < nv; ++v)
      if (e[v] != 0) {
        ++nz;
        var = v;
      }
    if (nz == 1 && e[var] == 6) {
      const double val = x[static_cast<Eigen::Index>(b)];
      pure_in_tag[{s.basis[b].tag, var}] = val;
      auto [it, inserted] = pure_any.try_emplace(var, val);
      if (!inserted) r = std::max(r, rel(it->second, val));
    } else {
      composite.push_back(b);
    }
  }
  if (pure_any.empty()) return log_linear_residual(s, x);
  for (std::size_t b : composite) {
    const auto& key = s.basis[b];
    bool even = true;
    for (auto p : key.exponents) even = even && p % 2 == 0;
    const double val = x[static_cast<Eigen::Index>(b)];
    double lhs = even ? val * val * val : std::pow(val, 6);
    double rhs = 1.0;
    for (std::size_t v = 0; v < nv; ++v) {
      if (key.exponents[v] == 0) continue;
      double pv;
      if (auto it = pure_in_tag.find({key.tag, v}); it != pure_in_tag.end()) {
        pv = it->second;
      } else if (auto jt = pure_any.find(v); jt != pure_any.end()) {
        pv = jt->second;
      } else {
        throw Error(ErrorKind::IncompleteBasis, "no pure sixth power of " + s.variables[v] + " in the basis");
      }
      rhs *= std::pow(pv, even ? key.exponents[v] / 2 : key.exponents[v]);
    }
    r = std::max(r, rel(lhs, rhs));
  }
  return r;
}

double equation_residual(const MonomialSystem& s, const VectorR& values) {
  if (s.rows.empty()) return 0.0;
  const double scale = std::max(1.0, s.rhs.cwiseAbs().maxCoeff());
  return (s.coefficients * values - s.rhs).cwiseAbs().maxCoeff() / scale;
}

namespace {

struct LmResult {
  std::vector<double> w;
  double residual = std::numeric_limits<double>::infinity();
};

double ipow(double x, unsigned p) {
  double r = 1.0;
  for (; p > 0; --p) r *= x;
  return r;
}

LmResult levenberg_marquardt(const MonomialSystem& s, std::vector<double> w) {
  const std::size_t m = w.size();
  const auto nb = static_cast<Eigen::Index>(s.basis.size());
  const auto mm = static_cast<Eigen::Index>(m);
  auto jacobian = [&](const std::vector<double>& pt, MatrixR& dx) {
    dx.setZero(nb, mm);
    for (Eigen::Index b = 0; b < nb; ++b) {
      const auto& e = s.basis[static_cast<std::size_t>(b)].exponents;
      for (std::size_t v = 0; v < m; ++v) {
        if (e[v] == 0) continue;
        double d = e[v] * ipow(pt[v], e[v] - 1u);
        for (std::size_t u = 0; u < m; ++u)
          if (u != v && e[u] != 0) d *= ipow(pt[u], e[u]);
        dx(b, static_cast<Eigen::Index>(v)) = d;
      }
    }
  };
  VectorR x = s.evaluate_basis(w);
  MatrixR dx;
  jacobian(w, dx);
  VectorR res = s.coefficients * x - s.rhs;
  double cost = res.squaredNorm();
  double mu = -1.0;
  const double floor = 1e-30 * std::max(1.0, s.rhs.squaredNorm());
  for (int it = 0; it < 100 && cost > floor; ++it) {
    const MatrixR j = s.coefficients.lazyProduct(dx);
    const MatrixR jtj = j.transpose().lazyProduct(j);
    const VectorR g = j.transpose() * res;
    if (mu < 0) mu = 1e-3 * std::max(jtj.diagonal().maxCoeff(), 1e-12);
    bool improved = false;
    for (int attempt = 0; attempt < 12; ++attempt, mu *= 4.0) {
      MatrixR h = jtj;
      for (Eigen::Index t = 0; t < mm; ++t) h(t, t) += mu * std::max(jtj(t, t), 1e-12);
      const VectorR step = h.ldlt().solve(-g);
      std::vector<double> trial = w;
      for (std::size_t v = 0; v < m; ++v) trial[v] += step[static_cast<Eigen::Index>(v)];
      VectorR tx = s.evaluate_basis(trial);
      const VectorR tres = s.coefficients * tx - s.rhs;
      const double tcost = tres.squaredNorm();
      if (std::isfinite(tcost) && tcost < cost) {
        const double gain = cost - tcost;
        w = std::move(trial);
        x = std::move(tx);
        jacobian(w, dx);
        res = tres;
        cost = tcost;
        mu = std::max(mu / 3.0, 1e-15);
        improved = gain > 1e-6 * (cost + gain);
        break;
      }
    }
    if (!improved) break;
  }
  LmResult out;
  out.w = std::move(w);
  out.residual = equation_residual(s, x);
  return out;
}

}  // namespace

MonomialSolution solve_monomial_system(const MonomialSystem& s, int starts) {
  MonomialSolution out;
  if (s.rows.size() == s.basis.size() && !s.basis.empty()) {
    try {
      out.values = cramer_solve(s.coefficients, s.rhs);
      out.method = "cramer";
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularSystem) throw;
    }
  }
  if (out.method.empty()) {
    const std::size_t m = s.variables.size();
    const std::size_t n = s.n;
    const std::size_t block = n * (n + 1) / 2;
    const double top = std::max(s.rhs.size() ? s.rhs.cwiseAbs().maxCoeff() : 0.0, 1e-300);
    // Start from sixth roots of the diagonal entries where the rows expose them.
    std::vector<double> diag(n, std::pow(top, 1.0 / 6.0));
    for (std::size_t r = 0; r < s.rows.size(); ++r) {
      const auto& t = s.rows[r].triple;
      if (t[0] == t[1] && t[1] == t[2] && std::abs(s.rhs[static_cast<Eigen::Index>(r)]) > 0)
        diag[t[0]] = std::pow(std::abs(s.rhs[static_cast<Eigen::Index>(r)]), 1.0 / 6.0);
    }
    std::vector<double> start1(m), start2(m, std::pow(top, 1.0 / 6.0));
    for (std::size_t base = 0; base + block <= m; base += block)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i; k < n; ++k)
          start1[base + i * n - i * (i - 1) / 2 + (k - i)] = std::sqrt(diag[i] * diag[k]);
    LmResult best = levenberg_marquardt(s, start1);
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> jitter(0.5, 1.5);
    for (int t = 1; t < starts && best.residual > 1e-12; ++t) {
      std::vector<double> w = start2;
      if (t > 1)
        for (double& v : w) v *= jitter(rng);
      LmResult alt = levenberg_marquardt(s, std::move(w));
      if (alt.residual < best.residual) best = std::move(alt);
    }
    out.method = "constrained-lsq";
    out.variables = best.w;
    out.values = s.evaluate_basis(best.w);
  }
  out.equation_residual = equation_residual(s, out.values);
  out.consistency_residual = monomial_consistency_residual(s, out.values);
  return out;
}

MatrixR recover_scaling(const MonomialSystem& s, const VectorR& values) {
  const std::size_t n = s.n;
  if (s.variables.size() != n * (n + 1) / 2)
    throw Error(ErrorKind::InvalidArgument, "scaling recovery needs a symmetric spectral system");
  std::vector<double> w(s.variables.size(), 0.0);
  for (std::size_t b = 0; b < s.basis.size(); ++b) {
    const auto& e = s.basis[b].exponents;
    std::size_t nz = 0, var = 0;
    for (std::size_t v = 0; v < e.size(); ++v)
      if (e[v] != 0) {
        ++nz;
        var = v;
      }
    if (nz == 1 && e[var] == 6) w[var] = std::pow(std::abs(values[static_cast<Eigen::Index>(b)]), 1.0 / 6.0);
  }
  return symmetric_scaling_matrix(w, n);
}

}  // namespace bmspec
