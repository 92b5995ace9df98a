#include "bmspec/orthogonal.hpp"

#include "bmspec/error.hpp"

#include <cmath>
#include <string>

namespace bmspec {

namespace {

constexpr double kMaxParam = 300.0;

}  // namespace

OrthParams OrthParams::from_flat(const std::vector<double>& r, std::size_t n) {
  if (r.size() != orth_param_count(n))
    throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(orth_param_count(n)) +
                                                " parameters for n=" + std::to_string(n));
  OrthParams p;
  for (std::size_t b = 0; b < n / 2; ++b) {
    OrthBlock blk;
    for (std::size_t t = 0; t < 6; ++t) blk.r[t] = r[6 * b + t];
    p.blocks.push_back(blk);
  }
  if (n % 2 == 1) p.blocks.push_back(OrthBlock{true, {}});
  return p;
}

std::vector<double> OrthParams::flat() const {
  std::vector<double> out;
  for (const auto& b : blocks)
    if (!b.singleton) out.insert(out.end(), b.r.begin(), b.r.end());
  return out;
}

std::size_t OrthParams::side() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.singleton ? 1 : 2;
  return n;
}

std::size_t orth_param_count(std::size_t n) { return 6 * (n / 2); }

Hypermatrix3 orth222(const std::array<double, 6>& r) {
  for (double v : r) {
    if (!std::isfinite(v) || std::abs(v) > kMaxParam)
      throw Error(ErrorKind::NumericRange, "orth222 parameter out of range: " + std::to_string(v));
  }
  const double r1 = r[0], r2 = r[1], r3 = r[2], r4 = r[3], r5 = r[4], r6 = r[5];
  // Normalizers are evaluated in log space so moderate |r| stays finite.
  auto cbrt_logsumexp = [](double x, double y) {
    const double m = std::max(x, y);
    return (m + std::log(std::exp(x - m) + std::exp(y - m))) / 3.0;
  };
  const double ln1 = cbrt_logsumexp(3 * r3, 3 * r6);
  const double ln2 = cbrt_logsumexp(3 * r1, 3 * r1 + 3 * r3 - 3 * r6);
  Hypermatrix3 q(2);
  q(0, 0, 0) = std::exp(r3 - ln1);
  q(0, 0, 1) = std::exp(r4);
  q(0, 1, 0) = std::exp(r6 - ln1);
  q(0, 1, 1) = std::exp(r2);
  q(1, 0, 0) = -std::exp(r2 - r3 - r4 + r5 + r6);
  q(1, 0, 1) = std::exp(r1 + r3 - r6 - ln2);
  q(1, 1, 0) = std::exp(r5);
  q(1, 1, 1) = std::exp(r1 - ln2);
  for (double v : q.data()) {
    if (!std::isfinite(v) || v == 0.0)
      throw Error(ErrorKind::NumericRange, "orth222 entry overflowed or underflowed");
  }
  return q;
}

Hypermatrix3 orth_direct_sum(const OrthParams& params, std::size_t n) {
  if (params.blocks.empty() || params.side() != n)
    throw Error(ErrorKind::InvalidArgument, "block sizes sum to " + std::to_string(params.side()) +
                                                ", expected n=" + std::to_string(n));
  std::vector<Hypermatrix3> blocks;
  for (std::size_t b = 0; b < params.blocks.size(); ++b) {
    const auto& blk = params.blocks[b];
    if (blk.singleton) {
      if (n % 2 == 0 || b + 1 != params.blocks.size())
        throw Error(ErrorKind::InvalidArgument, "singleton blocks only pad odd n as the last block");
      blocks.push_back(delta(1));
    } else {
      blocks.push_back(orth222(blk.r));
    }
  }
  return direct_sum(blocks);
}

double orthogonality_residual(const Hypermatrix3& q) {
  return max_abs_diff(bm_product(q, cyclic_transpose(q, 2), cyclic_transpose(q, 1)), delta(q.side()));
}

double orthogonality_residual(const Hypermatrix3& q, const Hypermatrix3& u, const Hypermatrix3& v) {
  return max_abs_diff(bm_product(q, u, v), delta(q.side()));
}

double resolution_residual(const Hypermatrix3& q, const VectorR& x, const VectorR& y, const VectorR& z) {
  const std::size_t n = q.side();
  const Hypermatrix3 q2 = cyclic_transpose(q, 2);
  const Hypermatrix3 q1 = cyclic_transpose(q, 1);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) sum += multilinear_form(bm_summand(q, q2, q1, k), x, y, z);
  return std::abs(multilinear_form(delta(n), x, y, z) - sum);
}

Hypermatrix3 complete_orthogonal_triple(const Hypermatrix3& q, const Hypermatrix3& u) {
  const std::size_t n = q.side();
  if (u.side() != n) throw Error(ErrorKind::InvalidDimension, "Q/U side mismatch");
  // For fixed (j,l): sum_k [Q_{ikl} U_{ijk}] V_{kjl} = delta_{ijl}, rows i, unknowns k.
  Hypermatrix3 v(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l) {
      MatrixR m(n, n);
      VectorR rhs = VectorR::Zero(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) m(i, k) = q(i, k, l) * u(i, j, k);
        rhs[i] = (i == j && j == l) ? 1.0 : 0.0;
      }
      Eigen::FullPivLU<MatrixR> lu(m);
      if (!lu.isInvertible())
        throw Error(ErrorKind::SingularSystem, "no V completes the triple at (j,l)=(" +
                                                   std::to_string(j) + "," + std::to_string(l) + ")");
      const VectorR sol = lu.solve(rhs);
      for (std::size_t k = 0; k < n; ++k) v(k, j, l) = sol[k];
    }
  return v;
}

}  // namespace bmspec
