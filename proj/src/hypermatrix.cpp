#include "bmspec/hypermatrix.hpp"

#include "bmspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bmspec {

namespace {

std::size_t common_side(const Hypermatrix3& a, const Hypermatrix3& b) {
  const std::size_t n = a.side();
  if (b.side() != n) {
    throw Error(ErrorKind::InvalidDimension,
                "side mismatch " + std::to_string(n) + " vs " + std::to_string(b.side()));
  }
  return n;
}

void require_same_shape(const Hypermatrix3& a, const Hypermatrix3& b) {
  if (a.dims() != b.dims()) throw Error(ErrorKind::InvalidDimension, "shape mismatch");
}

void require_length(const VectorR& v, std::size_t n, const char* name) {
  if (static_cast<std::size_t>(v.size()) != n) {
    throw Error(ErrorKind::InvalidDimension, std::string(name) + " has length " +
                                                 std::to_string(v.size()) + ", expected " +
                                                 std::to_string(n));
  }
}

}  // namespace

Hypermatrix3::Hypermatrix3(std::size_t n0, std::size_t n1, std::size_t n2, double fill)
    : dims_{n0, n1, n2}, data_(n0 * n1 * n2, fill) {
  if (n0 == 0 || n1 == 0 || n2 == 0) throw Error(ErrorKind::InvalidDimension, "zero extent");
}

Hypermatrix3 Hypermatrix3::from_data(std::array<std::size_t, 3> dims, std::vector<double> data) {
  Hypermatrix3 h(dims[0], dims[1], dims[2]);
  if (data.size() != h.size()) {
    throw Error(ErrorKind::InvalidDimension, "data length " + std::to_string(data.size()) +
                                                 " does not match dims product " +
                                                 std::to_string(h.size()));
  }
  h.data_ = std::move(data);
  return h;
}

std::size_t Hypermatrix3::side() const {
  if (!is_cubic() || dims_[0] == 0) throw Error(ErrorKind::InvalidDimension, "non-cubic hypermatrix");
  return dims_[0];
}

double Hypermatrix3::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Hypermatrix3 delta(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidDimension, "delta(0)");
  Hypermatrix3 d(n);
  for (std::size_t i = 0; i < n; ++i) d(i, i, i) = 1.0;
  return d;
}

Hypermatrix3 ones(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidDimension, "ones(0)");
  return Hypermatrix3(n, 1.0);
}

Hypermatrix3 cyclic_transpose(const Hypermatrix3& a) {
  const std::size_t n = a.side();
  Hypermatrix3 b(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) b(i, j, k) = a(k, i, j);
  return b;
}

Hypermatrix3 cyclic_transpose(const Hypermatrix3& a, int times) {
  int t = ((times % 3) + 3) % 3;
  Hypermatrix3 out = a;
  out.side();
  while (t-- > 0) out = cyclic_transpose(out);
  return out;
}

Hypermatrix3 bm_product(const Hypermatrix3& a, const Hypermatrix3& b, const Hypermatrix3& c) {
  const std::size_t n = common_side(a, b);
  common_side(a, c);
  Hypermatrix3 p(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += a(i, k, l) * b(i, j, k) * c(k, j, l);
        p(i, j, l) = s;
      }
  return p;
}

Hypermatrix3 bm_product_bg(const Hypermatrix3& u, const Hypermatrix3& a, const Hypermatrix3& b,
                           const Hypermatrix3& c) {
  const std::size_t n = common_side(u, a);
  common_side(u, b);
  common_side(u, c);
  Hypermatrix3 p(n);
  // Contract U with A first: X_{i l k2 k0} = sum_{k1} A_{i k1 l} U_{k1 k2 k0}.
  std::vector<double> x(n * n * n * n, 0.0);
  auto xi = [n](std::size_t i, std::size_t l, std::size_t k2, std::size_t k0) {
    return ((i * n + l) * n + k2) * n + k0;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t k1 = 0; k1 < n; ++k1) {
        const double av = a(i, k1, l);
        if (av == 0.0) continue;
        for (std::size_t k2 = 0; k2 < n; ++k2)
          for (std::size_t k0 = 0; k0 < n; ++k0) x[xi(i, l, k2, k0)] += av * u(k1, k2, k0);
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) {
        double s = 0.0;
        for (std::size_t k2 = 0; k2 < n; ++k2) {
          const double bv = b(i, j, k2);
          if (bv == 0.0) continue;
          double inner = 0.0;
          for (std::size_t k0 = 0; k0 < n; ++k0) inner += x[xi(i, l, k2, k0)] * c(k0, j, l);
          s += bv * inner;
        }
        p(i, j, l) = s;
      }
  return p;
}

Hypermatrix3 bm_summand(const Hypermatrix3& a, const Hypermatrix3& b, const Hypermatrix3& c,
                        std::size_t k) {
  const std::size_t n = common_side(a, b);
  common_side(a, c);
  if (k >= n) throw Error(ErrorKind::Index, "summand index " + std::to_string(k) + " >= " + std::to_string(n));
  Hypermatrix3 t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) t(i, j, l) = a(i, k, l) * b(i, j, k) * c(k, j, l);
  return t;
}

double multilinear_form(const MatrixR& t, const VectorR& x, const VectorR& y) {
  if (t.rows() != x.size() || t.cols() != y.size())
    throw Error(ErrorKind::InvalidDimension, "bilinear form dimension mismatch");
  return x.dot(t * y);
}

double multilinear_form(const Hypermatrix3& t, const VectorR& x, const VectorR& y, const VectorR& z) {
  const auto& d = t.dims();
  require_length(x, d[0], "x");
  require_length(y, d[1], "y");
  require_length(z, d[2], "z");
  double s = 0.0;
  for (std::size_t i = 0; i < d[0]; ++i)
    for (std::size_t j = 0; j < d[1]; ++j) {
      double inner = 0.0;
      for (std::size_t k = 0; k < d[2]; ++k) inner += t(i, j, k) * z[k];
      s += x[i] * y[j] * inner;
    }
  return s;
}

Hypermatrix3 hadamard(const Hypermatrix3& a, const Hypermatrix3& b) {
  require_same_shape(a, b);
  Hypermatrix3 out = a;
  for (std::size_t t = 0; t < out.size(); ++t) out.data()[t] *= b.data()[t];
  return out;
}

Hypermatrix3 hadamard_pow(const Hypermatrix3& a, unsigned m) {
  Hypermatrix3 out = a;
  for (double& v : out.data()) v = std::pow(v, static_cast<int>(m));
  return out;
}

VectorR hadamard(const VectorR& a, const VectorR& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidDimension, "vector length mismatch");
  return a.cwiseProduct(b);
}

VectorR hadamard_pow(const VectorR& a, unsigned m) {
  VectorR out(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out[i] = std::pow(a[i], static_cast<int>(m));
  return out;
}

MatrixR hadamard(const MatrixR& a, const MatrixR& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::InvalidDimension, "matrix shape mismatch");
  return a.cwiseProduct(b);
}

MatrixR hadamard_pow(const MatrixR& a, unsigned m) {
  return a.unaryExpr([m](double v) { return std::pow(v, static_cast<int>(m)); });
}

Hypermatrix3 direct_sum(const std::vector<Hypermatrix3>& blocks) {
  if (blocks.empty()) throw Error(ErrorKind::InvalidArgument, "direct_sum of no blocks");
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.side();
  Hypermatrix3 out(n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    const std::size_t m = b.side();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) out(off + i, off + j, off + k) = b(i, j, k);
    off += m;
  }
  return out;
}

Hypermatrix3 operator+(const Hypermatrix3& a, const Hypermatrix3& b) {
  require_same_shape(a, b);
  Hypermatrix3 out = a;
  for (std::size_t t = 0; t < out.size(); ++t) out.data()[t] += b.data()[t];
  return out;
}

Hypermatrix3 operator-(const Hypermatrix3& a, const Hypermatrix3& b) {
  require_same_shape(a, b);
  Hypermatrix3 out = a;
  for (std::size_t t = 0; t < out.size(); ++t) out.data()[t] -= b.data()[t];
  return out;
}

Hypermatrix3 operator*(double s, const Hypermatrix3& a) {
  Hypermatrix3 out = a;
  for (double& v : out.data()) v *= s;
  return out;
}

double max_abs_diff(const Hypermatrix3& a, const Hypermatrix3& b) {
  require_same_shape(a, b);
  double m = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) m = std::max(m, std::abs(a.data()[t] - b.data()[t]));
  return m;
}

double cyclic_symmetry_residual(const Hypermatrix3& a) {
  return max_abs_diff(a, cyclic_transpose(a));
}

std::array<std::array<std::size_t, 3>, 3> cyclic_rotations(const std::array<std::size_t, 3>& t) {
  return {{{t[0], t[1], t[2]}, {t[2], t[0], t[1]}, {t[1], t[2], t[0]}}};
}

std::vector<std::array<std::size_t, 3>> cyclic_orbit_representatives(std::size_t n) {
  std::vector<std::array<std::size_t, 3>> reps;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const std::array<std::size_t, 3> t{i, j, k};
        const auto rot = cyclic_rotations(t);
        if (t == *std::min_element(rot.begin(), rot.end())) reps.push_back(t);
      }
  return reps;
}

}  // namespace bmspec
