#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <vector>

namespace bmspec {

using MatrixR = Eigen::MatrixXd;
using VectorR = Eigen::VectorXd;

// Dense order-3 real array, last index fastest.
class Hypermatrix3 {
 public:
  Hypermatrix3() = default;
  Hypermatrix3(std::size_t n0, std::size_t n1, std::size_t n2, double fill = 0.0);
  explicit Hypermatrix3(std::size_t n, double fill = 0.0) : Hypermatrix3(n, n, n, fill) {}

  static Hypermatrix3 from_data(std::array<std::size_t, 3> dims, std::vector<double> data);

  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * dims_[1] + j) * dims_[2] + k];
  }
  double& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * dims_[1] + j) * dims_[2] + k];
  }

  const std::array<std::size_t, 3>& dims() const { return dims_; }
  std::size_t size() const { return data_.size(); }
  bool is_cubic() const { return dims_[0] == dims_[1] && dims_[1] == dims_[2]; }
  // Side length; throws invalid-dimension if not cubic.
  std::size_t side() const;

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  double max_abs() const;

  friend bool operator==(const Hypermatrix3&, const Hypermatrix3&) = default;

 private:
  std::array<std::size_t, 3> dims_{0, 0, 0};
  std::vector<double> data_;
};

Hypermatrix3 delta(std::size_t n);
Hypermatrix3 ones(std::size_t n);

// B_{ijk} = A_{kij}.
Hypermatrix3 cyclic_transpose(const Hypermatrix3& a);
// cyclic_transpose applied `times` times (mod 3).
Hypermatrix3 cyclic_transpose(const Hypermatrix3& a, int times);

// P_{ijl} = sum_k A_{ikl} B_{ijk} C_{kjl}
Hypermatrix3 bm_product(const Hypermatrix3& a, const Hypermatrix3& b, const Hypermatrix3& c);

// P_{ijl} = sum_{k0,k1,k2} A_{i k1 l} B_{i j k2} C_{k0 j l} U_{k1 k2 k0}
Hypermatrix3 bm_product_bg(const Hypermatrix3& u, const Hypermatrix3& a, const Hypermatrix3& b,
                           const Hypermatrix3& c);

// k-th term of the BM sum: T_{ijl} = A_{ikl} B_{ijk} C_{kjl}.
Hypermatrix3 bm_summand(const Hypermatrix3& a, const Hypermatrix3& b, const Hypermatrix3& c,
                        std::size_t k);

double multilinear_form(const MatrixR& t, const VectorR& x, const VectorR& y);
double multilinear_form(const Hypermatrix3& t, const VectorR& x, const VectorR& y, const VectorR& z);

Hypermatrix3 hadamard(const Hypermatrix3& a, const Hypermatrix3& b);
Hypermatrix3 hadamard_pow(const Hypermatrix3& a, unsigned m);
VectorR hadamard(const VectorR& a, const VectorR& b);
VectorR hadamard_pow(const VectorR& a, unsigned m);
MatrixR hadamard(const MatrixR& a, const MatrixR& b);
MatrixR hadamard_pow(const MatrixR& a, unsigned m);

Hypermatrix3 direct_sum(const std::vector<Hypermatrix3>& blocks);

Hypermatrix3 operator+(const Hypermatrix3& a, const Hypermatrix3& b);
Hypermatrix3 operator-(const Hypermatrix3& a, const Hypermatrix3& b);
Hypermatrix3 operator*(double s, const Hypermatrix3& a);

// max |A - B| entrywise; shapes must agree.
double max_abs_diff(const Hypermatrix3& a, const Hypermatrix3& b);
// max |A - A^T|; zero iff A is cyclically symmetric.
double cyclic_symmetry_residual(const Hypermatrix3& a);

// Representatives (lexicographically smallest member) of the cyclic orbits of
// index triples, in lexicographic order.
std::vector<std::array<std::size_t, 3>> cyclic_orbit_representatives(std::size_t n);
// The rotations of (i,j,k): (i,j,k), (k,i,j), (j,k,i).
std::array<std::array<std::size_t, 3>, 3> cyclic_rotations(const std::array<std::size_t, 3>& t);

}  // namespace bmspec
