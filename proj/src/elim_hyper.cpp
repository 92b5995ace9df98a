#include "bmspec/elim_hyper.hpp"

#include "bmspec/error.hpp"
#include "bmspec/format.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bmspec {

Hypermatrix3 scaling_hypermatrix(const MatrixR& w) {
  if (w.rows() != w.cols() || w.rows() == 0) throw Error(ErrorKind::InvalidDimension, "W must be square");
  const auto n = static_cast<std::size_t>(w.rows());
  Hypermatrix3 d(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) d(i, k, k) = w(k, i);
  return d;
}

Hypermatrix3 HyperSpectralData::scaling() const { return scaling_hypermatrix(W); }

Hypermatrix3 HyperSpectralData::reconstruct() const {
  if (static_cast<std::size_t>(W.rows()) != Q.side()) throw Error(ErrorKind::InvalidDimension, "Q/W size mismatch");
  const Hypermatrix3 d = scaling();
  const Hypermatrix3 b = bm_product(Q, d, cyclic_transpose(d));
  return bm_product(b, cyclic_transpose(b, 2), cyclic_transpose(b, 1));
}

VectorR HyperSpectralData::slice(std::size_t k) const {
  if (k >= static_cast<std::size_t>(W.rows())) throw Error(ErrorKind::Index, "slice index out of range");
  return W.row(static_cast<Eigen::Index>(k)).transpose().cwiseAbs2();
}

Hypermatrix3 GeneralSpectralData::reconstruct() const {
  const std::size_t n = Q.side();
  for (const auto& w : W)
    if (static_cast<std::size_t>(w.rows()) != n) throw Error(ErrorKind::InvalidDimension, "W size mismatch");
  const Hypermatrix3 d0 = scaling_hypermatrix(W[0]);
  const Hypermatrix3 d1 = scaling_hypermatrix(W[1]);
  const Hypermatrix3 d2 = scaling_hypermatrix(W[2]);
  const Hypermatrix3 b0 = bm_product(Q, d0, cyclic_transpose(d0));
  const Hypermatrix3 b1 = bm_product(d1, U, cyclic_transpose(d1, 2));
  const Hypermatrix3 b2 = bm_product(cyclic_transpose(d2), cyclic_transpose(d2, 2), V);
  return bm_product(b0, b1, b2);
}

std::vector<Hypermatrix3> u_sequence(const Hypermatrix3& q, int k) {
  return g_sequence(q, cyclic_transpose(q, 2), cyclic_transpose(q, 1), k);
}

std::vector<Hypermatrix3> g_sequence(const Hypermatrix3& q, const Hypermatrix3& u, const Hypermatrix3& v,
                                     int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "sequence length must be >= 1");
  std::vector<Hypermatrix3> out{delta(q.side())};
  while (static_cast<int>(out.size()) < k) out.push_back(bm_product_bg(out.back(), q, u, v));
  return out;
}

Fibers222 Fibers222::from(const Hypermatrix3& q) {
  if (q.side() != 2) throw Error(ErrorKind::InvalidDimension, "fibers need a 2x2x2 hypermatrix");
  auto fiber = [&](std::size_t a, std::size_t b) {
    VectorR f(2);
    f << q(a, 0, b), q(a, 1, b);
    return f;
  };
  return {fiber(0, 0), fiber(0, 1), fiber(1, 0), fiber(1, 1)};
}

namespace {

void require_len2(const VectorR& v, const char* name) {
  if (v.size() != 2) throw Error(ErrorKind::InvalidDimension, std::string(name) + " must have length 2");
}

Hypermatrix3 assemble_from_weights(const Fibers222& f, const VectorR& c000, const VectorR& c111,
                                   const VectorR& c011, const VectorR& c100) {
  const double a000 = c000.dot(f.q00.cwiseProduct(f.q00).cwiseProduct(f.q00));
  const double a111 = c111.dot(f.q11.cwiseProduct(f.q11).cwiseProduct(f.q11));
  const double a011 = c011.dot(f.q01.cwiseProduct(f.q10).cwiseProduct(f.q11));
  const double a100 = c100.dot(f.q10.cwiseProduct(f.q01).cwiseProduct(f.q00));
  Hypermatrix3 a(2);
  a(0, 0, 0) = a000;
  a(1, 1, 1) = a111;
  a(0, 1, 1) = a(1, 1, 0) = a(1, 0, 1) = a011;
  a(1, 0, 0) = a(0, 0, 1) = a(0, 1, 0) = a100;
  return a;
}

}  // namespace

Hypermatrix3 assemble222(const Fibers222& f, const VectorR& w0, const VectorR& w1) {
  for (const VectorR* v : {&f.q00, &f.q01, &f.q10, &f.q11, &w0, &w1}) require_len2(*v, "fiber/weight");
  return assemble_from_weights(f, hadamard_pow(w0, 6), hadamard_pow(w1, 6),
                               hadamard(hadamard_pow(w0, 2), hadamard_pow(w1, 4)),
                               hadamard(hadamard_pow(w0, 4), hadamard_pow(w1, 2)));
}

Hypermatrix3 assemble222_delta(const Fibers222& f, const VectorR& w0, const VectorR& w1) {
  for (const VectorR* v : {&f.q00, &f.q01, &f.q10, &f.q11, &w0, &w1}) require_len2(*v, "fiber/weight");
  return assemble_from_weights(f, hadamard_pow(hadamard_pow(w0, 6), 0), hadamard_pow(hadamard_pow(w1, 6), 0),
                               hadamard_pow(hadamard(hadamard_pow(w0, 2), hadamard_pow(w1, 4)), 0),
                               hadamard_pow(hadamard(hadamard_pow(w0, 4), hadamard_pow(w1, 2)), 0));
}

Charpoly222 charpoly222(double a000, double a111) {
  const MultiPoly u = MultiPoly::variable(3, 0);
  const MultiPoly v = MultiPoly::variable(3, 1);
  const MultiPoly t = MultiPoly::variable(3, 2);
  const Rational r000(a000), r111(a111);
  Charpoly222 c;
  c.a000 = a000;
  c.a111 = a111;
  c.poly = (u * t - v * v) + v * Rational(r000 + r111) - (u * r111 + t * r000);
  return c;
}

double Charpoly222::evaluate_uvt(double u, double v, double t) const {
  return (u * t - v * v) + v * (a000 + a111) - (a111 * u + a000 * t);
}

double Charpoly222::evaluate(double w00, double w01, double w11) const {
  return evaluate_uvt(std::pow(w00, 6), std::pow(w01, 6), std::pow(w11, 6));
}

std::string Charpoly222::pretty() const {
  auto plus = [](double c, const std::string& var) {
    return (c < 0 ? " − " : " + ") + shortest_repr(std::abs(c)) + "·" + var;
  };
  auto minus = [](double c, const std::string& var) {
    return (c < 0 ? " + " : " − ") + shortest_repr(std::abs(c)) + "·" + var;
  };
  return "p(u,v,t) = u·t − v²" + plus(a000 + a111, "v") + minus(a111, "u") + minus(a000, "t");
}

Relations222 vandermonde_relations222(const Hypermatrix3& a, double w00, double w01, double w11) {
  if (a.side() != 2) throw Error(ErrorKind::InvalidDimension, "relations need a 2x2x2 hypermatrix");
  const double scale_a = std::max(1.0, a.max_abs());
  const double a000 = a(0, 0, 0), a111 = a(1, 1, 1), a001 = a(0, 0, 1), a011 = a(0, 1, 1);
  const double u = std::pow(w00, 6), v = std::pow(w01, 6), t = std::pow(w11, 6);
  const double scale_w = std::max({std::abs(u), std::abs(v), std::abs(t), 1e-300});
  if (std::abs(a001) <= 1e-14 * scale_a || std::abs(a011) <= 1e-14 * scale_a)
    throw Error(ErrorKind::DegenerateInstance, "a001 or a011 vanishes");
  if (std::abs(u - v) <= 1e-14 * scale_w || std::abs(v - t) <= 1e-14 * scale_w)
    throw Error(ErrorKind::DegenerateInstance, "repeated sixth powers in the denominators");
  const double p = std::pow(std::pow(w00, 4) * w01 * w01 - std::pow(w01, 4) * w11 * w11, 3);
  const double q = std::pow(w00 * w00 * std::pow(w01, 4) - w01 * w01 * std::pow(w11, 4), 3);
  const double da = a001 * a001 * a001 * (u - v);
  const double db = a011 * a011 * a011 * (v - t);
  const double l1 = p * (a000 - v) / da, r1 = q * (a111 - t) / db;
  const double l2 = p * (u - a000) / da, r2 = q * (v - a111) / db;
  Relations222 out;
  out.residual = std::max(std::abs(l1 - r1), std::abs(l2 - r2));
  out.scale = std::max({std::abs(l1), std::abs(r1), std::abs(l2), std::abs(r2)});
  return out;
}

double vandermonde_relations222_residual(const Hypermatrix3& a, double w00, double w01, double w11) {
  return vandermonde_relations222(a, w00, w01, w11).residual;
}

void require_cyclic_symmetry(const Hypermatrix3& a) {
  const double r = cyclic_symmetry_residual(a);
  if (r > 1e-8 * std::max(1.0, a.max_abs()))
    throw Error(ErrorKind::Precondition, "hypermatrix is not cyclically symmetric (residual " + shortest_repr(r) + ")");
}

}  // namespace bmspec
