#pragma once

#include "bmspec/error.hpp"
#include "bmspec/hypermatrix.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace bmspec {

using Rational = mpq_class;
using Exponents = std::vector<std::uint16_t>;

unsigned total_degree(const Exponents& e);

// Graded lex, largest first, so begin() is the leading term.
struct GradedLexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const unsigned da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

namespace detail {
inline bool is_zero(const Rational& c) { return sgn(c) == 0; }
inline bool is_zero(double c) { return c == 0.0; }
inline int sign(const Rational& c) { return sgn(c); }
inline int sign(double c) { return (c > 0) - (c < 0); }
std::string coeff_to_string(const Rational& c);
std::string coeff_to_string(double c);
}  // namespace detail

template <class Coeff>
class Polynomial {
 public:
  using Terms = std::map<Exponents, Coeff, GradedLexGreater>;

  explicit Polynomial(std::size_t arity = 0) : arity_(arity) {}

  static Polynomial constant(std::size_t arity, const Coeff& c) {
    Polynomial p(arity);
    p.add_term(Exponents(arity, 0), c);
    return p;
  }
  static Polynomial variable(std::size_t arity, std::size_t index) {
    if (index >= arity) throw Error(ErrorKind::Index, "variable index out of range");
    Exponents e(arity, 0);
    e[index] = 1;
    Polynomial p(arity);
    p.add_term(e, Coeff(1));
    return p;
  }
  static Polynomial monomial(const Exponents& e, const Coeff& c) {
    Polynomial p(e.size());
    p.add_term(e, c);
    return p;
  }

  std::size_t arity() const { return arity_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  unsigned degree() const { return terms_.empty() ? 0 : total_degree(terms_.begin()->first); }

  // Coefficient of e, zero when absent.
  Coeff coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  void add_term(const Exponents& e, const Coeff& c) {
    if (e.size() != arity_) throw Error(ErrorKind::InvalidArgument, "exponent arity mismatch");
    if (detail::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (detail::is_zero(it->second)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_arity(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Coeff& s) {
    if (detail::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const Coeff& s) { return a *= s; }
  friend Polynomial operator*(const Coeff& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_arity(b);
    Polynomial out(a.arity_);
    Exponents e(a.arity_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t v = 0; v < a.arity_; ++v) e[v] = static_cast<std::uint16_t>(ea[v] + eb[v]);
        out.add_term(e, ca * cb);
      }
    return out;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial pow(unsigned m) const {
    Polynomial result = constant(arity_, Coeff(1));
    Polynomial base = *this;
    while (m > 0) {
      if (m & 1u) result *= base;
      m >>= 1u;
      if (m > 0) base *= base;
    }
    return result;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  template <class T>
  T evaluate(std::span<const T> point) const {
    if (point.size() != arity_) throw Error(ErrorKind::InvalidArgument, "evaluation point arity mismatch");
    T sum(0);
    for (const auto& [e, c] : terms_) {
      T term = convert<T>(c);
      for (std::size_t v = 0; v < arity_; ++v)
        for (unsigned p = 0; p < e[v]; ++p) term *= point[v];
      sum += term;
    }
    return sum;
  }
  template <class T>
  T evaluate(const std::vector<T>& point) const {
    return evaluate(std::span<const T>(point));
  }

  // `coef * v0^e0 * v1^e1 ...` joined by " + " / " - ", graded-lex order.
  std::string to_string(const std::vector<std::string>& names) const {
    if (names.size() != arity_) throw Error(ErrorKind::InvalidArgument, "name count mismatch");
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      const bool neg = detail::sign(c) < 0;
      if (first) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      out += detail::coeff_to_string(neg ? Coeff(-c) : c);
      for (std::size_t v = 0; v < arity_; ++v) {
        if (e[v] == 0) continue;
        out += " * " + names[v];
        if (e[v] > 1) out += "^" + std::to_string(e[v]);
      }
      first = false;
    }
    return out;
  }

 private:
  template <class T>
  static T convert(const Coeff& c) {
    if constexpr (std::is_same_v<T, double> && std::is_same_v<Coeff, Rational>) {
      return c.get_d();
    } else {
      return T(c);
    }
  }

  void check_arity(const Polynomial& o) const {
    if (o.arity_ != arity_)
      throw Error(ErrorKind::InvalidArgument, "arity mismatch " + std::to_string(arity_) + " vs " +
                                                  std::to_string(o.arity_));
  }

  std::size_t arity_;
  Terms terms_;
};

using MultiPoly = Polynomial<Rational>;
using RealPoly = Polynomial<double>;
using PolyMatrix = std::vector<std::vector<MultiPoly>>;

// Exact quotient num / den; throws invalid-argument if den does not divide num.
MultiPoly exact_divide(const MultiPoly& num, const MultiPoly& den);

struct RationalFunction {
  MultiPoly numerator;
  MultiPoly denominator;

  // Flips signs so the denominator's leading coefficient is positive.
  static RationalFunction make(MultiPoly num, MultiPoly den);
  double evaluate(std::span<const double> point) const;
  Rational evaluate(std::span<const Rational> point) const;
};

// Bareiss fraction-free elimination.
MultiPoly fraction_free_det(const PolyMatrix& m);

// Numeric determinant by partial-pivot LU.
double determinant(const MatrixR& m);

// x_i = det(M_i)/det(M). Throws singular-system when |det M| <= 1e-12 * prod_i ||row_i||.
VectorR cramer_solve(const MatrixR& m, const VectorR& b);
std::vector<RationalFunction> cramer_solve(const PolyMatrix& m, const std::vector<MultiPoly>& b);

// v_{ij} = x_j^i
MatrixR vandermonde(const VectorR& x);
PolyMatrix vandermonde(const std::vector<MultiPoly>& x);

}  // namespace bmspec
