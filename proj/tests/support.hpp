#pragma once

#include "bmspec/error.hpp"
#include "bmspec/hypermatrix.hpp"

#include <doctest.h>

#include <random>

namespace testing {

inline bmspec::VectorR gaussian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  bmspec::VectorR v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = g(rng);
  return v;
}

inline bmspec::VectorR vec(std::initializer_list<double> xs) {
  bmspec::VectorR v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

template <class F>
bmspec::ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const bmspec::Error& e) {
    return e.kind();
  }
  FAIL("expected a bmspec::Error");
  return bmspec::ErrorKind::Parse;
}

}  // namespace testing
