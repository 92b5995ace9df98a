#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace bmspec {

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  long evaluations = 0;
};

// Standard simplex with reflection 1, expansion 2, contraction 1/2, shrink 1/2.
// Stops on the evaluation budget, on f <= target, or when the simplex collapses.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> x0, double step, long budget, double target,
                                    double xtol = 1e-10, double ftol = 1e-15) {
  const std::size_t d = x0.size();
  NelderMeadResult out;
  auto eval = [&](const std::vector<double>& x) {
    ++out.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : 1e300;
  };
  if (d == 0) {
    out.x = x0;
    out.f = eval(x0);
    return out;
  }
  std::vector<std::vector<double>> pts(d + 1, x0);
  std::vector<double> vals(d + 1);
  for (std::size_t t = 0; t < d; ++t) pts[t + 1][t] += step;
  for (std::size_t t = 0; t <= d; ++t) vals[t] = eval(pts[t]);

  std::vector<std::size_t> order(d + 1);
  std::vector<double> centroid(d), xr(d), xe(d), xc(d);
  while (out.evaluations < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[d - 1];
    if (vals[best] <= target) break;
    double size = 0.0;
    for (std::size_t t = 1; t <= d; ++t)
      for (std::size_t c = 0; c < d; ++c) size = std::max(size, std::abs(pts[order[t]][c] - pts[best][c]));
    if (size < xtol || std::abs(vals[worst] - vals[best]) <= ftol * std::max(1.0, std::abs(vals[best]))) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t t = 0; t < d; ++t)
      for (std::size_t c = 0; c < d; ++c) centroid[c] += pts[order[t]][c] / static_cast<double>(d);
    for (std::size_t c = 0; c < d; ++c) xr[c] = centroid[c] + (centroid[c] - pts[worst][c]);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      for (std::size_t c = 0; c < d; ++c) xe[c] = centroid[c] + 2.0 * (centroid[c] - pts[worst][c]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    for (std::size_t c = 0; c < d; ++c)
      xc[c] = outside ? centroid[c] + 0.5 * (xr[c] - centroid[c]) : centroid[c] + 0.5 * (pts[worst][c] - centroid[c]);
    const double fc = eval(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t t = 1; t <= d; ++t) {
      const std::size_t idx = order[t];
      for (std::size_t c = 0; c < d; ++c) pts[idx][c] = pts[best][c] + 0.5 * (pts[idx][c] - pts[best][c]);
      vals[idx] = eval(pts[idx]);
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  out.x = pts[static_cast<std::size_t>(it - vals.begin())];
  out.f = *it;
  return out;
}

}  // namespace bmspec
