#pragma once

/// \file quadrature.hpp
/// \brief Composite Gauss-Legendre quadrature on [0, 1] with adaptive
/// doubling of the number of panels.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "steiner/error.hpp"

namespace steiner {

/// n-point Gauss-Legendre rule mapped to [0, 1].
class GaussLegendre {
 public:
  explicit GaussLegendre(std::size_t n) : nodes_(n), weights_(n) {
    if (n == 0) throw Error("GaussLegendre: need at least one node");
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
          const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      nodes_[i] = 0.5 * (1.0 - x);
      nodes_[n - 1 - i] = 0.5 * (1.0 + x);
      weights_[i] = weights_[n - 1 - i] = 0.5 * w;
    }
  }

  std::size_t size() const { return nodes_.size(); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Integral over [a, b] split into `panels` equal panels. Endpoints of the
  /// interval are never sampled.
  template <class F>
  double integrate(F&& f, double a, double b, std::size_t panels = 1) const {
    const double h = (b - a) / static_cast<double>(panels);
    double total = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
      const double lo = a + h * static_cast<double>(p);
      double s = 0.0;
      for (std::size_t i = 0; i < nodes_.size(); ++i) s += weights_[i] * f(lo + h * nodes_[i]);
      total += h * s;
    }
    return total;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

struct QuadratureOptions {
  std::size_t nodes = 32;
  double rel_tol = 1e-10;
  int max_doublings = 16;
};

struct QuadratureResult {
  double value = 0.0;
  std::size_t panels = 1;
  int doublings = 0;
};

/// Integrates f over [a, b], doubling the panel count until successive
/// estimates agree to rel_tol relative to `scale` (or to the estimate,
/// whichever is larger).
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const QuadratureOptions& opt = {},
                                    double scale = 0.0) {
  static thread_local std::size_t cached_n = 0;
  static thread_local GaussLegendre rule(1);
  if (cached_n != opt.nodes) {
    rule = GaussLegendre(opt.nodes);
    cached_n = opt.nodes;
  }
  std::size_t panels = 1;
  double prev = rule.integrate(f, a, b, panels);
  for (int d = 1; d <= opt.max_doublings; ++d) {
    panels *= 2;
    const double cur = rule.integrate(f, a, b, panels);
    const double ref = std::max({std::abs(cur), std::abs(scale)});
    if (std::abs(cur - prev) <= opt.rel_tol * ref || cur == prev) return {cur, panels, d};
    prev = cur;
  }
  throw Error("quadrature did not converge after " + std::to_string(opt.max_doublings) +
              " doublings on [" + std::to_string(a) + ", " + std::to_string(b) +
              "], last estimate " + std::to_string(prev));
}

}  // namespace steiner
