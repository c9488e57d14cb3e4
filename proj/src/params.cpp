#include "nonsym/params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nonsym {

namespace {

// The reduction constants are computed once per parameter set, so they
// get a tighter budget than runtime quadrature.
QuadConfig constants_cfg() {
  QuadConfig cfg;
  cfg.rel_tol = 1e-13;
  cfg.abs_tol = 1e-15;
  cfg.max_panels = 200000;
  return cfg;
}

// Barycentric interpolation on Chebyshev-Lobatto abscissae.
double lobatto_eval(const std::vector<double>& xs,
                    const std::vector<double>& vals, double xq) {
  const size_t n = xs.size() - 1;
  double num = 0.0;
  double den = 0.0;
  for (size_t j = 0; j <= n; ++j) {
    double w = (j == 0 || j == n) ? 0.5 : 1.0;
    if (j % 2 == 1) w = -w;
    const double d = xq - xs[j];
    if (d == 0.0) return vals[j];
    num += w / d * vals[j];
    den += w / d;
  }
  return num / den;
}

}  // namespace

ProblemParams ProblemParams::make(double alpha, double lambda, double Lambda,
                                  int dim) {
  ProblemParams p;
  p.alpha = alpha;
  p.lambda = lambda;
  p.Lambda = Lambda;
  p.dim = dim;
  p.eps = 0.5 * (1.0 - alpha);
  p.validate();
  return p;
}

void ProblemParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("params: requires alpha in (0,1)");
  if (!(lambda > 0.0 && lambda <= Lambda))
    throw std::invalid_argument("params: requires 0 < lambda <= Lambda");
  if (dim < 1 || dim > 8)
    throw std::invalid_argument("params: requires 1 <= dim <= 8");
  if (!(eps > 0.0 && beta() > 0.0))
    throw std::invalid_argument(
        "params: requires eps > 0 and alpha + eps < 1");
}

double unit_ball_volume(int k) {
  if (k < 0 || k > 32)
    throw std::invalid_argument("unit_ball_volume: requires 0 <= k <= 32");
  static std::vector<double> memo = {1.0};
  const QuadConfig cfg = constants_cfg();
  while (static_cast<int>(memo.size()) <= k) {
    const int m = static_cast<int>(memo.size());
    const double prev = memo.back();
    const double expo = 0.5 * (m - 1);
    QuadResult r = integrate(
        [prev, expo](double t) {
          return prev * std::pow(1.0 - t * t, expo);
        },
        -1.0, 1.0, cfg);
    memo.push_back(r.value);
  }
  return memo[k];
}

double cross_section(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("cross_section: requires n >= 1");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("cross_section: requires alpha in (0,1)");
  if (n == 1) return 1.0;
  const double sigma = (n - 1) * unit_ball_volume(n - 1);
  const double expo = -0.5 * (n + alpha);
  const QuadConfig cfg = constants_cfg();
  // Radial form split at rho = 1; the far half is mapped back onto (0, 1)
  // by rho -> 1/u, leaving two smooth integrands.
  QuadResult near = integrate(
      [n, expo](double rho) {
        return std::pow(rho, n - 2) * std::pow(1.0 + rho * rho, expo);
      },
      0.0, 1.0, cfg);
  QuadResult far = integrate(
      [alpha, expo](double u) {
        return std::pow(u, alpha) * std::pow(1.0 + u * u, expo);
      },
      0.0, 1.0, cfg);
  return sigma * (near.value + far.value);
}

Reduction::Reduction(const ProblemParams& p) : p_(p) {
  p_.validate();
  vol_ = unit_ball_volume(p_.dim - 1);
  A_ = nonsym::cross_section(p_.dim, p_.alpha);
  omega_ = 4.0 * vol_ / (p_.dim + 1);
  c0_ = p_.mid() * A_;
  drift_ = omega_ * p_.half_gap() / 2.0;

  if (p_.dim >= 2) {
    // Tail weight on the open slab 0 < t < 1, sampled in theta = asin(t).
    // The node integrands are analytic in theta up to both endpoints, so
    // 64 Lobatto panels reach ~1e-12.
    const int N = 64;
    const double quarter_pi = std::numbers::pi / 4.0;
    const int n = p_.dim;
    const double alpha = p_.alpha;
    const double sigma = (n - 1) * vol_;
    const double expo = -0.5 * (n + alpha);
    const QuadConfig cfg = constants_cfg();
    cheb_x_.resize(N + 1);
    cheb_val_.resize(N + 1);
    for (int j = 0; j <= N; ++j) {
      const double x = std::cos(j * std::numbers::pi / N);
      const double theta = quarter_pi * (x + 1.0);
      const double t2 = std::sin(theta) * std::sin(theta);
      QuadResult inner = integrate(
          [n, expo, t2](double rho) {
            return std::pow(rho, n - 2) * std::pow(t2 + rho * rho, expo);
          },
          std::cos(theta), 1.0, cfg);
      QuadResult outer = integrate(
          [alpha, expo, t2](double s) {
            return std::pow(s, alpha) * std::pow(1.0 + t2 * s * s, expo);
          },
          0.0, 1.0, cfg);
      cheb_x_[j] = x;
      cheb_val_[j] = sigma * (inner.value + outer.value);
    }
  }
}

double Reduction::ball_weight(double t) const {
  const double at = std::abs(t);
  if (at >= 1.0) return 0.0;
  return vol_ * std::pow(1.0 - t * t, 0.5 * (p_.dim - 1));
}

double Reduction::interior_tail(double t) const {
  const double xq = 4.0 * std::asin(t) / std::numbers::pi - 1.0;
  return lobatto_eval(cheb_x_, cheb_val_, xq);
}

double Reduction::tail_weight(double t) const {
  if (t == 0.0) throw std::domain_error("tail_weight: requires t != 0");
  const double at = std::abs(t);
  if (at >= 1.0) return A_ * std::pow(at, -1.0 - p_.alpha);
  if (p_.dim == 1) return 0.0;
  return interior_tail(at);
}

double Reduction::inner_weight(double t) const {
  if (t == 0.0) throw std::domain_error("inner_weight: requires t != 0");
  const double at = std::abs(t);
  if (at > 1.0) return 0.0;
  const double w = A_ * std::pow(at, -1.0 - p_.alpha) - tail_weight(at);
  // Exact cancellation at t = 1 leaves rounding residue; clip it.
  return std::max(w, 0.0);
}

}  // namespace nonsym
