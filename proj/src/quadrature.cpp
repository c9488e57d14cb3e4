#include "nonsym/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace nonsym {

namespace {

// 15-point Kronrod extension of 7-point Gauss on [-1, 1]. kXgk holds the
// nonnegative nodes; odd indices are the embedded Gauss nodes, index 7 is
// the midpoint. Degree exactness: Gauss 13, Kronrod 22.
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct Panel {
  double err;
  double a;
  double b;
  double val;
};

// priority_queue pops the largest element; order by error, then by left
// endpoint so refinement order does not depend on heap internals.
struct PanelOrder {
  bool operator()(const Panel& p, const Panel& q) const {
    if (p.err != q.err) return p.err < q.err;
    return p.a < q.a;
  }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  const double fc = f(mid);
  double resg = kWg[3] * fc;
  double resk = kWgk[7] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = hw * kXgk[j];
    const double fsum = f(mid - dx) + f(mid + dx);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.val = resk * hw;
  p.err = std::abs((resk - resg) * hw);
  return p;
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, const QuadConfig& cfg,
                     std::vector<double> splits) {
  if (a > b) throw std::invalid_argument("integrate: requires a <= b");
  QuadResult total;
  if (a == b) return total;

  std::vector<double> bounds;
  bounds.push_back(a);
  std::sort(splits.begin(), splits.end());
  for (double s : splits)
    if (s > a && s < b && s != bounds.back()) bounds.push_back(s);
  bounds.push_back(b);

  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
  double frozen_val = 0.0;  // contributions of panels too narrow to split
  double frozen_err = 0.0;
  double heap_val = 0.0;
  double heap_err = 0.0;
  int panels = 0;

  for (size_t i = 0; i + 1 < bounds.size(); ++i) {
    Panel p = gk15(f, bounds[i], bounds[i + 1]);
    ++panels;
    heap_val += p.val;
    heap_err += p.err;
    heap.push(p);
  }

  while (!heap.empty() && panels + 2 <= cfg.max_panels) {
    const double val = frozen_val + heap_val;
    const double err = frozen_err + heap_err;
    if (err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(val))) break;

    Panel p = heap.top();
    heap.pop();
    heap_val -= p.val;
    heap_err -= p.err;

    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) {
      frozen_val += p.val;
      frozen_err += p.err;
      continue;
    }
    Panel lo = gk15(f, p.a, mid);
    Panel hi = gk15(f, mid, p.b);
    panels += 2;
    heap_val += lo.val + hi.val;
    heap_err += lo.err + hi.err;
    heap.push(lo);
    heap.push(hi);
  }

  total.value = frozen_val + heap_val;
  total.error = frozen_err + heap_err;
  total.panels = panels;
  return total;
}

double integrate_power_tail(double c, double alpha, double T) {
  if (!(alpha > 0.0 && T > 0.0))
    throw std::invalid_argument(
        "integrate_power_tail: requires alpha > 0 and T > 0");
  return c * std::pow(T, -alpha) / alpha;
}

QuadResult symmetrized_core(const Profile& phi, double x, double h,
                            double alpha, const QuadConfig& cfg) {
  if (!(h > 0.0)) throw std::invalid_argument("symmetrized_core: requires h > 0");
  auto deriv_diff = [&phi, x](double t) {
    return phi.df(x + t) - phi.df(x - t);
  };
  QuadResult inner =
      integrate([&](double t) { return deriv_diff(t) * std::pow(t, -alpha); },
                0.0, h, cfg);

  const double fp = phi.f(x + h);
  const double fm = phi.f(x - h);
  const double fx = phi.f(x);
  const double second_diff = fp + fm - 2.0 * fx;
  const double hpow = std::pow(h, -alpha);

  QuadResult out;
  out.value = (inner.value - second_diff * hpow) / alpha;
  // Rounding in the second difference is amplified by h^(-alpha); account
  // for it so downstream error budgets stay honest.
  const double rounding =
      4e-16 * (std::abs(fp) + std::abs(fm) + 2.0 * std::abs(fx)) * hpow;
  out.error = (inner.error + rounding) / alpha;
  out.panels = inner.panels;
  return out;
}

double local_scale(const Profile& phi, double x, double lo) {
  double dist = 1.0;
  for (double b : phi.breakpoints) {
    if (b != x) dist = std::min(dist, std::abs(b - x));
  }
  return std::max(dist, lo);
}

}  // namespace nonsym
