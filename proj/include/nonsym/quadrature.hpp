#ifndef NONSYM_QUADRATURE_HPP
#define NONSYM_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "nonsym/profiles.hpp"

namespace nonsym {

struct QuadConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_panels = 100000;     // cap on 15-point rule applications
  double singularity_split = 1e-3;  // h = split * local smoothness scale
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // accumulated error estimate, always >= 0
  int panels = 0;

  QuadResult& operator+=(const QuadResult& o) {
    value += o.value;
    error += o.error;
    panels += o.panels;
    return *this;
  }
};

/* Adaptive Gauss-Kronrod (G7, K15) integration of f over [a, b].

   Interior split points become initial panel boundaries, so a caller that
   splits at every formula change of the integrand presents the rule with
   one smooth piece per panel. All rule nodes are interior to their panel;
   f is never evaluated at a, b, or a split point. Panels are refined
   worst-error-first with ties broken by left endpoint, which makes the
   subdivision sequence, and hence the result, deterministic. Refinement
   stops once the accumulated error estimate drops below
   max(abs_tol, rel_tol * |value|) or the panel budget is exhausted; the
   returned error field is honest either way.
 */
QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, const QuadConfig& cfg,
                     std::vector<double> splits = {});

// Closed form for the truncated power tail:
//   integral_T^inf c * t^(-1-alpha) dt = c * T^(-alpha) / alpha.
// Requires alpha > 0 and T > 0.
double integrate_power_tail(double c, double alpha, double T);

/* Symmetrized singular core

     integral_0^h (phi(x+t) + phi(x-t) - 2 phi(x)) t^(-1-alpha) dt

   for phi twice differentiable on [x-h, x+h], computed by parts as

     (1/alpha) * ( integral_0^h (phi'(x+t) - phi'(x-t)) t^(-alpha) dt
                   - (phi(x+h) + phi(x-h) - 2 phi(x)) h^(-alpha) ).

   The second difference of phi is O(t^2) near 0, so the boundary term at
   t = 0 vanishes and the remaining integrand is O(t^(1-alpha)). Forming
   the difference of derivatives instead of the second difference of
   values avoids the catastrophic cancellation that otherwise dominates
   for t below sqrt(eps): when phi is odd about x the derivative
   difference cancels exactly in floating point, and the core comes out
   as an exact 0.

   Requires h > 0 and that (x-h, x+h) contains no breakpoint of phi.
 */
QuadResult symmetrized_core(const Profile& phi, double x, double h,
                            double alpha, const QuadConfig& cfg);

// Distance from x to the nearest breakpoint of phi other than x itself,
// clipped to [lo, 1]. Used to pick the core half-width h so that the
// smoothness requirement of symmetrized_core holds with margin.
double local_scale(const Profile& phi, double x, double lo = 1e-8);

}  // namespace nonsym

#endif
