#ifndef NONSYM_PROFILES_HPP
#define NONSYM_PROFILES_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace nonsym {

/* Bounded one-dimensional profiles used as inputs to the nonlocal operators.

   A profile carries, besides pointwise values and a derivative, the
   bookkeeping the singular quadrature needs:

     breakpoints     abscissae where the defining formula changes, so an
                     integration routine can split panels there and see a
                     single smooth piece per panel;
     kinks           the subset of breakpoints where the derivative does
                     not exist (deriv() throws there);
     limit_neg/pos   the exact constant values taken for
                     x <= -support_radius and x >= +support_radius.

   Tail values are returned by branching to the stored constants rather
   than re-evaluating the formula, so differences of two far-field values
   cancel exactly in floating point. Operator code relies on that to turn
   truncated integrals over [T, inf) into closed-form power tails.
 */
struct Profile {
  std::function<double(double)> f;   // value at x
  std::function<double(double)> df;  // derivative, valid away from kinks
  std::vector<double> breakpoints;   // sorted, may be empty
  std::vector<double> kinks;         // sorted subset of breakpoints
  double limit_neg = 0.0;
  double limit_pos = 0.0;
  double support_radius = 0.0;
  bool nondecreasing = false;

  double operator()(double x) const { return f(x); }

  // Derivative at x. Throws std::domain_error when x is exactly a kink.
  double deriv(double x) const;
};

// Odd quintic step u_r(x) = p(x/r) with p(s) = (15 s - 10 s^3 + 3 s^5)/8
// on [-1, 1] and p(s) = sgn(s) outside. p' and p'' vanish at s = +-1, so
// the profile is C^2 across its breakpoints and has no kinks.
Profile smooth_step(double r);

// Odd power wedge sgn(x) |x|^beta with beta = 1 - alpha - eps, clamped to
// the constants +-2^beta for |x| >= 2. Requires alpha in (0,1), eps > 0
// and beta in (0,1). The derivative is unbounded near 0 and undefined at
// the kinks {-2, 0, 2}.
Profile holder_wedge(double alpha, double eps);

// scale * clamp(x, -K, K), linear with slope scale on [-K, K]. Requires
// K > 2 so the clamp corners stay outside the closed unit ball around
// every evaluation point with |x| <= 1.
Profile clamped_ramp(double K, double scale = 1.0);

// Pointwise sum. Breakpoints and kinks are merged; limits add in the
// order given, and evaluation adds in the same order so the tail values
// stay bitwise equal to limit_neg/limit_pos.
Profile sum(std::vector<Profile> parts);

// factor * p. A negative factor clears the nondecreasing flag.
Profile scaled(Profile p, double factor);

// p / denom. Division keeps the constant tails exact when denom is one
// of the limits: limit_pos / limit_pos is bitwise 1. Requires denom
// finite and nonzero.
Profile normalized(Profile p, double denom);

/* Modulus of continuity candidate eta: [0, inf) -> [0, inf), eta(0) = 0,
   nondecreasing, positive somewhere. Construction code probes eta at
   dyadic arguments to pick the step radius; the table form lets callers
   supply measured moduli point by point.
 */
class Modulus {
 public:
  // eta(s) = M * s^gamma. Requires M > 0, gamma > 0.
  static Modulus power(double M, double gamma);

  // eta(s) = M / max(1, -log s) for s > 0, eta(0) = 0. Decays slower
  // than every positive power of s. Requires M > 0.
  static Modulus log_decay(double M);

  // Piecewise-linear interpolation of (s_i, eta_i) pairs with strictly
  // increasing s_i >= 0 and nondecreasing eta_i, clamped to the last
  // value beyond the table. (0, 0) is prepended when absent; an explicit
  // s = 0 entry must carry the value 0.
  static Modulus table(std::vector<std::pair<double, double>> pts);

  // Evaluate at s >= 0; throws std::domain_error for s < 0.
  double operator()(double s) const;

  const std::string& describe() const { return desc_; }

 private:
  Modulus() = default;
  std::function<double(double)> eval_;
  std::string desc_;
};

}  // namespace nonsym

#endif
