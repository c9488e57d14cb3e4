#ifndef NONSYM_OPERATORS_HPP
#define NONSYM_OPERATORS_HPP

#include "nonsym/params.hpp"
#include "nonsym/profiles.hpp"
#include "nonsym/quadrature.hpp"

namespace nonsym {

/* Reduced one-dimensional evaluation of the operator family

     L phi(x) = integral [ phi(x+y1) - phi(x) - y1 phi'(x) 1_{|y|<=1} ]
                         K(y) dy

   for kernels assembled from the three pieces described in params.hpp:

     K = K1 + a K2 - c K3,  |a| <= 1, |c| <= 1.

   part1 is the symmetric piece: its odd drift integrates to zero, so it
   reduces to the principal value

     part1 phi(x) = c0 integral_0^inf D(t) t^(-1-alpha) dt,
     D(t) = phi(x+t) + phi(x-t) - 2 phi(x),

   split into the by-parts core on [0, h], a direct panel sweep on
   [h, R+|x|] and an exact power tail where both arguments sit in the
   constant region of phi. part2 and part3 are the antisymmetric pieces
   against ball_weight and tail_weight; part2 carries no drift here, the
   full second kernel piece with its gradient correction is
   part2 - part4 with part4 phi(x) = drift_coeff * phi'(x).

   apply() assembles part1 + a (part2 - part4) - c part3 from the four
   separate evaluations. apply_direct() computes the same number in one
   sweep: a single quadrature pass over the paired integrand

     D(t) c0 t^(-1-alpha) + (phi(x+t) - phi(x-t)) O(t),
     O(t) = half_gap (a ball_weight(t) - c tail_weight(t)),

   plus a drift term using a freshly integrated value of
   integral |t| ball_weight dt instead of the closed-form drift_coeff.
   The two paths share only the primitive quadrature rule, so agreement
   between them exercises every reduction constant and every tail
   formula.

   extremal_max/extremal_min evaluate the sup/inf of L phi(x) over all
   kernels pinched between lambda and Lambda times |y|^(-n-alpha),
   with the same gradient correction inside the unit ball:

     M+- phi(x) = part1 phi(x) +- half_gap P(x),
     P = integral |G| inner_weight + integral |d| tail_weight,
     G(t) = phi(x+t) - phi(x) - t phi'(x),  d(t) = phi(x+t) - phi(x).

   P is truncated below t0 = 1e-10 * local scale where the second-order
   difference G drowns in rounding; the discarded mass is bounded by a
   local derivative bound and added to the error estimate, never to the
   value.

   Every returned error field is an accumulated estimate covering both
   quadrature and the rounding amplification of the singular weights.
   part4, apply, apply_direct, extremal_max and extremal_min need phi'(x)
   and so throw std::domain_error at kinks of phi; part1..part3 are
   defined everywhere.
 */
class Operators {
 public:
  explicit Operators(const Reduction& red, const QuadConfig& cfg = {});

  const Reduction& reduction() const { return red_; }
  const QuadConfig& config() const { return cfg_; }

  QuadResult part1(const Profile& phi, double x) const;
  QuadResult part2(const Profile& phi, double x) const;
  QuadResult part3(const Profile& phi, double x) const;
  QuadResult part4(const Profile& phi, double x) const;

  QuadResult apply(const Profile& phi, double x, double a, double c) const;
  QuadResult apply_direct(const Profile& phi, double x, double a,
                          double c) const;

  QuadResult extremal_max(const Profile& phi, double x) const;
  QuadResult extremal_min(const Profile& phi, double x) const;

 private:
  QuadResult extremal(const Profile& phi, double x, double sign) const;

  // Breakpoint images |b - x| restricted to (lo, hi), the abscissae in t
  // where phi(x+t) or phi(x-t) changes formula.
  std::vector<double> images(const Profile& phi, double x, double lo,
                             double hi) const;

  Reduction red_;
  QuadConfig cfg_;
  double drift_numeric_ = 0.0;  // half_gap * int_-1^1 |t| ball_weight(t) dt
};

}  // namespace nonsym

#endif
