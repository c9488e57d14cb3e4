#ifndef NONSYM_PARAMS_HPP
#define NONSYM_PARAMS_HPP

#include <vector>

#include "nonsym/quadrature.hpp"

namespace nonsym {

/* Problem parameters for the nonlocal operator family

     L u(x) = integral [ u(x+y) - u(x) - y . grad u(x) 1_{|y|<=1}(y) ]
                       K(y) dy,   y in R^n,

   with kernels pinched between lambda |y|^(-n-alpha) and
   Lambda |y|^(-n-alpha), alpha in (0, 1). Test functions depend on the
   first coordinate only, which reduces every operator here to a line
   integral against weights obtained by integrating the kernel over the
   remaining n-1 coordinates; Reduction below precomputes those weights.

   eps controls the wedge profile exponent beta = 1 - alpha - eps and
   must leave beta in (0, 1).
 */
struct ProblemParams {
  double alpha = 0.5;
  double lambda = 1.0;
  double Lambda = 2.0;
  int dim = 1;
  double eps = 0.25;

  // eps defaults to (1 - alpha)/2, splitting the gap between the wedge
  // exponent and the regularity the operator order would suggest.
  static ProblemParams make(double alpha, double lambda, double Lambda,
                            int dim = 1);

  double beta() const { return 1.0 - alpha - eps; }
  double mid() const { return 0.5 * (lambda + Lambda); }       // kernel mean
  double half_gap() const { return 0.5 * (Lambda - lambda); }  // kernel spread

  // Throws std::invalid_argument unless alpha in (0,1), 0 < lambda <=
  // Lambda, 1 <= dim <= 8, eps > 0 and beta in (0,1).
  void validate() const;
};

// Volume of the unit ball in R^k, k >= 0, by the recursion
//   V_0 = 1,  V_k = integral_{-1}^{1} V_{k-1} (1 - t^2)^((k-1)/2) dt,
// evaluated numerically and memoized.
double unit_ball_volume(int k);

// A(n, alpha) = integral over R^(n-1) of (1 + |z|^2)^(-(n+alpha)/2) dz,
// the factor relating |t|^(-1-alpha) line weights to |y|^(-n-alpha)
// kernels. A(1, alpha) = 1.
double cross_section(int n, double alpha);

/* Reduced one-dimensional weights for a fixed parameter set.

   Writing y = (t, z) with z in R^(n-1), the three kernel pieces

     K1 = mid |y|^(-n-alpha)
     K2 = sgn(t) half_gap 1_{|y| <= 1}
     K3 = sgn(t) half_gap |y|^(-n-alpha) 1_{|y| > 1}

   integrate in z to mid * A |t|^(-1-alpha), sgn(t) half_gap ball_weight(t)
   and sgn(t) half_gap tail_weight(t) respectively. ball_weight vanishes
   for |t| >= 1; tail_weight equals A |t|^(-1-alpha) there and stays
   bounded on (0, 1), where it is evaluated from a Chebyshev interpolant
   in the variable theta = asin(|t|) accurate to ~1e-12. inner_weight is
   the complementary piece A |t|^(-1-alpha) - tail_weight(t) supported on
   (0, 1], the z-mass of B_1 over the slice at offset t.

   The weights are even in t. tail_weight and inner_weight are defined
   for t != 0 and throw std::domain_error at t = 0; ball_weight(0) is the
   full slice V_{n-1}.
 */
class Reduction {
 public:
  explicit Reduction(const ProblemParams& p);

  const ProblemParams& params() const { return p_; }

  double cross_section() const { return A_; }        // A(n, alpha)
  double ball_volume() const { return vol_; }        // V_{n-1}
  double drift_norm() const { return omega_; }       // 2 int_{B_1} |y_1| dy
  double c0() const { return c0_; }                  // mid * A
  double drift_coeff() const { return drift_; }      // omega * half_gap / 2

  double ball_weight(double t) const;   // V_{n-1} (1-t^2)^((n-1)/2), 0 outside
  double tail_weight(double t) const;
  double inner_weight(double t) const;

 private:
  double interior_tail(double t) const;  // tail_weight on 0 < t < 1

  ProblemParams p_;
  double A_ = 0.0;
  double vol_ = 0.0;
  double omega_ = 0.0;
  double c0_ = 0.0;
  double drift_ = 0.0;
  std::vector<double> cheb_x_;    // Lobatto abscissae in [-1, 1]
  std::vector<double> cheb_val_;  // tail weight at the mapped nodes
};

}  // namespace nonsym

#endif
