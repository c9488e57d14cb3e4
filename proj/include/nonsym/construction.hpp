#ifndef NONSYM_CONSTRUCTION_HPP
#define NONSYM_CONSTRUCTION_HPP

#include <vector>

#include "nonsym/operators.hpp"
#include "nonsym/params.hpp"
#include "nonsym/profiles.hpp"
#include "nonsym/quadrature.hpp"

namespace nonsym {

/* Builder for a bounded function u with sup |u| = 1, together with
   coefficient fields |a|, |c| <= 1, such that the assembled operator
   part1 + a (part2 - part4) - c part3 annihilates u on the unit ball
   while u oscillates by more than eta(2r) across [-r, r]. Running the
   builder against any continuity modulus eta therefore produces a
   counterexample to an interior estimate in terms of that modulus.

   The ingredients:

     u_r     smooth odd step of radius r, carrying the oscillation;
     v       Holder wedge, whose unbounded derivative at 0 makes the
             drift piece part4 dominate the symmetric piece part1 on a
             radius delta, which keeps a = part1/part4 admissible there;
     w_K     wide ramp scaled by C_w, whose far piece part3 dominates
             everything the first two leave behind, which keeps the
             closing coefficient c admissible.

   The steps, each exposed separately for testing:

     choose_r        largest dyadic r <= 1/4 with eta(2r) <= safety;
     find_delta      largest dyadic delta <= 1/2 such that
                     part4 >= dominance * |part1| on ubar = u_r + v
                     across a probe grid of (-delta, delta);
     measure_bound   C0, a headroom multiple of the largest assembled
                     residue |part1 + a (part2 - part4)| of ubar over
                     the verification grid;
     choose_ramp     smallest K in {4, 8, 16, ...} whose safety margin
                     m(K) = min part3 w_K - |part1 w_K| over |x| <= 1
                     reaches ramp_floor, and the scale C_w that makes
                     C_w m(K) >= C0 with ramp_margin to spare.

   build() runs them in order, normalizes by the exact supremum
   B = 1 + 2^beta + C_w K, and finally compares the realized oscillation
   gap = 2 u(r) against eta(2r). If the gap does not clear the modulus
   with margin, the whole construction is repeated with a smaller safety
   so that choose_r descends further; the loop tightens geometrically
   and gives up after max_rounds.
 */

struct GridSpec {
  int points_per_side = 16;      // abscissae k / points_per_side
  double edge = 0.999;           // near-edge sample appended per sign
  double inner_exclusion = 1e-4;  // drop |x| below this
  double kink_offset = 1e-6;      // nudge applied when x lands on a kink

  // Symmetric grid on [-1, 1] avoiding 0, the kinks of phi, and +-1.
  std::vector<double> make(const Profile& phi) const;
};

struct BuildConfig {
  double safety = 0.5;      // initial ceiling for eta(2r)
  double dominance = 1.01;  // required part4 / |part1| factor
  double bound_margin = 1.02;
  double ramp_margin = 1.02;
  double ramp_floor = 0.5;  // minimal acceptable m(K)
  double gap_margin = 1.02;  // gap must exceed gap_margin * eta(2r)
  int max_rounds = 6;
  GridSpec grid;
  QuadConfig quad;
};

// Largest r = 2^-k, 2 <= k <= 60, with eta(2r) <= safety. Throws
// std::runtime_error when even the smallest rung fails, which happens
// exactly when eta does not decay to 0.
double choose_r(const Modulus& eta, double safety);

// Probe abscissae for the dominance check: 32 log-spaced points per
// dyad over 14 dyads below delta, both signs, descending magnitude.
std::vector<double> dominance_probes(double delta);

// Largest delta = 2^-j, 1 <= j <= 40, with
//   part4 ubar >= dominance * |part1 ubar|
// at every probe. Throws std::runtime_error when no rung passes.
double find_delta(const Operators& ops, const Profile& ubar,
                  const BuildConfig& bc);

// bound_margin times the largest |part1 + a (part2 - part4)| of ubar
// over the verification grid, with a = part1/part4 inside (-delta,
// delta) and 0 outside.
double measure_bound(const Operators& ops, const Profile& ubar, double delta,
                     const BuildConfig& bc);

struct RampChoice {
  double K = 0.0;
  double margin = 0.0;  // m(K)
  double C_w = 0.0;
};

// Doubles K from 4 until m(K) >= ramp_floor, then sizes the scale so
// that C_w m(K) = ramp_margin * C0. Throws std::runtime_error if K
// exceeds 2^20 without reaching the floor.
RampChoice choose_ramp(const Operators& ops, double C0,
                       const BuildConfig& bc);

class Counterexample {
 public:
  // Assembles profiles and coefficient fields from already-determined
  // scalars; performs no searching. build() below is the usual entry.
  Counterexample(const ProblemParams& params, const Modulus& eta,
                 const BuildConfig& bc, double r, double delta,
                 const RampChoice& ramp, double C0, double safety_used,
                 int rounds);

  const ProblemParams& params() const { return ops_.reduction().params(); }
  const Modulus& eta() const { return eta_; }
  const BuildConfig& config() const { return bc_; }
  const Operators& ops() const { return ops_; }

  const Profile& step_and_wedge() const { return ubar_; }  // u_r + v
  const Profile& ramp() const { return ramp_profile_; }    // C_w w_K
  const Profile& unscaled() const { return unscaled_; }    // ubar + C_w w_K
  const Profile& solution() const { return u_; }           // unscaled / B

  double r() const { return r_; }
  double delta() const { return delta_; }
  double ramp_K() const { return ramp_K_; }
  double ramp_scale() const { return C_w_; }
  double bound() const { return C0_; }
  double sup_raw() const { return B_; }
  double safety_used() const { return safety_used_; }
  int rounds() const { return rounds_; }

  // Oscillation of the normalized solution across [-r, r], and the
  // modulus it has to beat there.
  double gap() const;
  double eta_at_2r() const;

  // Coefficient fields. coef_a is part1/part4 of ubar inside the
  // dominance radius and 0 outside; coef_c closes the assembly to zero,
  // is 0 outside the unit ball, and throws std::runtime_error instead
  // of clamping if the closing value ever leaves [-1, 1].
  double coef_a(double x) const;
  double coef_c(double x) const;

 private:
  Operators ops_;
  Modulus eta_;
  BuildConfig bc_;
  Profile ubar_;
  Profile ramp_profile_;
  Profile unscaled_;
  Profile u_;
  double r_ = 0.0;
  double delta_ = 0.0;
  double ramp_K_ = 0.0;
  double C_w_ = 0.0;
  double C0_ = 0.0;
  double B_ = 0.0;
  double safety_used_ = 0.0;
  int rounds_ = 0;
};

Counterexample build(const ProblemParams& params, const Modulus& eta,
                     const BuildConfig& bc = {});

}  // namespace nonsym

#endif
