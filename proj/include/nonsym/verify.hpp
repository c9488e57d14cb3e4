#ifndef NONSYM_VERIFY_HPP
#define NONSYM_VERIFY_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "nonsym/construction.hpp"

namespace nonsym {

/* Audit of a finished construction. Every check recomputes its operator
   values from the profiles; the coefficient tables passed in are the
   object under audit, so a corrupted table is caught both by direct
   recomparison and by the residual it leaves in the assembled operator.

   Checks, in report order:

     normalized     sup |u| equals 1 exactly at the tails and is not
                    exceeded on the grid;
     admissible     every tabulated |a| and |c| stays margin away
                    from 1;
     kernel_pinched the assembled kernel stays between its two bounding
                    powers: using the largest tabulated |a| and |c|,
                    min over a log t-grid of
                      1 - (|a| ball_weight + |c| tail_weight) t^(1+alpha)
                          / cross_section
                    stays positive;
     residual       max |L u| over the grid through the single-sweep
                    evaluation path, against residual_scale (C0 + 1) /
                    sup_raw;
     reproducible   tabulated a and c agree with freshly recomputed
                    coefficient fields;
     gap            the oscillation of u across [-r, r] exceeds
                    gap_factor * eta(2r);
     extremal       the upper extremal operator stays above zero and the
                    lower below, within reported error plus slack, at
                    every grid point;
     deterministic  re-evaluating the residual at three grid points
                    reproduces the same numbers.
 */

struct VerifyTolerances {
  double residual_scale = 1e-3;  // residual <= this * (C0 + 1) / sup_raw
  double margin = 1e-3;          // |a|, |c| <= 1 - margin
  double reproduce = 1e-9;       // table vs recomputed coefficient
  double extremal_slack = 1e-6;  // allowed excursion past zero
  double gap_factor = 1.0;       // gap > gap_factor * eta(2r)
  double determinism = 1e-12;    // repeat evaluation discrepancy
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string note;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  const CheckResult* find(const std::string& name) const;
};

std::ostream& operator<<(std::ostream& os, const VerifyReport& report);

// One audited grid point: the abscissa and the coefficient values the
// construction claims there.
struct FieldSample {
  double x = 0.0;
  double a = 0.0;
  double c = 0.0;
};

// Audit points for the drift coefficient inside (-delta, delta): four
// per dyad over fourteen dyads, both signs, descending magnitude.
std::vector<double> drift_audit_points(double delta);

// Audit with explicit tables: `grid` carries (x, a, c) on the
// verification grid, `drift` carries (x, a) inside the dominance
// radius (its c member is ignored).
VerifyReport verify_tables(const Counterexample& ce,
                           const std::vector<FieldSample>& grid,
                           const std::vector<FieldSample>& drift,
                           const VerifyTolerances& tol = {});

// Materializes the tables from the construction's own fields and runs
// verify_tables.
VerifyReport verify_counterexample(const Counterexample& ce,
                                   const VerifyTolerances& tol = {});

}  // namespace nonsym

#endif
