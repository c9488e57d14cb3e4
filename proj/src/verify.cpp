#include "nonsym/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nonsym {

bool VerifyReport::all_pass() const {
  for (const CheckResult& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

const CheckResult* VerifyReport::find(const std::string& name) const {
  for (const CheckResult& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::ostream& operator<<(std::ostream& os, const VerifyReport& report) {
  for (const CheckResult& c : report.checks) {
    os << (c.pass ? "PASS" : "FAIL") << "  " << c.name << ": measured "
       << c.measured << " vs " << c.threshold;
    if (!c.note.empty()) os << "  (" << c.note << ")";
    os << "\n";
  }
  return os;
}

std::vector<double> drift_audit_points(double delta) {
  std::vector<double> xs;
  xs.reserve(2 * 14 * 4);
  for (int m = 0; m < 14; ++m) {
    for (int i = 0; i < 4; ++i) {
      const double x = delta * std::exp2(-(m + i / 4.0));
      xs.push_back(x);
      xs.push_back(-x);
    }
  }
  return xs;
}

namespace {

CheckResult check_normalized(const Counterexample& ce,
                             const std::vector<FieldSample>& grid) {
  const Profile& u = ce.solution();
  double sup = std::max(std::fabs(u.limit_neg), std::fabs(u.limit_pos));
  for (const FieldSample& s : grid) {
    sup = std::max(sup, std::fabs(u(s.x)));
  }
  CheckResult out;
  out.name = "normalized";
  out.measured = sup;
  out.threshold = 1.0;
  out.pass = sup <= 1.0 && std::fabs(u.limit_pos) == 1.0;
  return out;
}

CheckResult check_admissible(const std::vector<FieldSample>& grid,
                             const std::vector<FieldSample>& drift,
                             const VerifyTolerances& tol, double& a_max,
                             double& c_max) {
  a_max = 0.0;
  c_max = 0.0;
  for (const FieldSample& s : grid) {
    a_max = std::max(a_max, std::fabs(s.a));
    c_max = std::max(c_max, std::fabs(s.c));
  }
  for (const FieldSample& s : drift) {
    a_max = std::max(a_max, std::fabs(s.a));
  }
  CheckResult out;
  out.name = "admissible";
  out.measured = std::max(a_max, c_max);
  out.threshold = 1.0 - tol.margin;
  out.pass = out.measured <= out.threshold;
  return out;
}

CheckResult check_kernel(const Counterexample& ce, double a_max,
                         double c_max) {
  const Reduction& red = ce.ops().reduction();
  const double alpha = red.params().alpha;
  const double A = red.cross_section();
  double slack = 1.0;
  // log-spaced |t| from 1e-6 to 1e3, twenty five points per decade
  for (int i = 0; i <= 225; ++i) {
    const double t = std::pow(10.0, -6.0 + i / 25.0);
    const double w3 = red.tail_weight(t);
    const double ball = t < 1.0 ? red.ball_weight(t) : 0.0;
    const double used =
        (a_max * ball + c_max * w3) * std::pow(t, 1.0 + alpha) / A;
    slack = std::min(slack, 1.0 - used);
  }
  CheckResult out;
  out.name = "kernel_pinched";
  out.measured = slack;
  out.threshold = 0.0;
  out.pass = slack > 0.0;
  return out;
}

CheckResult check_residual(const Counterexample& ce,
                           const std::vector<FieldSample>& grid,
                           const VerifyTolerances& tol) {
  double worst = 0.0;
  double at = 0.0;
  for (const FieldSample& s : grid) {
    const QuadResult lu = ce.ops().apply_direct(ce.solution(), s.x, s.a, s.c);
    if (std::fabs(lu.value) > worst) {
      worst = std::fabs(lu.value);
      at = s.x;
    }
  }
  CheckResult out;
  out.name = "residual";
  out.measured = worst;
  out.threshold = tol.residual_scale * (ce.bound() + 1.0) / ce.sup_raw();
  out.pass = worst <= out.threshold;
  std::ostringstream os;
  os << "largest at x = " << at;
  out.note = os.str();
  return out;
}

CheckResult check_reproducible(const Counterexample& ce,
                               const std::vector<FieldSample>& grid,
                               const std::vector<FieldSample>& drift,
                               const VerifyTolerances& tol) {
  double worst = 0.0;
  for (const FieldSample& s : grid) {
    worst = std::max(worst, std::fabs(s.a - ce.coef_a(s.x)));
    worst = std::max(worst, std::fabs(s.c - ce.coef_c(s.x)));
  }
  for (const FieldSample& s : drift) {
    worst = std::max(worst, std::fabs(s.a - ce.coef_a(s.x)));
  }
  CheckResult out;
  out.name = "reproducible";
  out.measured = worst;
  out.threshold = tol.reproduce;
  out.pass = worst <= out.threshold;
  return out;
}

CheckResult check_gap(const Counterexample& ce, const VerifyTolerances& tol) {
  CheckResult out;
  out.name = "gap";
  out.measured = ce.gap();
  out.threshold = tol.gap_factor * ce.eta_at_2r();
  out.pass = out.measured > out.threshold;
  std::ostringstream os;
  os << "oscillation across [-r, r] vs eta(2r), r = " << ce.r();
  out.note = os.str();
  return out;
}

CheckResult check_extremal(const Counterexample& ce,
                           const std::vector<FieldSample>& grid,
                           const VerifyTolerances& tol) {
  // necessary condition for L u = 0 under some admissible kernel: the
  // extremal envelope must bracket zero at every audited point
  double worst = std::numeric_limits<double>::infinity();
  double at = 0.0;
  for (const FieldSample& s : grid) {
    const QuadResult hi = ce.ops().extremal_max(ce.solution(), s.x);
    const QuadResult lo = ce.ops().extremal_min(ce.solution(), s.x);
    const double up = hi.value + hi.error + tol.extremal_slack;
    const double dn = -(lo.value - lo.error - tol.extremal_slack);
    const double m = std::min(up, dn);
    if (m < worst) {
      worst = m;
      at = s.x;
    }
  }
  CheckResult out;
  out.name = "extremal";
  out.measured = worst;
  out.threshold = 0.0;
  out.pass = worst >= 0.0;
  std::ostringstream os;
  os << "tightest at x = " << at;
  out.note = os.str();
  return out;
}

CheckResult check_deterministic(const Counterexample& ce,
                                const std::vector<FieldSample>& grid,
                                const VerifyTolerances& tol) {
  double worst = 0.0;
  const std::size_t picks[] = {0, grid.size() / 2, grid.size() - 1};
  for (std::size_t i : picks) {
    const FieldSample& s = grid[i];
    const QuadResult first =
        ce.ops().apply_direct(ce.solution(), s.x, s.a, s.c);
    const QuadResult second =
        ce.ops().apply_direct(ce.solution(), s.x, s.a, s.c);
    worst = std::max(worst, std::fabs(first.value - second.value));
  }
  CheckResult out;
  out.name = "deterministic";
  out.measured = worst;
  out.threshold = tol.determinism;
  out.pass = worst <= out.threshold;
  return out;
}

}  // namespace

VerifyReport verify_tables(const Counterexample& ce,
                           const std::vector<FieldSample>& grid,
                           const std::vector<FieldSample>& drift,
                           const VerifyTolerances& tol) {
  if (grid.empty()) {
    throw std::invalid_argument("verification grid must not be empty");
  }
  VerifyReport report;
  report.checks.push_back(check_normalized(ce, grid));
  double a_max = 0.0;
  double c_max = 0.0;
  report.checks.push_back(
      check_admissible(grid, drift, tol, a_max, c_max));
  report.checks.push_back(check_kernel(ce, a_max, c_max));
  report.checks.push_back(check_residual(ce, grid, tol));
  report.checks.push_back(check_reproducible(ce, grid, drift, tol));
  report.checks.push_back(check_gap(ce, tol));
  report.checks.push_back(check_extremal(ce, grid, tol));
  report.checks.push_back(check_deterministic(ce, grid, tol));
  return report;
}

VerifyReport verify_counterexample(const Counterexample& ce,
                                   const VerifyTolerances& tol) {
  std::vector<FieldSample> grid;
  for (double x : ce.config().grid.make(ce.solution())) {
    grid.push_back({x, ce.coef_a(x), ce.coef_c(x)});
  }
  std::vector<FieldSample> drift;
  for (double x : drift_audit_points(ce.delta())) {
    drift.push_back({x, ce.coef_a(x), 0.0});
  }
  return verify_tables(ce, grid, drift, tol);
}

}  // namespace nonsym
