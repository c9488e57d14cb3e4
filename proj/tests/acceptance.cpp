/* Acceptance checks, one per line.

   Each criterion re-derives its expected numbers from closed forms or
   from independent re-evaluation, times itself, and prints exactly one
   PASS/FAIL line. The process exits 0 only if every criterion passes.
*/
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nonsym/construction.hpp"
#include "nonsym/operators.hpp"
#include "nonsym/params.hpp"
#include "nonsym/profiles.hpp"
#include "nonsym/verify.hpp"

namespace {

using namespace nonsym;

// n equally spaced samples of (lo, hi), offset half a cell so no sample
// lands on an endpoint, the origin, or any dyadic kink.
std::vector<double> offset_grid(double lo, double hi, int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = lo + (hi - lo) * (i + 0.5) / n;
  }
  return xs;
}

// Unit clamp x -> max(-1, min(1, x)). clamped_ramp() refuses K <= 2
// because the operator assembly needs the corners outside the unit
// ball; the pure t^(-1-alpha) part has no such constraint, so the
// K = 1 oracle profile is assembled by hand.
Profile unit_clamp() {
  Profile p;
  p.limit_neg = -1.0;
  p.limit_pos = 1.0;
  p.support_radius = 1.0;
  p.breakpoints = {-1.0, 1.0};
  p.kinks = {-1.0, 1.0};
  p.nondecreasing = true;
  p.f = [](double x) { return std::max(-1.0, std::min(1.0, x)); };
  p.df = [](double x) { return std::abs(x) < 1.0 ? 1.0 : 0.0; };
  return p;
}

struct Line {
  bool pass = false;
  std::string note;
};

// 1. The clamp profile admits a closed-form image under the symmetric
// part: c0/(alpha(1-alpha)) (|x-1|^(1-alpha) - |x+1|^(1-alpha)) on
// |x| <= 1. Quadrature must reproduce it to 1e-6 relative.
Line criterion_closed_form() {
  const Profile w = unit_clamp();
  double worst = 0.0;
  const struct {
    int dim;
    double alpha, lambda, Lambda;
  } sets[] = {{1, 0.5, 1.0, 2.0}, {2, 0.5, 1.0, 2.0}, {1, 0.75, 1.0, 3.0}};
  for (const auto& s : sets) {
    const Reduction red(
        ProblemParams::make(s.alpha, s.lambda, s.Lambda, s.dim));
    const Operators ops(red);
    const double scale = red.c0() / (s.alpha * (1.0 - s.alpha));
    for (double x : offset_grid(-1.0, 1.0, 64)) {
      const double exact = scale * (std::pow(std::abs(x - 1.0), 1.0 - s.alpha) -
                                    std::pow(std::abs(x + 1.0), 1.0 - s.alpha));
      const double got = ops.part1(w, x).value;
      worst = std::max(worst, std::abs(got - exact) / std::abs(exact));
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max relative error %.3e", worst);
  return {worst <= 1e-6, buf};
}

// 2. On a ramp that is linear across the unit ball the drift part
// cancels the gradient correction exactly; quadrature agreement to
// 1e-8 of the drift coefficient.
Line criterion_drift_cancellation() {
  const Reduction red(ProblemParams::make(0.5, 1.0, 2.0, 1));
  const Operators ops(red);
  double worst = 0.0;
  for (double K : {4.0, 16.0}) {
    const Profile w = clamped_ramp(K);
    for (double x : offset_grid(-1.0, 1.0, 128)) {
      worst = std::max(worst, std::abs(ops.part2(w, x).value -
                                       ops.part4(w, x).value));
    }
  }
  const double tol = 1e-8 * red.drift_coeff();
  char buf[96];
  std::snprintf(buf, sizeof buf, "max |part2 - part4| %.3e vs %.3e", worst,
                tol);
  return {worst <= tol, buf};
}

// 3. Dilation covariance of the symmetric part: the step at radius r
// maps to r^-alpha times the unit step evaluated at x/r.
Line criterion_scaling() {
  const Reduction red(ProblemParams::make(0.5, 1.0, 2.0, 1));
  const Operators ops(red);
  const Profile u1 = smooth_step(1.0);
  double worst_ratio = 0.0;
  for (double r : {0.5, 0.125}) {
    const Profile ur = smooth_step(r);
    const double pull = std::pow(r, -0.5);
    const double tol = 1e-6 * std::max(1.0, pull);
    for (double x : offset_grid(-2.0, 2.0, 32)) {
      const double lhs = ops.part1(ur, x).value;
      const double rhs = pull * ops.part1(u1, x / r).value;
      worst_ratio = std::max(worst_ratio, std::abs(lhs - rhs) / tol);
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "worst deviation %.3e of allowance",
                worst_ratio);
  return {worst_ratio <= 1.0, buf};
}

// 4. The peak of |part1 w_K| over the unit interval decays like
// K^-alpha; the log-log slope over K in {4, 8, 16, 32} must sit within
// 0.05 of -alpha.
Line criterion_decay_exponent() {
  const Reduction red(ProblemParams::make(0.5, 1.0, 2.0, 1));
  const Operators ops(red);
  const auto xs = offset_grid(-1.0, 1.0, 33);
  std::vector<double> lk, lm;
  for (double K : {4.0, 8.0, 16.0, 32.0}) {
    const Profile w = clamped_ramp(K);
    double peak = 0.0;
    for (double x : xs) {
      peak = std::max(peak, std::abs(ops.part1(w, x).value));
    }
    lk.push_back(std::log(K));
    lm.push_back(std::log(peak));
  }
  double sk = 0.0, sm = 0.0, skk = 0.0, skm = 0.0;
  const double n = static_cast<double>(lk.size());
  for (std::size_t i = 0; i < lk.size(); ++i) {
    sk += lk[i];
    sm += lm[i];
    skk += lk[i] * lk[i];
    skm += lk[i] * lm[i];
  }
  const double slope = (n * skm - sk * sm) / (n * skk - sk * sk);
  char buf[96];
  std::snprintf(buf, sizeof buf, "slope %.4f vs -0.5", slope);
  return {std::abs(slope + 0.5) <= 0.05, buf};
}

// 5. The far piece of a ramp grows like the truncated tail integral:
// part3 w_K >= 2 H A ((K-1)^(1-alpha) - 1)/(1-alpha) across the unit
// interval, in one and two dimensions.
Line criterion_far_lower_bound() {
  const double K = 8.0;
  double worst_margin = 1e300;
  for (int dim : {1, 2}) {
    const ProblemParams params = ProblemParams::make(0.5, 1.0, 2.0, dim);
    const Reduction red(params);
    const Operators ops(red);
    const Profile w = clamped_ramp(K);
    const double bound = 2.0 * params.half_gap() * red.cross_section() *
                         (std::pow(K - 1.0, 0.5) - 1.0) / 0.5;
    for (double x : offset_grid(-1.0, 1.0, 128)) {
      worst_margin =
          std::min(worst_margin, ops.part3(w, x).value / bound - 1.0);
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "min headroom %.3f of the bound",
                worst_margin);
  return {worst_margin >= 0.0, buf};
}

// 6. Assembling the operator from the four parts and evaluating it in
// one sweep agree to 1e-6 relative for random admissible coefficients.
Line criterion_assembly_agreement() {
  const Reduction red(ProblemParams::make(0.5, 1.0, 2.0, 1));
  const Operators ops(red);
  const Profile u = sum({smooth_step(0.03125), holder_wedge(0.5, 0.25),
                         scaled(clamped_ramp(4.0), 10.0)});
  std::mt19937 gen(12345);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  double worst = 0.0;
  const auto xs = offset_grid(-1.0, 1.0, 16);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = coef(gen);
    const double c = coef(gen);
    for (double x : xs) {
      const double lhs = ops.apply(u, x, a, c).value;
      const double rhs = ops.apply_direct(u, x, a, c).value;
      const double denom = std::max({1.0, std::abs(lhs), std::abs(rhs)});
      worst = std::max(worst, std::abs(lhs - rhs) / denom);
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "max relative gap %.3e", worst);
  return {worst <= 1e-6, buf};
}

// 7. End to end: the canonical parameters produce a construction that
// survives the full audit.
Line criterion_end_to_end(std::optional<Counterexample>& out) {
  const Counterexample ce =
      build(ProblemParams::make(0.5, 1.0, 2.0, 1), Modulus::power(1.0, 0.1));
  const VerifyReport report = verify_counterexample(ce);
  int failed = 0;
  for (const CheckResult& c : report.checks) failed += !c.pass;
  out.emplace(ce);
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "rounds %d, gap %.4f > eta(2r) %.4f, %d/%zu checks failed",
                ce.rounds(), ce.gap(), ce.eta_at_2r(), failed,
                report.checks.size());
  return {report.all_pass(), buf};
}

// 8. The headroom bound is a property of the wedge, not of the step
// radius: C0 measured at three radii spans at most 20 percent.
Line criterion_bound_stability() {
  const Reduction red(ProblemParams::make(0.5, 1.0, 2.0, 1));
  const BuildConfig bc;
  const Operators ops(red, bc.quad);
  double lo = 1e300, hi = 0.0;
  for (double r : {0.03125, 0.00390625, 0.00048828125}) {
    const Profile ubar = sum({smooth_step(r), holder_wedge(0.5, 0.25)});
    const double delta = find_delta(ops, ubar, bc);
    const double C0 = measure_bound(ops, ubar, delta, bc);
    lo = std::min(lo, C0);
    hi = std::max(hi, C0);
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "C0 in [%.4f, %.4f], ratio %.4f", lo, hi,
                hi / lo);
  return {hi / lo <= 1.2, buf};
}

// 9. The audit notices a corrupted coefficient table: +0.2 on one
// stored c value must fail the residual or admissibility check.
Line criterion_fault_injection(const std::optional<Counterexample>& ce) {
  if (!ce) return {false, "construction unavailable"};
  std::vector<FieldSample> grid;
  for (double x : ce->config().grid.make(ce->solution())) {
    grid.push_back({x, ce->coef_a(x), ce->coef_c(x)});
  }
  std::vector<FieldSample> drift;
  for (double x : drift_audit_points(ce->delta())) {
    drift.push_back({x, ce->coef_a(x), 0.0});
  }
  grid[grid.size() / 2].c += 0.2;
  const VerifyReport report = verify_tables(*ce, grid, drift);
  const bool residual = report.find("residual")->pass;
  const bool admissible = report.find("admissible")->pass;
  char buf[96];
  std::snprintf(buf, sizeof buf, "residual %s, admissible %s",
                residual ? "passed" : "failed",
                admissible ? "passed" : "failed");
  return {!residual || !admissible, buf};
}

}  // namespace

int main() {
  std::optional<Counterexample> built;
  int failures = 0;

  const auto report = [&failures](int id, const char* name, double budget_s,
                                  auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Line line;
    try {
      line = fn();
    } catch (const std::exception& e) {
      line = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    const bool pass = line.pass && elapsed < budget_s;
    failures += !pass;
    std::printf("%s  %d %-22s %s [%.1fs of %.0fs]\n",
                pass ? "PASS" : "FAIL", id, name, line.note.c_str(), elapsed,
                budget_s);
    std::fflush(stdout);
  };

  report(1, "ramp closed form", 10.0, criterion_closed_form);
  report(2, "drift cancellation", 10.0, criterion_drift_cancellation);
  report(3, "dilation covariance", 10.0, criterion_scaling);
  report(4, "decay exponent", 20.0, criterion_decay_exponent);
  report(5, "far-piece lower bound", 10.0, criterion_far_lower_bound);
  report(6, "assembly agreement", 20.0, criterion_assembly_agreement);
  report(7, "end-to-end audit", 60.0,
         [&built] { return criterion_end_to_end(built); });
  report(8, "bound stability in r", 60.0, criterion_bound_stability);
  report(9, "fault injection", 10.0,
         [&built] { return criterion_fault_injection(built); });

  return failures == 0 ? 0 : 1;
}
