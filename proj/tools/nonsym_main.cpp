/* Command line front end.

   Subcommands:
     build     run the construction pipeline and write a JSON artifact
     verify    re-audit a stored artifact against its own tables
     plotdata  tabulate profiles, coefficients and operator values as CSV
     sweep     scan (alpha, r) pairs at fixed step radius and report the
               dominance radius, bound and ramp each pair produces

   Exit codes: 0 success, 1 a verification check failed, 2 bad usage,
   3 construction or I/O failure.
*/
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nonsym/artifact_io.hpp"
#include "nonsym/construction.hpp"
#include "nonsym/operators.hpp"
#include "nonsym/params.hpp"
#include "nonsym/profiles.hpp"
#include "nonsym/verify.hpp"

namespace {

using namespace nonsym;

struct BuildOpts {
  double alpha = 0.5;
  double lambda = 1.0;
  double Lambda = 2.0;
  int dim = 1;
  double eps = 0.0;  // 0 keeps the (1 - alpha) / 2 default
  std::string eta = "power:1:0.1";
  std::string out = "counterexample.json";
  BuildConfig bc;
};

struct VerifyOpts {
  std::string in;
  std::string report;  // JSON report path, empty skips the file
  std::string table;   // per-point CSV path, empty skips the file
};

struct PlotOpts {
  std::string in;
  std::string out = "plotdata.csv";
  int points = 2048;
};

struct SweepOpts {
  std::vector<double> alphas = {0.25, 0.5, 0.75};
  std::vector<double> radii = {0.03125, 0.00390625, 0.00048828125};
  double lambda = 1.0;
  double Lambda = 2.0;
  int dim = 1;
  std::string out;  // CSV path, empty keeps stdout only
};

ProblemParams make_params(double alpha, double lambda, double Lambda, int dim,
                          double eps) {
  ProblemParams p = ProblemParams::make(alpha, lambda, Lambda, dim);
  if (eps > 0.0) {
    p.eps = eps;
    p.validate();
  }
  return p;
}

// The stored artifact is the user-facing handle; a path that cannot be
// read is a usage error, not a pipeline failure.
Artifact load_or_usage(const std::string& path) {
  try {
    return load_artifact(path);
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument(e.what());
  }
}

// Reproducibility header emitted at the top of every CSV.
void write_config_header(std::ostream& os, const Artifact& art) {
  os << "# artifact format " << kArtifactFormat << "\n"
     << "# alpha " << art.params.alpha << ", lambda " << art.params.lambda
     << ", Lambda " << art.params.Lambda << ", dim " << art.params.dim
     << ", eps " << art.params.eps << "\n"
     << "# eta " << art.eta.kind << ", r " << art.r << ", delta "
     << art.delta << ", ramp K " << art.ramp_K << ", ramp scale "
     << art.ramp_scale << ", bound " << art.bound << "\n";
}

// "2^-23 (1.19e-07)" when x is an exact power of two, plain value otherwise.
std::string dyadic(double x) {
  std::ostringstream os;
  os << std::setprecision(17);
  const double k = std::round(std::log2(x));
  if (x > 0.0 && std::exp2(k) == x) {
    os << "2^" << static_cast<long>(k) << " (" << x << ")";
  } else {
    os << x;
  }
  return os.str();
}

int run_build(const BuildOpts& opt) {
  const ModulusSpec spec = ModulusSpec::parse(opt.eta);
  const ProblemParams params =
      make_params(opt.alpha, opt.lambda, opt.Lambda, opt.dim, opt.eps);
  const Counterexample ce = build(params, spec.make(), opt.bc);
  save_artifact(opt.out, ce, spec);

  std::cout << std::setprecision(17);
  std::cout << "rounds      " << ce.rounds() << "\n"
            << "r           " << dyadic(ce.r()) << "\n"
            << "delta       " << dyadic(ce.delta()) << "\n"
            << "bound       " << ce.bound() << "\n"
            << "ramp K      " << ce.ramp_K() << "\n"
            << "ramp scale  " << ce.ramp_scale() << "\n"
            << "sup raw     " << ce.sup_raw() << "\n"
            << "gap         " << ce.gap() << "\n"
            << "eta(2r)     " << ce.eta_at_2r() << "\n"
            << "artifact    " << opt.out << "\n";
  return 0;
}

int run_verify(const VerifyOpts& opt) {
  const Artifact art = load_or_usage(opt.in);
  const Counterexample ce = art.reconstruct();
  const VerifyReport report = verify_tables(ce, art.grid, art.drift);
  std::cout << report;

  if (!opt.report.empty()) {
    nlohmann::json j;
    j["artifact"] = opt.in;
    j["config"] = {{"alpha", art.params.alpha},
                   {"lambda", art.params.lambda},
                   {"Lambda", art.params.Lambda},
                   {"dim", art.params.dim},
                   {"eps", art.params.eps},
                   {"eta", art.eta.kind}};
    j["all_pass"] = report.all_pass();
    j["checks"] = nlohmann::json::array();
    for (const CheckResult& c : report.checks) {
      j["checks"].push_back({{"name", c.name},
                             {"pass", c.pass},
                             {"measured", c.measured},
                             {"threshold", c.threshold},
                             {"note", c.note}});
    }
    std::ofstream os(opt.report);
    if (!os) throw std::runtime_error("verify: cannot write " + opt.report);
    os << j.dump(2) << "\n";
  }

  if (!opt.table.empty()) {
    const Operators& ops = ce.ops();
    const Profile& u = ce.solution();
    std::ofstream os(opt.table);
    if (!os) throw std::runtime_error("verify: cannot write " + opt.table);
    os << std::setprecision(17);
    write_config_header(os, art);
    os << "x1,L1,L2,L3,L4,a,c,L_direct,M_plus,M_minus\n";
    for (const FieldSample& s : art.grid) {
      os << s.x << ',' << ops.part1(u, s.x).value << ','
         << ops.part2(u, s.x).value << ',' << ops.part3(u, s.x).value << ','
         << ops.part4(u, s.x).value << ',' << s.a << ',' << s.c << ','
         << ops.apply_direct(u, s.x, s.a, s.c).value << ','
         << ops.extremal_max(u, s.x).value << ','
         << ops.extremal_min(u, s.x).value << '\n';
    }
  }

  if (!report.all_pass()) {
    std::cout << "verification FAILED\n";
    return 1;
  }
  std::cout << "all checks passed\n";
  return 0;
}

int run_plotdata(const PlotOpts& opt) {
  if (opt.points < 1) {
    throw std::invalid_argument("plotdata: --points must be positive");
  }
  const Artifact art = load_or_usage(opt.in);
  const Counterexample ce = art.reconstruct();
  const Operators& ops = ce.ops();
  const Profile& u = ce.solution();
  const Profile wedge =
      holder_wedge(ce.params().alpha, ce.params().eps);

  std::ofstream os(opt.out);
  if (!os) {
    throw std::runtime_error("plotdata: cannot write " + opt.out);
  }
  os << std::setprecision(17);
  write_config_header(os, art);
  os << "x,u,ubar,v,w,a,c,part1,part2,part3,part4,"
        "L_direct,M_plus,M_minus\n";
  for (int i = 0; i < opt.points; ++i) {
    // Half-offset samples never land on x = 0, the one breakpoint a
    // uniform grid over [-3, 3] could hit for every point count.
    const double x = -3.0 + 6.0 * (i + 0.5) / opt.points;
    const double a = ce.coef_a(x);
    const double c = ce.coef_c(x);
    os << x << ',' << u(x) << ',' << ce.step_and_wedge()(x) << ','
       << wedge(x) << ',' << ce.ramp()(x) << ',' << a << ',' << c << ','
       << ops.part1(u, x).value << ',' << ops.part2(u, x).value << ','
       << ops.part3(u, x).value << ',' << ops.part4(u, x).value << ','
       << ops.apply_direct(u, x, a, c).value << ','
       << ops.extremal_max(u, x).value << ','
       << ops.extremal_min(u, x).value << '\n';
  }
  std::cout << "wrote " << opt.points << " rows to " << opt.out << "\n";
  return 0;
}

int run_sweep(const SweepOpts& opt) {
  if (opt.alphas.empty() || opt.radii.empty()) {
    throw std::invalid_argument("sweep: alpha and r lists must be nonempty");
  }
  const BuildConfig bc;
  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "# lambda " << opt.lambda << ", Lambda " << opt.Lambda << ", dim "
      << opt.dim << ", rel_tol " << bc.quad.rel_tol << ", abs_tol "
      << bc.quad.abs_tol << "\n";
  csv << "alpha,r,delta,C0,K,C_w,margin,status\n";
  for (double alpha : opt.alphas) {
    for (double r : opt.radii) {
      csv << alpha << ',' << r << ',';
      try {
        const ProblemParams params =
            make_params(alpha, opt.lambda, opt.Lambda, opt.dim, 0.0);
        const Operators ops(Reduction(params), bc.quad);
        const Profile ubar =
            sum({smooth_step(r), holder_wedge(params.alpha, params.eps)});
        const double delta = find_delta(ops, ubar, bc);
        const double C0 = measure_bound(ops, ubar, delta, bc);
        const RampChoice ramp = choose_ramp(ops, C0, bc);
        csv << delta << ',' << C0 << ',' << ramp.K << ',' << ramp.C_w << ','
            << ramp.margin << ",ok\n";
      } catch (const std::exception& e) {
        csv << ",,,,\"failed: " << e.what() << "\"\n";
      }
    }
  }
  std::cout << csv.str();
  if (!opt.out.empty()) {
    std::ofstream os(opt.out);
    if (!os) throw std::runtime_error("sweep: cannot write " + opt.out);
    os << csv.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-symmetric kernel counterexample toolkit"};
  app.require_subcommand(1);
  // Key=value file with one [subcommand] section, e.g. [build]; values
  // fill in whatever the command line left unset. Goes before the
  // subcommand name: nonsym --config run.ini build
  app.set_config("--config")->check(CLI::ExistingFile);

  BuildOpts bo;
  CLI::App* b = app.add_subcommand(
      "build", "construct a counterexample and write the artifact");
  b->add_option("--alpha", bo.alpha, "operator order in (0, 1)")
      ->capture_default_str();
  b->add_option("--lambda", bo.lambda, "lower kernel bound")
      ->capture_default_str();
  b->add_option("--Lambda", bo.Lambda, "upper kernel bound")
      ->capture_default_str();
  b->add_option("--n,--dim", bo.dim, "ambient dimension, 1 to 8")
      ->capture_default_str();
  b->add_option("--eps", bo.eps,
                "wedge exponent slack, default (1 - alpha) / 2");
  b->add_option("--eta", bo.eta,
                "modulus to defeat: power:M:gamma | log:M | table:file.csv")
      ->capture_default_str();
  b->add_option("--out", bo.out, "artifact path")->capture_default_str();
  b->add_option("--safety", bo.bc.safety, "initial ceiling for eta(2r)")
      ->capture_default_str();
  b->add_option("--max-rounds", bo.bc.max_rounds,
                "rounds of gap re-checking before giving up")
      ->capture_default_str();
  b->add_option("--grid-points", bo.bc.grid.points_per_side,
                "verification grid points per side")
      ->capture_default_str();
  b->add_option("--rel-tol", bo.bc.quad.rel_tol, "quadrature relative tolerance")
      ->capture_default_str();
  b->add_option("--abs-tol", bo.bc.quad.abs_tol, "quadrature absolute tolerance")
      ->capture_default_str();

  VerifyOpts vo;
  CLI::App* v = app.add_subcommand(
      "verify", "re-run every check on a stored artifact");
  v->add_option("--in", vo.in, "artifact path")->required();
  v->add_option("--report", vo.report, "also write the report as JSON");
  v->add_option("--table", vo.table,
                "also write per-point operator values as CSV");

  PlotOpts po;
  CLI::App* pl = app.add_subcommand(
      "plotdata", "tabulate profiles and operator values over [-3, 3]");
  pl->add_option("--in", po.in, "artifact path")->required();
  pl->add_option("--out", po.out, "CSV path")->capture_default_str();
  pl->add_option("--points", po.points, "sample count")->capture_default_str();

  SweepOpts so;
  CLI::App* sw = app.add_subcommand(
      "sweep", "scan (alpha, r) pairs at fixed step radius");
  sw->add_option("--alpha-list", so.alphas, "orders to scan")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sw->add_option("--r-list", so.radii, "step radii to scan")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sw->add_option("--lambda", so.lambda, "lower kernel bound")
      ->capture_default_str();
  sw->add_option("--Lambda", so.Lambda, "upper kernel bound")
      ->capture_default_str();
  sw->add_option("--n,--dim", so.dim, "ambient dimension, 1 to 8")
      ->capture_default_str();
  sw->add_option("--out", so.out, "also write the CSV to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (b->parsed()) return run_build(bo);
    if (v->parsed()) return run_verify(vo);
    if (pl->parsed()) return run_plotdata(po);
    return run_sweep(so);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
