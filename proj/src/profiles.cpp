#include "nonsym/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace nonsym {

double Profile::deriv(double x) const {
  for (double k : kinks) {
    if (x == k)
      throw std::domain_error("profile derivative undefined at kink x = " +
                              std::to_string(k));
  }
  return df(x);
}

namespace {

// Merge two sorted lists, dropping exact duplicates.
std::vector<double> merge_sorted(const std::vector<double>& a,
                                 const std::vector<double>& b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Profile smooth_step(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("smooth_step: requires r > 0");
  Profile p;
  p.limit_neg = -1.0;
  p.limit_pos = 1.0;
  p.support_radius = r;
  p.breakpoints = {-r, r};
  p.kinks = {};
  p.nondecreasing = true;
  p.f = [r](double x) {
    if (x >= r) return 1.0;
    if (x <= -r) return -1.0;
    const double s = x / r;
    const double s2 = s * s;
    return s * (15.0 + s2 * (-10.0 + 3.0 * s2)) / 8.0;
  };
  p.df = [r](double x) {
    if (x >= r || x <= -r) return 0.0;
    const double s = x / r;
    const double q = 1.0 - s * s;
    return 15.0 * q * q / (8.0 * r);
  };
  return p;
}

Profile holder_wedge(double alpha, double eps) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("holder_wedge: requires alpha in (0,1)");
  const double beta = 1.0 - alpha - eps;
  if (!(eps > 0.0 && beta > 0.0))
    throw std::invalid_argument(
        "holder_wedge: requires eps > 0 and alpha + eps < 1");
  const double top = std::pow(2.0, beta);
  Profile p;
  p.limit_neg = -top;
  p.limit_pos = top;
  p.support_radius = 2.0;
  p.breakpoints = {-2.0, 0.0, 2.0};
  p.kinks = {-2.0, 0.0, 2.0};
  p.nondecreasing = true;
  p.f = [beta, top](double x) {
    if (x >= 2.0) return top;
    if (x <= -2.0) return -top;
    return std::copysign(std::pow(std::abs(x), beta), x);
  };
  p.df = [beta](double x) {
    if (x >= 2.0 || x <= -2.0) return 0.0;
    return beta * std::pow(std::abs(x), beta - 1.0);
  };
  return p;
}

Profile clamped_ramp(double K, double scale) {
  if (!(K > 2.0)) throw std::invalid_argument("clamped_ramp: requires K > 2");
  Profile p;
  p.limit_neg = scale * -K;
  p.limit_pos = scale * K;
  p.support_radius = K;
  p.breakpoints = {-K, K};
  p.kinks = {-K, K};
  p.nondecreasing = scale >= 0.0;
  p.f = [K, scale](double x) {
    if (x >= K) return scale * K;
    if (x <= -K) return scale * -K;
    return scale * x;
  };
  p.df = [K, scale](double x) {
    if (x >= K || x <= -K) return 0.0;
    return scale;
  };
  return p;
}

Profile sum(std::vector<Profile> parts) {
  if (parts.empty()) throw std::invalid_argument("sum: requires parts");
  Profile p;
  p.limit_neg = 0.0;
  p.limit_pos = 0.0;
  p.support_radius = 0.0;
  p.nondecreasing = true;
  for (const Profile& q : parts) {
    p.limit_neg += q.limit_neg;
    p.limit_pos += q.limit_pos;
    p.support_radius = std::max(p.support_radius, q.support_radius);
    p.breakpoints = merge_sorted(p.breakpoints, q.breakpoints);
    p.kinks = merge_sorted(p.kinks, q.kinks);
    p.nondecreasing = p.nondecreasing && q.nondecreasing;
  }
  // Members evaluate their own tail branches, so summing in declaration
  // order reproduces limit_neg/limit_pos bitwise beyond support_radius.
  auto shared = std::make_shared<std::vector<Profile>>(std::move(parts));
  p.f = [shared](double x) {
    double acc = 0.0;
    for (const Profile& q : *shared) acc += q.f(x);
    return acc;
  };
  p.df = [shared](double x) {
    double acc = 0.0;
    for (const Profile& q : *shared) acc += q.df(x);
    return acc;
  };
  return p;
}

Profile scaled(Profile p, double factor) {
  Profile out;
  out.limit_neg = factor * p.limit_neg;
  out.limit_pos = factor * p.limit_pos;
  out.support_radius = p.support_radius;
  out.breakpoints = p.breakpoints;
  out.kinks = p.kinks;
  out.nondecreasing = p.nondecreasing && factor >= 0.0;
  auto base = std::make_shared<Profile>(std::move(p));
  out.f = [base, factor](double x) { return factor * base->f(x); };
  out.df = [base, factor](double x) { return factor * base->df(x); };
  return out;
}

Profile normalized(Profile p, double denom) {
  if (denom == 0.0 || !std::isfinite(denom))
    throw std::invalid_argument("normalized: denominator must be finite");
  Profile out;
  out.limit_neg = p.limit_neg / denom;
  out.limit_pos = p.limit_pos / denom;
  out.support_radius = p.support_radius;
  out.breakpoints = p.breakpoints;
  out.kinks = p.kinks;
  out.nondecreasing = p.nondecreasing && denom > 0.0;
  auto base = std::make_shared<Profile>(std::move(p));
  out.f = [base, denom](double x) { return base->f(x) / denom; };
  out.df = [base, denom](double x) { return base->df(x) / denom; };
  return out;
}

Modulus Modulus::power(double M, double gamma) {
  if (!(M > 0.0 && gamma > 0.0))
    throw std::invalid_argument("Modulus::power: requires M > 0, gamma > 0");
  Modulus m;
  m.eval_ = [M, gamma](double s) { return M * std::pow(s, gamma); };
  std::ostringstream os;
  os << "power(M=" << M << ", gamma=" << gamma << ")";
  m.desc_ = os.str();
  return m;
}

Modulus Modulus::log_decay(double M) {
  if (!(M > 0.0))
    throw std::invalid_argument("Modulus::log_decay: requires M > 0");
  Modulus m;
  m.eval_ = [M](double s) {
    if (s == 0.0) return 0.0;
    return M / std::max(1.0, -std::log(s));
  };
  std::ostringstream os;
  os << "log_decay(M=" << M << ")";
  m.desc_ = os.str();
  return m;
}

Modulus Modulus::table(std::vector<std::pair<double, double>> pts) {
  if (pts.empty()) throw std::invalid_argument("Modulus::table: empty table");
  if (pts.front().first < 0.0)
    throw std::invalid_argument("Modulus::table: requires s >= 0");
  if (pts.front().first == 0.0 && pts.front().second != 0.0)
    throw std::invalid_argument("Modulus::table: requires eta(0) = 0");
  if (pts.front().first > 0.0) pts.insert(pts.begin(), {0.0, 0.0});
  bool positive = false;
  for (size_t i = 1; i < pts.size(); ++i) {
    if (!(pts[i].first > pts[i - 1].first))
      throw std::invalid_argument(
          "Modulus::table: requires strictly increasing s");
    if (pts[i].second < pts[i - 1].second)
      throw std::invalid_argument("Modulus::table: requires nondecreasing eta");
    positive = positive || pts[i].second > 0.0;
  }
  if (!positive)
    throw std::invalid_argument("Modulus::table: eta vanishes identically");
  Modulus m;
  m.eval_ = [pts = std::move(pts)](double s) {
    if (s >= pts.back().first) return pts.back().second;
    auto hi = std::upper_bound(pts.begin(), pts.end(), s,
                               [](double v, const std::pair<double, double>& q) {
                                 return v < q.first;
                               });
    auto lo = hi - 1;
    const double t = (s - lo->first) / (hi->first - lo->first);
    return lo->second + t * (hi->second - lo->second);
  };
  m.desc_ = "table";
  return m;
}

double Modulus::operator()(double s) const {
  if (s < 0.0) throw std::domain_error("Modulus: requires s >= 0");
  return eval_(s);
}

}  // namespace nonsym
