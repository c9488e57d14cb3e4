#include "nonsym/artifact_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace nonsym {

using nlohmann::json;

Modulus ModulusSpec::make() const {
  if (kind == "power") return Modulus::power(M, gamma);
  if (kind == "log") return Modulus::log_decay(M);
  if (kind == "table") return Modulus::table(points);
  throw std::invalid_argument("unknown modulus kind '" + kind + "'");
}

namespace {

double parse_number(const std::string& part, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(part, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("modulus spec: bad " + what + " '" + part +
                                "'");
  }
  if (used != part.size()) {
    throw std::invalid_argument("modulus spec: bad " + what + " '" + part +
                                "'");
  }
  return value;
}

std::vector<std::pair<double, double>> read_modulus_table(
    const std::string& path) {
  std::ifstream is(path);
  if (!is) {
    throw std::runtime_error("cannot open modulus table '" + path + "'");
  }
  std::vector<std::pair<double, double>> pts;
  std::string line;
  while (std::getline(is, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    double s = 0.0;
    double v = 0.0;
    char comma = 0;
    if (!(row >> s >> comma >> v) || comma != ',') {
      throw std::invalid_argument("modulus table '" + path +
                                  "': expected 's,eta' but got '" + line +
                                  "'");
    }
    pts.emplace_back(s, v);
  }
  return pts;
}

}  // namespace

ModulusSpec ModulusSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    if (colon == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, colon - start));
    start = colon + 1;
  }

  ModulusSpec spec;
  spec.kind = parts[0];
  if (spec.kind == "power") {
    if (parts.size() != 3) {
      throw std::invalid_argument("modulus spec: expected power:M:gamma");
    }
    spec.M = parse_number(parts[1], "M");
    spec.gamma = parse_number(parts[2], "gamma");
  } else if (spec.kind == "log") {
    if (parts.size() != 2) {
      throw std::invalid_argument("modulus spec: expected log:M");
    }
    spec.M = parse_number(parts[1], "M");
  } else if (spec.kind == "table") {
    if (parts.size() != 2 || parts[1].empty()) {
      throw std::invalid_argument("modulus spec: expected table:file.csv");
    }
    spec.points = read_modulus_table(parts[1]);
  } else {
    throw std::invalid_argument("unknown modulus kind '" + spec.kind + "'");
  }
  spec.make();  // validates the parameters
  return spec;
}

namespace {

json spec_to_json(const ModulusSpec& spec) {
  json j;
  j["kind"] = spec.kind;
  if (spec.kind == "power") {
    j["M"] = spec.M;
    j["gamma"] = spec.gamma;
  } else if (spec.kind == "log") {
    j["M"] = spec.M;
  } else {
    j["points"] = spec.points;
  }
  return j;
}

ModulusSpec spec_from_json(const json& j) {
  ModulusSpec spec;
  spec.kind = j.at("kind").get<std::string>();
  if (spec.kind == "power") {
    spec.M = j.at("M").get<double>();
    spec.gamma = j.at("gamma").get<double>();
  } else if (spec.kind == "log") {
    spec.M = j.at("M").get<double>();
  } else if (spec.kind == "table") {
    spec.points =
        j.at("points").get<std::vector<std::pair<double, double>>>();
  } else {
    throw std::runtime_error("artifact: unknown modulus kind '" + spec.kind +
                             "'");
  }
  return spec;
}

}  // namespace

void save_artifact(const std::string& path, const Counterexample& ce,
                   const ModulusSpec& eta) {
  const ProblemParams& p = ce.params();
  const BuildConfig& bc = ce.config();

  json j;
  j["format"] = kArtifactFormat;
  j["config"] = {{"alpha", p.alpha}, {"lambda", p.lambda},
                 {"Lambda", p.Lambda}, {"dim", p.dim},
                 {"eps", p.eps},       {"eta", spec_to_json(eta)}};
  j["build"] = {
      {"safety", bc.safety},
      {"dominance", bc.dominance},
      {"bound_margin", bc.bound_margin},
      {"ramp_margin", bc.ramp_margin},
      {"ramp_floor", bc.ramp_floor},
      {"gap_margin", bc.gap_margin},
      {"max_rounds", bc.max_rounds},
      {"grid",
       {{"points_per_side", bc.grid.points_per_side},
        {"edge", bc.grid.edge},
        {"inner_exclusion", bc.grid.inner_exclusion},
        {"kink_offset", bc.grid.kink_offset}}},
      {"quad",
       {{"rel_tol", bc.quad.rel_tol},
        {"abs_tol", bc.quad.abs_tol},
        {"max_panels", bc.quad.max_panels},
        {"singularity_split", bc.quad.singularity_split}}}};
  j["construction"] = {{"r", ce.r()},
                       {"delta", ce.delta()},
                       {"ramp_K", ce.ramp_K()},
                       {"ramp_scale", ce.ramp_scale()},
                       {"bound", ce.bound()},
                       {"sup_raw", ce.sup_raw()},
                       {"rounds", ce.rounds()},
                       {"safety_used", ce.safety_used()},
                       {"gap", ce.gap()},
                       {"eta_at_2r", ce.eta_at_2r()}};

  json tables;
  for (double x : bc.grid.make(ce.solution())) {
    tables["grid_x"].push_back(x);
    tables["a"].push_back(ce.coef_a(x));
    tables["c"].push_back(ce.coef_c(x));
    tables["u"].push_back(ce.solution()(x));
  }
  for (double x : drift_audit_points(ce.delta())) {
    tables["drift_x"].push_back(x);
    tables["drift_a"].push_back(ce.coef_a(x));
  }
  j["tables"] = tables;

  std::ofstream os(path);
  if (!os) {
    throw std::runtime_error("cannot write artifact '" + path + "'");
  }
  os << j.dump(2) << "\n";
  if (!os.good()) {
    throw std::runtime_error("short write on artifact '" + path + "'");
  }
}

Artifact load_artifact(const std::string& path) {
  std::ifstream is(path);
  if (!is) {
    throw std::runtime_error("cannot open artifact '" + path + "'");
  }
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("artifact '" + path + "' is not valid JSON: " +
                             e.what());
  }

  try {
    if (j.at("format").get<std::string>() != kArtifactFormat) {
      throw std::runtime_error("artifact '" + path +
                               "' has an unrecognized format tag");
    }

    Artifact art;
    const json& cfg = j.at("config");
    art.params.alpha = cfg.at("alpha").get<double>();
    art.params.lambda = cfg.at("lambda").get<double>();
    art.params.Lambda = cfg.at("Lambda").get<double>();
    art.params.dim = cfg.at("dim").get<int>();
    art.params.eps = cfg.at("eps").get<double>();
    art.params.validate();
    art.eta = spec_from_json(cfg.at("eta"));
    art.eta.make();  // validates

    const json& b = j.at("build");
    art.build.safety = b.at("safety").get<double>();
    art.build.dominance = b.at("dominance").get<double>();
    art.build.bound_margin = b.at("bound_margin").get<double>();
    art.build.ramp_margin = b.at("ramp_margin").get<double>();
    art.build.ramp_floor = b.at("ramp_floor").get<double>();
    art.build.gap_margin = b.at("gap_margin").get<double>();
    art.build.max_rounds = b.at("max_rounds").get<int>();
    const json& g = b.at("grid");
    art.build.grid.points_per_side = g.at("points_per_side").get<int>();
    art.build.grid.edge = g.at("edge").get<double>();
    art.build.grid.inner_exclusion = g.at("inner_exclusion").get<double>();
    art.build.grid.kink_offset = g.at("kink_offset").get<double>();
    const json& q = b.at("quad");
    art.build.quad.rel_tol = q.at("rel_tol").get<double>();
    art.build.quad.abs_tol = q.at("abs_tol").get<double>();
    art.build.quad.max_panels = q.at("max_panels").get<int>();
    art.build.quad.singularity_split =
        q.at("singularity_split").get<double>();

    const json& c = j.at("construction");
    art.r = c.at("r").get<double>();
    art.delta = c.at("delta").get<double>();
    art.ramp_K = c.at("ramp_K").get<double>();
    art.ramp_scale = c.at("ramp_scale").get<double>();
    art.bound = c.at("bound").get<double>();
    art.sup_raw = c.at("sup_raw").get<double>();
    art.rounds = c.at("rounds").get<int>();
    art.safety_used = c.at("safety_used").get<double>();

    const json& t = j.at("tables");
    const auto& gx = t.at("grid_x");
    const auto& ga = t.at("a");
    const auto& gc = t.at("c");
    if (gx.size() != ga.size() || gx.size() != gc.size()) {
      throw std::runtime_error("artifact '" + path +
                               "': grid tables disagree in length");
    }
    for (std::size_t i = 0; i < gx.size(); ++i) {
      art.grid.push_back({gx[i].get<double>(), ga[i].get<double>(),
                          gc[i].get<double>()});
    }
    const auto& dx = t.at("drift_x");
    const auto& da = t.at("drift_a");
    if (dx.size() != da.size()) {
      throw std::runtime_error("artifact '" + path +
                               "': drift tables disagree in length");
    }
    for (std::size_t i = 0; i < dx.size(); ++i) {
      art.drift.push_back({dx[i].get<double>(), da[i].get<double>(), 0.0});
    }
    return art;
  } catch (const json::exception& e) {
    throw std::runtime_error("artifact '" + path + "' is incomplete: " +
                             e.what());
  }
}

Counterexample Artifact::reconstruct() const {
  RampChoice ramp;
  ramp.K = ramp_K;
  ramp.C_w = ramp_scale;
  return Counterexample(params, eta.make(), build, r, delta, ramp, bound,
                        safety_used, rounds);
}

}  // namespace nonsym
