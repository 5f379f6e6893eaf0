#include "elab/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "elab/errors.hpp"

namespace elab {

namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const std::string& path) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) {
      if (key == a) {
        ok = true;
        break;
      }
    }
    if (!ok) throw ConfigError(path + ": unknown key '" + key + "'");
  }
}

double get_number(const json& j, const char* key, double fallback,
                  const std::string& path) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) {
    throw ConfigError(path + "." + key + ": expected a number");
  }
  return j[key].get<double>();
}

long get_integer(const json& j, const char* key, long fallback,
                 const std::string& path) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) {
    throw ConfigError(path + "." + key + ": expected an integer");
  }
  return j[key].get<long>();
}

Poly4 parse_poly(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path + ": expected a term array");
  std::vector<Poly4::Term> terms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& t = j[i];
    std::string tp = path + "[" + std::to_string(i) + "]";
    require_object(t, tp);
    reject_unknown(t, {"coef", "exp"}, tp);
    if (!t.contains("coef") || !t["coef"].is_number()) {
      throw ConfigError(tp + ": needs numeric 'coef'");
    }
    if (!t.contains("exp") || !t["exp"].is_array() || t["exp"].size() != 4) {
      throw ConfigError(tp + ": needs 'exp' with four entries");
    }
    Poly4::Term term;
    term.coef = t["coef"].get<double>();
    for (int k = 0; k < 4; ++k) {
      if (!t["exp"][k].is_number_integer() || t["exp"][k].get<int>() < 0) {
        throw ConfigError(tp + ".exp: entries must be nonnegative integers");
      }
      term.exp[k] = t["exp"][k].get<int>();
    }
    terms.push_back(term);
  }
  try {
    return Poly4::from_terms(terms);
  } catch (const std::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

VectorField parse_field(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 4) {
    throw ConfigError(path + ": expected four component term arrays");
  }
  VectorField f;
  for (int i = 0; i < 4; ++i) {
    f.comp[i] = parse_poly(j[i], path + "[" + std::to_string(i) + "]");
  }
  return f;
}

FrameStructure parse_frame(const json& j, const std::string& path) {
  require_object(j, path);
  if (!j.contains("type") || !j["type"].is_string()) {
    throw ConfigError(path + ": needs a 'type' string");
  }
  std::string type = j["type"].get<std::string>();
  if (type == "flat") {
    reject_unknown(j, {"type"}, path);
    return FrameStructure::flat();
  }
  if (type == "normal_form") {
    reject_unknown(j, {"type", "phi", "psi1", "psi2"}, path);
    Poly4 phi, psi1, psi2;
    if (j.contains("phi")) phi = parse_poly(j["phi"], path + ".phi");
    if (j.contains("psi1")) psi1 = parse_poly(j["psi1"], path + ".psi1");
    if (j.contains("psi2")) psi2 = parse_poly(j["psi2"], path + ".psi2");
    try {
      return FrameStructure::normal_form(phi, psi1, psi2);
    } catch (const ConstraintViolation& e) {
      throw ConfigError(path + ": " + e.what());
    }
  }
  if (type == "custom") {
    reject_unknown(j, {"type", "x_field", "y_field"}, path);
    if (!j.contains("x_field") || !j.contains("y_field")) {
      throw ConfigError(path + ": custom frame needs x_field and y_field");
    }
    return FrameStructure::custom(parse_field(j["x_field"], path + ".x_field"),
                                  parse_field(j["y_field"], path + ".y_field"));
  }
  throw ConfigError(path + ": unknown frame type '" + type + "'");
}

std::array<double, 2> parse_range(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw ConfigError(path + ": expected [lo, hi]");
  }
  std::array<double, 2> r{j[0].get<double>(), j[1].get<double>()};
  if (!(r[0] < r[1])) throw ConfigError(path + ": lo must be < hi");
  return r;
}

SampleStrategy parse_strategy(const std::string& s, const std::string& path) {
  if (s == "uniform_hyperbolic") return SampleStrategy::UniformHyperbolic;
  if (s == "bang_bang") return SampleStrategy::BangBang;
  if (s == "mixed") return SampleStrategy::Mixed;
  throw ConfigError(path + ": unknown strategy '" + s + "'");
}

const char* strategy_name(SampleStrategy s) {
  switch (s) {
    case SampleStrategy::UniformHyperbolic:
      return "uniform_hyperbolic";
    case SampleStrategy::BangBang:
      return "bang_bang";
    default:
      return "mixed";
  }
}

std::string poly_canonical(const Poly4& p) {
  std::string out;
  char buf[96];
  for (const auto& t : p.terms()) {
    std::snprintf(buf, sizeof(buf), "%d.%d.%d.%d:%.17g;", t.exp[0], t.exp[1],
                  t.exp[2], t.exp[3], t.coef);
    out += buf;
  }
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require_object(j, "config");
  reject_unknown(j,
                 {"seed", "frame", "integrator", "sampler", "regions", "slack",
                  "probe", "verify", "output"},
                 "config");

  RunConfig cfg;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0) {
      throw ConfigError("config.seed: expected a nonnegative integer");
    }
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("frame")) cfg.frame = parse_frame(j["frame"], "config.frame");

  if (j.contains("integrator")) {
    const json& ji = j["integrator"];
    require_object(ji, "config.integrator");
    reject_unknown(ji, {"rel_tol", "abs_tol", "max_step", "event_tol"},
                   "config.integrator");
    cfg.integrator.rel_tol =
        get_number(ji, "rel_tol", cfg.integrator.rel_tol, "config.integrator");
    cfg.integrator.abs_tol =
        get_number(ji, "abs_tol", cfg.integrator.abs_tol, "config.integrator");
    cfg.integrator.max_step =
        get_number(ji, "max_step", cfg.integrator.max_step, "config.integrator");
    cfg.integrator.event_tol = get_number(ji, "event_tol",
                                          cfg.integrator.event_tol,
                                          "config.integrator");
    if (cfg.integrator.rel_tol <= 0 || cfg.integrator.abs_tol <= 0 ||
        cfg.integrator.max_step <= 0 || cfg.integrator.event_tol <= 0) {
      throw ConfigError("config.integrator: tolerances must be positive");
    }
  }

  if (j.contains("sampler")) {
    const json& js = j["sampler"];
    require_object(js, "config.sampler");
    reject_unknown(
        js, {"n_paths", "pieces_per_path", "horizon", "strategy", "chi_max",
             "box"},
        "config.sampler");
    cfg.sampler.n_paths =
        get_integer(js, "n_paths", cfg.sampler.n_paths, "config.sampler");
    cfg.sampler.pieces_per_path =
        static_cast<int>(get_integer(js, "pieces_per_path",
                                     cfg.sampler.pieces_per_path,
                                     "config.sampler"));
    cfg.sampler.horizon =
        get_number(js, "horizon", cfg.sampler.horizon, "config.sampler");
    cfg.sampler.chi_max =
        get_number(js, "chi_max", cfg.sampler.chi_max, "config.sampler");
    if (js.contains("strategy")) {
      if (!js["strategy"].is_string()) {
        throw ConfigError("config.sampler.strategy: expected a string");
      }
      cfg.sampler.strategy = parse_strategy(js["strategy"].get<std::string>(),
                                            "config.sampler.strategy");
    }
    if (js.contains("box")) {
      const json& jb = js["box"];
      require_object(jb, "config.sampler.box");
      reject_unknown(jb, {"x", "y", "z", "w"}, "config.sampler.box");
      if (jb.contains("x")) cfg.sampler.box.x = parse_range(jb["x"], "box.x");
      if (jb.contains("y")) cfg.sampler.box.y = parse_range(jb["y"], "box.y");
      if (jb.contains("z")) cfg.sampler.box.z = parse_range(jb["z"], "box.z");
      if (jb.contains("w")) cfg.sampler.box.w = parse_range(jb["w"], "box.w");
    }
    if (cfg.sampler.n_paths < 0 || cfg.sampler.pieces_per_path <= 0 ||
        cfg.sampler.horizon <= 0 || cfg.sampler.chi_max <= 0) {
      throw ConfigError("config.sampler: counts must be positive");
    }
  }

  if (j.contains("regions")) {
    if (!j["regions"].is_string()) {
      throw ConfigError("config.regions: expected a string");
    }
    std::string r = j["regions"].get<std::string>();
    if (r == "flat") {
      cfg.regions = RegionChoice::Flat;
    } else if (r == "weak_general") {
      cfg.regions = RegionChoice::WeakGeneral;
    } else {
      throw ConfigError("config.regions: unknown region set '" + r + "'");
    }
  }

  cfg.slack = get_number(j, "slack", cfg.slack, "config");
  if (cfg.slack < 0) throw ConfigError("config.slack: must be >= 0");

  if (j.contains("probe")) {
    const json& jp = j["probe"];
    require_object(jp, "config.probe");
    reject_unknown(jp, {"delta", "x_max"}, "config.probe");
    cfg.probe.delta = get_number(jp, "delta", cfg.probe.delta, "config.probe");
    cfg.probe.x_max = get_number(jp, "x_max", cfg.probe.x_max, "config.probe");
    if (cfg.probe.delta <= 0 || cfg.probe.x_max <= 0) {
      throw ConfigError("config.probe: delta and x_max must be positive");
    }
  }

  if (j.contains("verify")) {
    const json& jv = j["verify"];
    require_object(jv, "config.verify");
    reject_unknown(
        jv, {"grid_n", "oracle_points", "mc_paths", "geodesics", "oracle_tol"},
        "config.verify");
    cfg.verify.grid_n = static_cast<int>(
        get_integer(jv, "grid_n", cfg.verify.grid_n, "config.verify"));
    cfg.verify.oracle_points = static_cast<int>(get_integer(
        jv, "oracle_points", cfg.verify.oracle_points, "config.verify"));
    cfg.verify.mc_paths = static_cast<int>(
        get_integer(jv, "mc_paths", cfg.verify.mc_paths, "config.verify"));
    cfg.verify.geodesics = static_cast<int>(
        get_integer(jv, "geodesics", cfg.verify.geodesics, "config.verify"));
    cfg.verify.oracle_tol =
        get_number(jv, "oracle_tol", cfg.verify.oracle_tol, "config.verify");
    if (cfg.verify.grid_n < 2 || cfg.verify.oracle_points < 1 ||
        cfg.verify.mc_paths < 1 || cfg.verify.geodesics < 1 ||
        cfg.verify.oracle_tol <= 0) {
      throw ConfigError("config.verify: sizes too small");
    }
  }

  if (j.contains("output")) {
    const json& jo = j["output"];
    require_object(jo, "config.output");
    reject_unknown(jo, {"cloud", "report"}, "config.output");
    if (jo.contains("cloud")) cfg.out_cloud = jo["cloud"].get<std::string>();
    if (jo.contains("report")) cfg.out_report = jo["report"].get<std::string>();
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  return parse_config(read_file(path));
}

std::string RunConfig::config_hash() const {
  char buf[512];
  std::string canon;
  std::snprintf(buf, sizeof(buf), "seed=%llu;frame=%s;",
                static_cast<unsigned long long>(seed), frame.tag().c_str());
  canon += buf;
  canon += "X=";
  for (int i = 0; i < 4; ++i) canon += poly_canonical(frame.X().comp[i]) + "|";
  canon += "Y=";
  for (int i = 0; i < 4; ++i) canon += poly_canonical(frame.Y().comp[i]) + "|";
  std::snprintf(buf, sizeof(buf),
                "int=%.17g,%.17g,%.17g,%.17g;sam=%ld,%d,%.17g,%s,%.17g,"
                "[%.17g,%.17g][%.17g,%.17g][%.17g,%.17g][%.17g,%.17g];"
                "reg=%d;slack=%.17g;probe=%.17g,%.17g",
                integrator.rel_tol, integrator.abs_tol, integrator.max_step,
                integrator.event_tol, sampler.n_paths, sampler.pieces_per_path,
                sampler.horizon, strategy_name(sampler.strategy),
                sampler.chi_max, sampler.box.x[0], sampler.box.x[1],
                sampler.box.y[0], sampler.box.y[1], sampler.box.z[0],
                sampler.box.z[1], sampler.box.w[0], sampler.box.w[1],
                static_cast<int>(regions), slack, probe.delta, probe.x_max);
  canon += buf;

  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace elab
