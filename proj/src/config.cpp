#include "nhprobe/config.hpp"
#include "nhprobe/error.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace nhprobe {
namespace {

using nlohmann::json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
  throw ConfigError("config " + where + ": " + msg);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number, got " + std::string(j.type_name()));
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(where, "value is not finite");
  return v;
}

int integer(const json& j, const std::string& where) {
  const double v = number(j, where);
  if (v != std::floor(v) || std::abs(v) > 1e6) fail(where, "expected an integer");
  return static_cast<int>(v);
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) fail(where + "/" + key, "unknown field");
  }
}

const std::set<std::string> kModelFields = {"sites", "t", "mu", "delta", "w", "alpha", "V", "h", "g", "d"};

std::set<std::string> fields_of(const ModelSpec& m) {
  return std::visit(overloaded{
                        [](const KitaevSpec&) { return std::set<std::string>{"sites", "t", "mu", "delta"}; },
                        [](const DoubleKitaevSpec&) {
                          return std::set<std::string>{"sites", "t", "mu", "delta", "w"};
                        },
                        [](const NanowireSpec&) {
                          return std::set<std::string>{"sites", "t", "mu", "alpha", "V", "delta"};
                        },
                        [](const ParafermionSpec&) { return std::set<std::string>{"sites", "h", "g", "d"}; },
                    },
                    m);
}

std::set<std::string> fields_of(const ProbeSpec& p) {
  return std::visit(overloaded{
                        [](const KitaevEdgeProbe&) { return std::set<std::string>{"lambda", "branch"}; },
                        [](const KitaevRandomizedProbe&) {
                          return std::set<std::string>{"lambda", "lambda_prime"};
                        },
                        [](const DoubleKitaevEdgeProbe&) { return std::set<std::string>{"kappa1", "kappa2"}; },
                        [](const NanowireMzmProbe&) { return std::set<std::string>{"lambda"}; },
                        [](const NanowireAuxProbe&) {
                          return std::set<std::string>{"lambda", "variant", "phi"};
                        },
                        [](const ParafermionApproxProbe&) { return std::set<std::string>{"lambda"}; },
                        [](const ParafermionExactProbe&) { return std::set<std::string>{"lambda"}; },
                    },
                    p);
}

bool set_model_field(ModelSpec& m, const std::string& f, double v) {
  if (!fields_of(m).count(f)) return false;
  auto as_int = [&](double x) {
    if (x != std::floor(x)) throw ConfigError("config field '" + f + "' must be an integer");
    return static_cast<int>(x);
  };
  std::visit(overloaded{
                 [&](KitaevSpec& s) {
                   if (f == "sites") s.sites = as_int(v);
                   else if (f == "t") s.t = v;
                   else if (f == "mu") s.mu = v;
                   else s.delta = v;
                 },
                 [&](DoubleKitaevSpec& s) {
                   if (f == "sites") s.chain.sites = as_int(v);
                   else if (f == "t") s.chain.t = v;
                   else if (f == "mu") s.chain.mu = v;
                   else if (f == "delta") s.chain.delta = v;
                   else s.w = v;
                 },
                 [&](NanowireSpec& s) {
                   if (f == "sites") s.sites = as_int(v);
                   else if (f == "t") s.t = v;
                   else if (f == "mu") s.mu = v;
                   else if (f == "alpha") s.alpha = v;
                   else if (f == "V") s.V = v;
                   else s.delta = v;
                 },
                 [&](ParafermionSpec& s) {
                   if (f == "sites") s.sites = as_int(v);
                   else if (f == "h") s.h = v;
                   else if (f == "g") s.g = v;
                   else s.d = as_int(v);
                 },
             },
             m);
  return true;
}

bool set_probe_field(ProbeSpec& p, const std::string& f, double v) {
  if (!fields_of(p).count(f) || f == "branch") return false;
  std::visit(overloaded{
                 [&](KitaevEdgeProbe& s) { s.lambda = v; },
                 [&](KitaevRandomizedProbe& s) { (f == "lambda" ? s.lambda : s.lambda_prime) = v; },
                 [&](DoubleKitaevEdgeProbe& s) { (f == "kappa1" ? s.kappa1 : s.kappa2) = v; },
                 [&](NanowireMzmProbe& s) { s.lambda = v; },
                 [&](NanowireAuxProbe& s) {
                   if (f == "lambda") s.lambda = v;
                   else if (f == "phi") s.phi = v;
                   else {
                     if (v != std::floor(v)) throw ConfigError("config field 'variant' must be an integer");
                     s.variant = static_cast<int>(v);
                   }
                 },
                 [&](ParafermionApproxProbe& s) { s.lambda = v; },
                 [&](ParafermionExactProbe& s) { s.lambda = v; },
             },
             p);
  return true;
}

ModelSpec default_model(const std::string& name, const std::string& where) {
  if (name == "kitaev") return KitaevSpec{};
  if (name == "double_kitaev") return DoubleKitaevSpec{};
  if (name == "nanowire") return NanowireSpec{};
  if (name == "parafermion") return ParafermionSpec{};
  fail(where, "unknown model '" + name + "' (kitaev, double_kitaev, nanowire, parafermion)");
}

ProbeSpec default_probe(const std::string& type, const std::string& where) {
  if (type == "kitaev_edge") return KitaevEdgeProbe{};
  if (type == "kitaev_randomized") return KitaevRandomizedProbe{};
  if (type == "double_kitaev_edge") return DoubleKitaevEdgeProbe{};
  if (type == "nanowire_mzm") return NanowireMzmProbe{};
  if (type == "nanowire_aux") return NanowireAuxProbe{};
  if (type == "parafermion_approx") return ParafermionApproxProbe{};
  if (type == "parafermion_exact") return ParafermionExactProbe{};
  fail(where, "unknown probe type '" + type + "'");
}

std::string default_probe_for(const ModelSpec& m) {
  return std::visit(overloaded{
                        [](const KitaevSpec&) { return std::string("kitaev_edge"); },
                        [](const DoubleKitaevSpec&) { return std::string("double_kitaev_edge"); },
                        [](const NanowireSpec&) { return std::string("nanowire_mzm"); },
                        [](const ParafermionSpec&) { return std::string("parafermion_exact"); },
                    },
                    m);
}

SweepAxis parse_axis(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  check_keys(j, {"field", "values", "from", "to", "count"}, where);
  SweepAxis axis;
  if (!j.contains("field") || !j["field"].is_string()) fail(where + "/field", "missing axis field name");
  axis.field = j["field"].get<std::string>();
  if (j.contains("values")) {
    if (!j["values"].is_array() || j["values"].empty()) fail(where + "/values", "expected a non-empty array");
    for (std::size_t i = 0; i < j["values"].size(); ++i) {
      axis.values.push_back(number(j["values"][i], where + "/values/" + std::to_string(i)));
    }
  } else {
    for (const char* k : {"from", "to", "count"}) {
      if (!j.contains(k)) fail(where, std::string("needs either 'values' or 'from'/'to'/'count' (missing '") + k + "')");
    }
    const double a = number(j["from"], where + "/from");
    const double b = number(j["to"], where + "/to");
    const int n = integer(j["count"], where + "/count");
    if (n < 1) fail(where + "/count", "must be >= 1");
    for (int i = 0; i < n; ++i) axis.values.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  }
  return axis;
}

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

QuenchOptions RunConfig::quench_options() const {
  QuenchOptions o;
  o.beta = beta;
  o.grid = grid;
  o.t0 = t0;
  o.t1 = t1;
  o.dropped_mass = dropped_mass;
  return o;
}

void set_field(RunConfig& config, const std::string& field, double value) {
  if (set_model_field(config.model, field, value)) return;
  if (set_probe_field(config.probe, field, value)) return;
  if (field == "beta") {
    config.beta = value;
    return;
  }
  throw ConfigError("config: field '" + field + "' does not apply to model '" + model_name(config.model) +
                    "' or probe '" + probe_name(config.probe) + "'");
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: JSON syntax error at " + line_col(text, e.byte) + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");

  std::set<std::string> allowed = kModelFields;
  allowed.insert({"model", "name", "probe", "beta", "step", "sample", "horizon", "window", "axis1", "axis2",
                  "zero_modes", "degeneracy_tol", "dropped_mass", "threshold"});
  check_keys(j, allowed, "");

  RunConfig c;
  if (!j.contains("model") || !j["model"].is_string()) fail("/model", "missing model name");
  c.model = default_model(j["model"].get<std::string>(), "/model");
  const auto model_fields = fields_of(c.model);
  for (const auto& key : kModelFields) {
    if (!j.contains(key)) continue;
    if (!model_fields.count(key)) fail("/" + key, "field does not apply to model '" + model_name(c.model) + "'");
    set_model_field(c.model, key, number(j[key], "/" + key));
  }

  if (j.contains("name")) {
    if (!j["name"].is_string() || j["name"].get<std::string>().empty()) fail("/name", "expected a non-empty string");
    c.name = j["name"].get<std::string>();
    if (c.name.find('/') != std::string::npos) fail("/name", "must not contain '/'");
  }

  std::string probe_type = default_probe_for(c.model);
  json probe = json::object();
  if (j.contains("probe")) {
    probe = j["probe"];
    if (!probe.is_object()) fail("/probe", "expected an object");
    if (probe.contains("type")) {
      if (!probe["type"].is_string()) fail("/probe/type", "expected a string");
      probe_type = probe["type"].get<std::string>();
    }
  }
  c.probe = default_probe(probe_type, "/probe/type");
  auto probe_fields = fields_of(c.probe);
  probe_fields.insert("type");
  check_keys(probe, probe_fields, "/probe");
  for (const auto& [key, value] : probe.items()) {
    if (key == "type") continue;
    if (key == "branch") {
      if (!value.is_string() || (value != "+" && value != "-")) fail("/probe/branch", "expected \"+\" or \"-\"");
      std::get<KitaevEdgeProbe>(c.probe).minus_branch = value == "-";
      continue;
    }
    set_probe_field(c.probe, key, number(value, "/probe/" + key));
  }

  if (j.contains("beta")) c.beta = number(j["beta"], "/beta");
  if (j.contains("step")) c.grid.step = number(j["step"], "/step");
  if (j.contains("sample")) c.grid.sample = number(j["sample"], "/sample");
  if (j.contains("horizon")) c.grid.horizon = number(j["horizon"], "/horizon");
  if (j.contains("window")) {
    const json& w = j["window"];
    if (!w.is_array() || w.size() != 2) fail("/window", "expected [t0, t1]");
    c.t0 = number(w[0], "/window/0");
    c.t1 = number(w[1], "/window/1");
  }
  if (j.contains("dropped_mass")) c.dropped_mass = number(j["dropped_mass"], "/dropped_mass");
  if (j.contains("degeneracy_tol")) c.degeneracy_tol = number(j["degeneracy_tol"], "/degeneracy_tol");
  if (std::holds_alternative<ParafermionSpec>(c.model)) c.threshold = (1.0 / 3.0 + 1.0) / 2.0;
  if (j.contains("threshold")) c.threshold = number(j["threshold"], "/threshold");

  if (const auto* nw = std::get_if<NanowireSpec>(&c.model)) {
    c.zero_mode_model = *nw;
    c.zero_mode_model.sites = 50;
  }
  if (j.contains("zero_modes")) {
    const json& z = j["zero_modes"];
    if (!z.is_object()) fail("/zero_modes", "expected an object");
    if (!std::holds_alternative<NanowireSpec>(c.model)) fail("/zero_modes", "only used with the nanowire model");
    check_keys(z, {"sites", "edge_fraction", "t", "mu", "alpha", "V", "delta"}, "/zero_modes");
    ModelSpec zm = c.zero_mode_model;
    for (const auto& [key, value] : z.items()) {
      if (key == "edge_fraction") {
        c.edge_fraction = number(value, "/zero_modes/edge_fraction");
      } else {
        set_model_field(zm, key, number(value, "/zero_modes/" + key));
      }
    }
    c.zero_mode_model = std::get<NanowireSpec>(zm);
  }

  if (j.contains("axis1")) c.axis1 = parse_axis(j["axis1"], "/axis1");
  if (j.contains("axis2")) {
    if (!c.axis1) fail("/axis2", "axis2 given without axis1");
    c.axis2 = parse_axis(j["axis2"], "/axis2");
  }
  for (const auto* axis : {&c.axis1, &c.axis2}) {
    if (!*axis) continue;
    RunConfig probe_copy = c;
    try {
      set_field(probe_copy, (*axis)->field, (*axis)->values.front());
    } catch (const ConfigError&) {
      fail(axis == &c.axis1 ? "/axis1/field" : "/axis2/field",
           "'" + (*axis)->field + "' is not a field of this model or probe");
    }
  }

  try {
    validate(c.model);
    validate(c.probe);
    c.grid.validate();
  } catch (const nhprobe::Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!(c.beta >= 0.0)) fail("/beta", "must be >= 0");
  if (!(c.t0 < c.t1) || c.t0 < 0.0 || c.t1 > c.grid.horizon) fail("/window", "need 0 <= t0 < t1 <= horizon");
  if (!(c.dropped_mass >= 0.0 && c.dropped_mass < 1.0)) fail("/dropped_mass", "must lie in [0, 1)");
  if (c.degeneracy_tol && !(*c.degeneracy_tol > 0.0)) fail("/degeneracy_tol", "must be > 0");
  if (!(c.edge_fraction > 0.0 && c.edge_fraction <= 0.5)) fail("/zero_modes/edge_fraction", "must lie in (0, 0.5]");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

json to_json(const ModelSpec& spec) {
  return std::visit(overloaded{
                        [](const KitaevSpec& s) {
                          return json{{"model", "kitaev"}, {"sites", s.sites}, {"t", s.t}, {"mu", s.mu},
                                      {"delta", s.delta}};
                        },
                        [](const DoubleKitaevSpec& s) {
                          return json{{"model", "double_kitaev"}, {"sites", s.chain.sites}, {"t", s.chain.t},
                                      {"mu", s.chain.mu}, {"delta", s.chain.delta}, {"w", s.w}};
                        },
                        [](const NanowireSpec& s) {
                          return json{{"model", "nanowire"}, {"sites", s.sites}, {"t", s.t}, {"mu", s.mu},
                                      {"alpha", s.alpha}, {"V", s.V}, {"delta", s.delta}};
                        },
                        [](const ParafermionSpec& s) {
                          return json{{"model", "parafermion"}, {"sites", s.sites}, {"h", s.h}, {"g", s.g},
                                      {"d", s.d}};
                        },
                    },
                    spec);
}

json to_json(const ProbeSpec& spec) {
  json j = std::visit(overloaded{
                          [](const KitaevEdgeProbe& p) {
                            return json{{"lambda", p.lambda}, {"branch", p.minus_branch ? "-" : "+"}};
                          },
                          [](const KitaevRandomizedProbe& p) {
                            return json{{"lambda", p.lambda}, {"lambda_prime", p.lambda_prime}};
                          },
                          [](const DoubleKitaevEdgeProbe& p) {
                            return json{{"kappa1", p.kappa1}, {"kappa2", p.kappa2}};
                          },
                          [](const NanowireMzmProbe& p) { return json{{"lambda", p.lambda}}; },
                          [](const NanowireAuxProbe& p) {
                            return json{{"lambda", p.lambda}, {"variant", p.variant}, {"phi", p.phi}};
                          },
                          [](const ParafermionApproxProbe& p) { return json{{"lambda", p.lambda}}; },
                          [](const ParafermionExactProbe& p) { return json{{"lambda", p.lambda}}; },
                      },
                      spec);
  j["type"] = probe_name(spec);
  return j;
}

}  // namespace nhprobe
