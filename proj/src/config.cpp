#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <map>
#include <set>

#include "quditchain/scenario.hpp"

namespace quditchain {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  for (const auto& item : out)
    if (item.empty()) throw ConfigError("empty item in list '" + s + "'");
  return out;
}

double to_double(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  double out = 0.0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || end != v.data() + v.size() || v.empty())
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  return out;
}

std::size_t to_count(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)))
    throw ConfigError(key + ": expected a non-negative integer, got '" + text + "'");
  return static_cast<std::size_t>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

std::vector<double> to_doubles(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(to_double(key, item));
  return out;
}

FieldKind field_kind(const std::string& text) {
  if (text == "zero") return FieldKind::Zero;
  if (text == "constant") return FieldKind::Constant;
  if (text == "consistent") return FieldKind::Consistent;
  if (text == "pulse") return FieldKind::Pulse;
  throw ConfigError("field.type: unknown field type '" + text + "'");
}

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"scenario", {"name", "engine", "engines", "tolerance", "output"}},
      {"chain", {"dim", "sites", "J", "Q", "d"}},
      {"field",
       {"type", "h", "omega0", "omega1", "omega", "k", "opposite", "amplitude"}},
      {"grid", {"t0", "t1", "samples", "substeps", "refine"}},
      {"measures", {"list"}},
      {"sweep", {"J", "Q", "k", "omega1"}},
  };
  return keys;
}

const std::set<std::string> kScenarios{"fig1",        "fig2",  "fig3",  "fig4",
                                       "pulse_block", "sweep", "custom"};

}  // namespace

std::string engine_name(Engine e) {
  switch (e) {
    case Engine::Numeric:
      return "numeric";
    case Engine::Analytic:
      return "analytic";
    case Engine::ClosedForm:
      return "closedform";
    case Engine::Crosscheck:
      return "crosscheck";
  }
  throw InvalidArgument("unknown engine");
}

Engine engine_from_name(const std::string& name) {
  for (Engine e : {Engine::Numeric, Engine::Analytic, Engine::ClosedForm, Engine::Crosscheck})
    if (engine_name(e) == name) return e;
  throw ConfigError("unknown engine '" + name + "'");
}

ScenarioConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }

  for (const auto& [section, body] : tree) {
    auto it = allowed_keys().find(section);
    if (it == allowed_keys().end())
      throw ConfigError(body.empty() ? "key '" + section + "' outside any section"
                                     : "unknown section [" + section + "]");
    for (const auto& [key, value] : body)
      if (!it->second.count(key))
        throw ConfigError("unknown key '" + key + "' in [" + section + "]");
  }

  auto get = [&tree](const std::string& path) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '/')))
      return trim(*v);
    return std::nullopt;
  };

  ScenarioConfig cfg;
  const auto name = get("scenario/name");
  if (!name) throw ConfigError("scenario.name is required");
  if (!kScenarios.count(*name)) throw ConfigError("unknown scenario '" + *name + "'");
  cfg.scenario = *name;

  if (auto v = get("scenario/engine"))
    cfg.engine = engine_from_name(*v);
  else if (cfg.scenario == "pulse_block" || cfg.scenario == "custom" || cfg.scenario == "sweep")
    cfg.engine = Engine::Numeric;
  if (auto v = get("scenario/engines")) {
    for (const auto& item : split_list(*v)) {
      const Engine e = engine_from_name(item);
      if (e == Engine::Crosscheck) throw ConfigError("scenario.engines lists crosscheck");
      cfg.crosscheck_engines.push_back(e);
    }
    if (cfg.engine != Engine::Crosscheck)
      throw ConfigError("scenario.engines only applies with engine = crosscheck");
  }
  if (auto v = get("scenario/tolerance")) {
    cfg.tolerance = to_double("scenario.tolerance", *v);
    if (!(cfg.tolerance > 0)) throw ConfigError("scenario.tolerance must be positive");
  }
  if (auto v = get("scenario/output")) cfg.output = *v;

  if (auto v = get("chain/dim")) cfg.dim = static_cast<int>(to_count("chain.dim", *v));
  if (auto v = get("chain/sites")) cfg.sites = to_count("chain.sites", *v);
  if (auto v = get("chain/J")) cfg.J = to_double("chain.J", *v);
  if (auto v = get("chain/Q")) cfg.Q = to_double("chain.Q", *v);
  if (auto v = get("chain/d")) cfg.aniso_d = to_double("chain.d", *v);
  if (cfg.dim < 2) throw ConfigError("chain.dim must be at least 2");
  if (cfg.sites < 1) throw ConfigError("chain.sites must be at least 1");

  if (auto v = get("field/type")) cfg.field = field_kind(*v);
  if (auto v = get("field/h")) {
    const auto h = to_doubles("field.h", *v);
    if (h.size() != 3) throw ConfigError("field.h needs three components");
    cfg.h = {h[0], h[1], h[2]};
  }
  if (auto v = get("field/omega0")) cfg.omega0 = to_double("field.omega0", *v);
  if (auto v = get("field/omega1")) cfg.omega1 = to_double("field.omega1", *v);
  if (auto v = get("field/omega")) cfg.omega = to_double("field.omega", *v);
  if (auto v = get("field/k")) cfg.k = to_double("field.k", *v);
  if (auto v = get("field/opposite")) cfg.opposite = to_bool("field.opposite", *v);
  if (auto v = get("field/amplitude")) cfg.pulse_amplitude = to_double("field.amplitude", *v);
  if (cfg.k < 0.0 || cfg.k > 1.0) throw ConfigError("field.k must lie in [0, 1]");
  if (cfg.field == FieldKind::Consistent && !get("field/omega")) cfg.omega = cfg.omega0;

  if (auto v = get("grid/t0")) cfg.t0 = to_double("grid.t0", *v);
  if (auto v = get("grid/t1")) cfg.t1 = to_double("grid.t1", *v);
  if (auto v = get("grid/samples")) cfg.samples = to_count("grid.samples", *v);
  if (auto v = get("grid/substeps")) cfg.substeps = to_count("grid.substeps", *v);
  if (auto v = get("grid/refine")) {
    cfg.refine = to_double("grid.refine", *v);
    if (!(cfg.refine > 0)) throw ConfigError("grid.refine must be positive");
  }
  if (!(cfg.t0 < cfg.t1)) throw ConfigError("grid needs t0 < t1");
  if (cfg.samples == 0) throw ConfigError("grid.samples must be positive");

  if (auto v = get("measures/list"))
    for (const auto& item : split_list(*v)) {
      try {
        cfg.measures.push_back(measure_from_name(item));
      } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
      }
    }

  if (auto v = get("sweep/J")) cfg.sweep_J = to_doubles("sweep.J", *v);
  if (auto v = get("sweep/Q")) cfg.sweep_Q = to_doubles("sweep.Q", *v);
  if (auto v = get("sweep/k")) cfg.sweep_k = to_doubles("sweep.k", *v);
  if (auto v = get("sweep/omega1")) cfg.sweep_omega1 = to_doubles("sweep.omega1", *v);

  const bool figure = cfg.scenario.rfind("fig", 0) == 0;
  if (figure && !cfg.measures.empty())
    throw ConfigError(cfg.scenario + " has a fixed curve set; drop [measures]");
  if (cfg.scenario == "custom") {
    for (const char* key : {"chain/dim", "chain/sites", "chain/J", "measures/list"})
      if (!get(key)) throw ConfigError(std::string("custom scenario needs ") + key);
  }
  if (cfg.scenario == "sweep") {
    if (cfg.sweep_J.empty()) throw ConfigError("sweep scenario needs sweep.J");
    if (cfg.sites != 2) throw ConfigError("sweep scenario supports two sites");
  } else if (get("sweep/J") || get("sweep/Q") || get("sweep/k") || get("sweep/omega1")) {
    throw ConfigError("[sweep] only applies to the sweep scenario");
  }
  if (cfg.scenario == "pulse_block") {
    if (cfg.engine != Engine::Numeric)
      throw ConfigError("pulse_block runs on the numeric engine only");
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  return parse_config(in);
}

}  // namespace quditchain
