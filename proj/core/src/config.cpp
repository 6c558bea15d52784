#include "foamlb/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace foamlb {

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::two_bubble: return "two_bubble";
    case Scenario::foam: return "foam";
    case Scenario::custom: return "custom";
  }
  return "?";
}

std::string to_string(Model m) { return m == Model::modified ? "modified" : "classic"; }

std::string to_string(StopRule s) {
  switch (s) {
    case StopRule::steps: return "steps";
    case StopRule::first_rupture: return "first_rupture";
    case StopRule::quiescent: return "quiescent";
    case StopRule::merge_settled: return "merge_settled";
  }
  return "?";
}

CouplingParams SimulationConfig::coupling() const {
  CouplingParams p;
  p.tau_melt = tau_melt;
  p.tau_gas = tau_gas;
  p.G = G;
  p.G_cross = G_cross;
  p.G_gas = G_gas;
  p.barrier_drag = barrier_drag;
  p.mixing = mixing;
  return p;
}

double SimulationConfig::density_scale() const { return melt_density * 1000.0 / rho_melt; }

double SimulationConfig::pressure_scale() const { return density_scale() * dx * dx / (dt * dt); }

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view key, std::string_view v, int line) {
  double out = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError("line " + std::to_string(line) + ": '" + std::string(key) + "' expects a number, got '" +
                          std::string(v) + "'",
                      line, std::string(key));
  }
  return out;
}

long long parse_int(std::string_view key, std::string_view v, int line) {
  long long out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) {
    throw ConfigError("line " + std::to_string(line) + ": '" + std::string(key) + "' expects an integer, got '" +
                          std::string(v) + "'",
                      line, std::string(key));
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view v, int line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("line " + std::to_string(line) + ": '" + std::string(key) + "' expects true or false", line,
                    std::string(key));
}

template <typename E>
E parse_enum(std::string_view key, std::string_view v, int line,
             std::initializer_list<std::pair<std::string_view, E>> options) {
  std::string names;
  for (const auto& [name, value] : options) {
    if (v == name) return value;
    names += names.empty() ? std::string(name) : "|" + std::string(name);
  }
  throw ConfigError("line " + std::to_string(line) + ": '" + std::string(key) + "' must be one of " + names +
                        ", got '" + std::string(v) + "'",
                    line, std::string(key));
}

struct Field {
  std::string name;
  std::function<void(SimulationConfig&, std::string_view, int)> set;
  std::function<std::string(const SimulationConfig&)> get;
};

#define FOAMLB_DOUBLE(key, member)                                                                               \
  Field {                                                                                                        \
    key, [](SimulationConfig& c, std::string_view v, int l) { c.member = parse_double(key, v, l); },              \
        [](const SimulationConfig& c) { return fmt(c.member); }                                                  \
  }
#define FOAMLB_INT(key, member, type)                                                                            \
  Field {                                                                                                        \
    key, [](SimulationConfig& c, std::string_view v, int l) { c.member = static_cast<type>(parse_int(key, v, l)); }, \
        [](const SimulationConfig& c) { return std::to_string(c.member); }                                      \
  }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"name", [](SimulationConfig& c, std::string_view v, int) { c.name = std::string(v); },
       [](const SimulationConfig& c) { return c.name; }},
      {"scenario",
       [](SimulationConfig& c, std::string_view v, int l) {
         c.scenario = parse_enum<Scenario>(
             "scenario", v, l,
             {{"two_bubble", Scenario::two_bubble}, {"foam", Scenario::foam}, {"custom", Scenario::custom}});
       },
       [](const SimulationConfig& c) { return to_string(c.scenario); }},
      {"model",
       [](SimulationConfig& c, std::string_view v, int l) {
         c.model = parse_enum<Model>("model", v, l, {{"modified", Model::modified}, {"classic", Model::classic}});
       },
       [](const SimulationConfig& c) { return to_string(c.model); }},
      FOAMLB_INT("nx", grid.nx, int),
      FOAMLB_INT("ny", grid.ny, int),
      {"boundary",
       [](SimulationConfig& c, std::string_view v, int l) {
         c.boundary = parse_enum<BoundaryKind>("boundary", v, l,
                                               {{"mirror", BoundaryKind::mirror}, {"periodic", BoundaryKind::periodic}});
       },
       [](const SimulationConfig& c) { return to_string(c.boundary); }},
      FOAMLB_DOUBLE("G", G),
      FOAMLB_DOUBLE("G_cross", G_cross),
      FOAMLB_DOUBLE("G_gas", G_gas),
      FOAMLB_DOUBLE("tau_melt", tau_melt),
      FOAMLB_DOUBLE("tau_gas", tau_gas),
      {"velocity_mixing",
       [](SimulationConfig& c, std::string_view v, int l) {
         c.mixing = parse_enum<VelocityMixing>(
             "velocity_mixing", v, l,
             {{"momentum", VelocityMixing::momentum_weighted}, {"literal", VelocityMixing::literal}});
       },
       [](const SimulationConfig& c) {
         return std::string(c.mixing == VelocityMixing::momentum_weighted ? "momentum" : "literal");
       }},
      FOAMLB_DOUBLE("rho_melt", rho_melt),
      FOAMLB_DOUBLE("rho_gas", rho_gas),
      FOAMLB_DOUBLE("rho_melt_vapor", rho_melt_vapor),
      FOAMLB_DOUBLE("rho_gas_dissolved", rho_gas_dissolved),
      FOAMLB_DOUBLE("noise", noise),
      FOAMLB_DOUBLE("dx", dx),
      FOAMLB_DOUBLE("dt", dt),
      FOAMLB_DOUBLE("melt_density", melt_density),
      FOAMLB_DOUBLE("gas_density", gas_density),
      FOAMLB_DOUBLE("temperature", temperature),
      FOAMLB_DOUBLE("bubble_diameter", bubble_diameter),
      FOAMLB_DOUBLE("bubble_gap", bubble_gap),
      FOAMLB_DOUBLE("bubble_speed", bubble_speed),
      FOAMLB_INT("nuclei", nuclei, int),
      {"seed",
       [](SimulationConfig& c, std::string_view v, int l) {
         std::uint64_t out = 0;
         const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
         if (ec != std::errc{} || p != v.data() + v.size()) {
           throw ConfigError("line " + std::to_string(l) + ": 'seed' expects an unsigned integer", l, "seed");
         }
         c.seed = out;
       },
       [](const SimulationConfig& c) { return std::to_string(c.seed); }},
      FOAMLB_DOUBLE("min_spacing", min_spacing),
      FOAMLB_INT("nucleus_radius", nucleus_radius, int),
      FOAMLB_DOUBLE("dn_dt", dn_dt),
      FOAMLB_DOUBLE("gas_budget", gas_budget),
      FOAMLB_INT("zone_radius", zone_radius, int),
      FOAMLB_DOUBLE("epsilon_p", epsilon_p),
      FOAMLB_DOUBLE("barrier_drag", barrier_drag),
      FOAMLB_DOUBLE("min_film", min_film),
      {"stop",
       [](SimulationConfig& c, std::string_view v, int l) {
         c.stop = parse_enum<StopRule>("stop", v, l,
                                       {{"steps", StopRule::steps},
                                        {"first_rupture", StopRule::first_rupture},
                                        {"quiescent", StopRule::quiescent},
                                        {"merge_settled", StopRule::merge_settled}});
       },
       [](const SimulationConfig& c) { return to_string(c.stop); }},
      FOAMLB_INT("max_steps", max_steps, long),
      FOAMLB_INT("settle_steps", settle_steps, long),
      FOAMLB_DOUBLE("quiescent_speed", quiescent_speed),
      FOAMLB_DOUBLE("instability_fraction", instability_fraction),
      FOAMLB_INT("track_interval", track_interval, int),
      FOAMLB_INT("cadence", cadence, long),
      {"formats",
       [](SimulationConfig& c, std::string_view v, int l) {
         OutputFormats f;
         std::string item;
         std::istringstream in{std::string(v)};
         while (std::getline(in, item, ',')) {
           const std::string t = trim(item);
           if (t == "csv") f.csv = true;
           else if (t == "pgm") f.pgm = true;
           else if (t == "vtk") f.vtk = true;
           else if (t == "none" || t.empty()) continue;
           else throw ConfigError("line " + std::to_string(l) + ": unknown output format '" + t + "'", l, "formats");
         }
         c.formats = f;
       },
       [](const SimulationConfig& c) {
         std::string out;
         auto add = [&](bool on, const char* s) {
           if (on) out += out.empty() ? s : std::string(",") + s;
         };
         add(c.formats.csv, "csv");
         add(c.formats.pgm, "pgm");
         add(c.formats.vtk, "vtk");
         return out.empty() ? std::string("none") : out;
       }},
      FOAMLB_DOUBLE("histogram_bin", histogram_bin),
      {"edge_bubbles_in_diameter",
       [](SimulationConfig& c, std::string_view v, int l) {
         c.edge_bubbles_in_diameter = parse_bool("edge_bubbles_in_diameter", v, l);
       },
       [](const SimulationConfig& c) { return std::string(c.edge_bubbles_in_diameter ? "true" : "false"); }},
  };
  return table;
}

#undef FOAMLB_DOUBLE
#undef FOAMLB_INT

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field + ": " + what, 0, field);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& f : fields()) k.push_back(f.name);
    return k;
  }();
  return keys;
}

void set_config_value(SimulationConfig& cfg, std::string_view key, std::string_view value, int line) {
  for (const auto& f : fields()) {
    if (f.name == key) {
      f.set(cfg, value, line);
      return;
    }
  }
  throw ConfigError("line " + std::to_string(line) + ": unknown key '" + std::string(key) + "'", line,
                    std::string(key));
}

void SimulationConfig::validate() const {
  require(grid.nx >= 3 && grid.ny >= 3, "nx", "grid must be at least 3x3");
  require(tau_melt > 0.5, "tau_melt", "must exceed 0.5");
  require(tau_gas > 0.5, "tau_gas", "must exceed 0.5");
  require(rho_melt > 0.0, "rho_melt", "must be positive");
  require(rho_gas >= 0.0, "rho_gas", "must not be negative");
  require(rho_melt_vapor >= 0.0, "rho_melt_vapor", "must not be negative");
  require(rho_gas_dissolved >= 0.0, "rho_gas_dissolved", "must not be negative");
  require(noise >= 0.0 && noise < rho_melt, "noise", "must lie in [0, rho_melt)");
  if (G <= -4.0) {
    const double ln2 = std::log(2.0);
    require(rho_melt > ln2, "rho_melt", "must exceed ln 2 when G <= -4, got " + fmt(rho_melt));
    require(rho_gas < ln2, "rho_gas", "must stay below ln 2 when G <= -4, got " + fmt(rho_gas));
  }
  require(dx > 0.0, "dx", "must be positive");
  require(dt > 0.0, "dt", "must be positive");
  require(melt_density > 0.0, "melt_density", "must be positive");
  require(gas_density >= 0.0, "gas_density", "must not be negative");
  require(temperature > 0.0, "temperature", "must be positive");
  require(bubble_diameter > 0.0, "bubble_diameter", "must be positive");
  require(bubble_gap >= 0.0, "bubble_gap", "must not be negative");
  require(bubble_speed >= 0.0, "bubble_speed", "must not be negative");
  require(nuclei >= 0, "nuclei", "must not be negative");
  require(scenario != Scenario::foam || nuclei >= 1, "nuclei", "foam scenario needs at least one nucleus");
  require(min_spacing >= 0.0, "min_spacing", "must not be negative");
  require(nucleus_radius >= 0, "nucleus_radius", "must not be negative");
  require(dn_dt >= 0.0, "dn_dt", "must not be negative");
  require(gas_budget >= 0.0, "gas_budget", "must not be negative");
  require(zone_radius >= 0, "zone_radius", "must not be negative");
  require(epsilon_p > 0.0, "epsilon_p", "must be positive");
  require(barrier_drag >= 0.0 && barrier_drag <= 1.0, "barrier_drag", "must lie in [0, 1]");
  require(min_film >= 0.0, "min_film", "must not be negative");
  require(max_steps >= 0, "max_steps", "must not be negative");
  require(settle_steps >= 0, "settle_steps", "must not be negative");
  require(quiescent_speed > 0.0, "quiescent_speed", "must be positive");
  require(instability_fraction > 0.0 && instability_fraction <= 1.0, "instability_fraction", "must lie in (0, 1]");
  require(track_interval >= 1, "track_interval", "must be at least 1");
  require(cadence >= 0, "cadence", "must not be negative");
  require(histogram_bin > 0.0, "histogram_bin", "must be positive");
}

SimulationConfig parse_config(std::string_view text) {
  SimulationConfig cfg;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'", line_no);
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": missing key", line_no);
    if (value.empty()) throw ConfigError("line " + std::to_string(line_no) + ": missing value for '" + key + "'", line_no, key);
    if (!seen.insert(key).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'", line_no, key);
    }
    set_config_value(cfg, key, value, line_no);
    if (end == text.size()) break;
  }
  if (seen.empty()) throw ConfigError("configuration is empty", line_no);
  cfg.validate();
  return cfg;
}

SimulationConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open configuration", path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_text(const SimulationConfig& cfg) {
  std::string out;
  for (const auto& f : fields()) out += f.name + " = " + f.get(cfg) + "\n";
  return out;
}

}  // namespace foamlb
