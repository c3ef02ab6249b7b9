#include "stochdg/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "stochdg/noise.hpp"

namespace stochdg {

const char* to_string(RunMode mode) {
  switch (mode) {
    case RunMode::run: return "run";
    case RunMode::convergence: return "convergence";
    case RunMode::table: return "table";
  }
  return "?";
}

namespace {

RunMode mode_from_string(const std::string& s) {
  if (s == "run") return RunMode::run;
  if (s == "convergence") return RunMode::convergence;
  if (s == "table") return RunMode::table;
  throw ConfigError("unknown mode '" + s + "' (expected run, convergence or table)");
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = first + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last)
    throw ConfigError("value for '" + key + "' is not a number: '" + value + "'");
  return out;
}

long long parse_int(const std::string& key, const std::string& value) {
  long long out = 0;
  const char* first = value.data();
  const char* last = first + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last)
    throw ConfigError("value for '" + key + "' is not an integer: '" + value + "'");
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const char* first = value.data();
  const char* last = first + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last)
    throw ConfigError("value for '" + key + "' is not a non-negative integer: '" + value + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("value for '" + key + "' is not a boolean: '" + value + "'");
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("empty entry in list for '" + key + "'");
    out.push_back(static_cast<int>(parse_int(key, item)));
  }
  if (out.empty()) throw ConfigError("empty list for '" + key + "'");
  return out;
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "mode",          "problem",        "elements",       "resolutions",
      "reference",     "degree",         "gamma",          "mu",
      "t-final",       "dt",             "samples",        "seed",
      "sample",        "volume-flux",    "surface-flux",   "llf-dissipation",
      "ec-energy-form", "bc",            "output-dir",     "snapshot-stride",
      "rho-min",       "energy-max",     "threads",        "perturbation-seed",
      "kh-eps",        "ledger",         "input",
  };
  return keys;
}

void require_known(const std::string& key, const std::string& where) {
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end())
    throw ConfigError("unknown key '" + key + "' in " + where);
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    require_known(key, path);
    if (out.count(key))
      throw ConfigError("duplicate key '" + key + "' in " + path);
    out[key] = value;
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args, const char* env_output_dir) {
  std::map<std::string, std::string> flags;
  std::string config_path;
  bool mode_positional = false;
  std::string mode_string;

  std::size_t i = 0;
  if (i < args.size() && !args[i].starts_with("--")) {
    mode_string = args[i++];
    mode_positional = true;
  }
  for (; i < args.size(); ++i) {
    const std::string& arg = args[i];
    if (!arg.starts_with("--"))
      throw ConfigError("expected --key, got '" + arg + "'");
    std::string key = arg.substr(2);
    if (i + 1 >= args.size()) throw ConfigError("missing value for '--" + key + "'");
    std::string value = args[++i];
    if (key == "config") {
      if (!config_path.empty()) throw ConfigError("duplicate flag --config");
      config_path = value;
      continue;
    }
    require_known(key, "command line");
    if (flags.count(key)) throw ConfigError("duplicate flag --" + key);
    flags[key] = value;
  }

  // effective values: defaults < config file < flags (output-dir also < env)
  std::map<std::string, std::string> kv;
  if (!config_path.empty()) kv = read_config_file(config_path);
  for (const auto& [k, v] : flags) kv[k] = v;
  if (!kv.count("output-dir") && env_output_dir && *env_output_dir)
    kv["output-dir"] = env_output_dir;

  if (mode_positional) kv["mode"] = mode_string;
  if (!kv.count("mode"))
    throw ConfigError("missing mode (run, convergence or table)");

  RunConfig cfg;
  cfg.mode = mode_from_string(kv["mode"]);
  if (kv.count("problem"))
    cfg.setup = default_setup(problem_from_string(kv["problem"]));
  else if (cfg.mode != RunMode::table)
    throw ConfigError("missing required key 'problem'");

  auto take = [&](const char* key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };

  if (auto* v = take("gamma")) cfg.setup.gamma = parse_double("gamma", *v);
  if (auto* v = take("mu")) cfg.setup.mu = parse_double("mu", *v);
  if (auto* v = take("t-final")) cfg.setup.t_final = parse_double("t-final", *v);
  if (auto* v = take("dt")) cfg.setup.dt = parse_double("dt", *v);
  if (auto* v = take("bc")) {
    if (*v == "periodic")
      cfg.setup.bc = BoundaryKind::periodic;
    else if (*v == "outflow")
      cfg.setup.bc = BoundaryKind::outflow;
    else
      throw ConfigError("value for 'bc' must be periodic or outflow, got '" + *v + "'");
  }
  if (auto* v = take("elements")) cfg.elements = static_cast<int>(parse_int("elements", *v));
  if (auto* v = take("resolutions")) cfg.resolutions = parse_int_list("resolutions", *v);
  if (auto* v = take("reference"))
    cfg.reference_elements = static_cast<int>(parse_int("reference", *v));
  if (auto* v = take("degree")) cfg.degree = static_cast<int>(parse_int("degree", *v));
  if (auto* v = take("samples")) cfg.samples = static_cast<int>(parse_int("samples", *v));
  if (auto* v = take("seed")) cfg.base_seed = parse_u64("seed", *v);
  if (auto* v = take("sample")) cfg.sample_index = parse_u64("sample", *v);
  if (auto* v = take("perturbation-seed"))
    cfg.perturbation_seed = parse_u64("perturbation-seed", *v);
  if (auto* v = take("kh-eps")) cfg.kh_eps = parse_double("kh-eps", *v);
  if (auto* v = take("snapshot-stride"))
    cfg.snapshot_stride = static_cast<int>(parse_int("snapshot-stride", *v));
  if (auto* v = take("ledger")) cfg.write_ledger = parse_bool("ledger", *v);
  if (auto* v = take("threads")) cfg.threads = static_cast<int>(parse_int("threads", *v));
  if (auto* v = take("output-dir")) cfg.output_dir = *v;
  if (auto* v = take("input")) cfg.table_input = *v;
  if (auto* v = take("rho-min")) cfg.monitors.rho_min = parse_double("rho-min", *v);
  if (auto* v = take("energy-max")) cfg.monitors.energy_max = parse_double("energy-max", *v);

  if (auto* v = take("volume-flux")) {
    if (*v == "ec")
      cfg.fluxes.volume = VolumeFluxKind::entropy_conservative;
    else if (*v == "central")
      cfg.fluxes.volume = VolumeFluxKind::central;
    else
      throw ConfigError("value for 'volume-flux' must be ec or central, got '" + *v + "'");
  }
  if (auto* v = take("surface-flux")) {
    if (*v == "llf")
      cfg.fluxes.surface = SurfaceFluxKind::llf;
    else if (*v == "ec")
      cfg.fluxes.surface = SurfaceFluxKind::entropy_conservative;
    else
      throw ConfigError("value for 'surface-flux' must be llf or ec, got '" + *v + "'");
  }
  if (auto* v = take("llf-dissipation")) {
    if (*v == "state")
      cfg.fluxes.llf_dissipation = LlfDissipation::state;
    else if (*v == "flux")
      cfg.fluxes.llf_dissipation = LlfDissipation::flux;
    else
      throw ConfigError("value for 'llf-dissipation' must be state or flux, got '" + *v + "'");
  }
  if (auto* v = take("ec-energy-form")) {
    if (*v == "standard")
      cfg.fluxes.ec_energy_form = EcEnergyForm::standard;
    else if (*v == "printed")
      cfg.fluxes.ec_energy_form = EcEnergyForm::printed;
    else
      throw ConfigError("value for 'ec-energy-form' must be standard or printed, got '" + *v +
                        "'");
  }

  // resolve remaining problem-dependent pieces
  if (cfg.reference_elements == 0) cfg.reference_elements = cfg.setup.dim == 1 ? 4096 : 256;
  cfg.setup.perturbation = cfg.setup.problem == Problem::kelvin_helmholtz
                               ? ShearPerturbation::draw(cfg.perturbation_seed, cfg.kh_eps)
                               : ShearPerturbation::none();

  if (cfg.elements < 1) throw ConfigError("'elements' must be at least 1");
  if (cfg.degree < 0 || cfg.degree > max_operator_degree)
    throw ConfigError("'degree' must be between 0 and " + std::to_string(max_operator_degree));
  if (cfg.samples < 1) throw ConfigError("'samples' must be at least 1");
  if (cfg.threads < 1) throw ConfigError("'threads' must be at least 1");
  if (cfg.snapshot_stride < 0) throw ConfigError("'snapshot-stride' must be non-negative");
  if (!(cfg.setup.gamma > 1.0)) throw ConfigError("'gamma' must exceed 1");
  if (cfg.setup.mu < 0.0) throw ConfigError("'mu' must be non-negative");
  if (cfg.kh_eps < 0.0) throw ConfigError("'kh-eps' must be non-negative");
  step_count(cfg.setup.t_final, cfg.setup.dt);  // throws unless t-final/dt is integral
  if (cfg.mode == RunMode::convergence) {
    int prev = 0;
    for (int r : cfg.resolutions) {
      if (r <= prev) throw ConfigError("'resolutions' must be ascending");
      prev = r;
    }
    for (int r : cfg.resolutions)
      if (cfg.reference_elements % r != 0)
        throw ConfigError("'reference' must be a multiple of every entry in 'resolutions'");
  }
  if (cfg.mode == RunMode::table && cfg.table_input.empty())
    throw ConfigError("table mode requires '--input' (per-sample CSV)");
  return cfg;
}

std::string effective_config(const RunConfig& cfg) {
  std::map<std::string, std::string> kv;
  kv["mode"] = to_string(cfg.mode);
  kv["problem"] = to_string(cfg.setup.problem);
  kv["bc"] = to_string(cfg.setup.bc);
  kv["gamma"] = format_double(cfg.setup.gamma);
  kv["mu"] = format_double(cfg.setup.mu);
  kv["t-final"] = format_double(cfg.setup.t_final);
  kv["dt"] = format_double(cfg.setup.dt);
  kv["elements"] = std::to_string(cfg.elements);
  {
    std::string list;
    for (std::size_t i = 0; i < cfg.resolutions.size(); ++i) {
      if (i) list += ',';
      list += std::to_string(cfg.resolutions[i]);
    }
    kv["resolutions"] = list;
  }
  kv["reference"] = std::to_string(cfg.reference_elements);
  kv["degree"] = std::to_string(cfg.degree);
  kv["samples"] = std::to_string(cfg.samples);
  kv["seed"] = std::to_string(cfg.base_seed);
  kv["sample"] = std::to_string(cfg.sample_index);
  kv["perturbation-seed"] = std::to_string(cfg.perturbation_seed);
  kv["kh-eps"] = format_double(cfg.kh_eps);
  kv["snapshot-stride"] = std::to_string(cfg.snapshot_stride);
  kv["ledger"] = cfg.write_ledger ? "true" : "false";
  kv["rho-min"] = format_double(cfg.monitors.rho_min);
  kv["energy-max"] = format_double(cfg.monitors.energy_max);
  kv["volume-flux"] =
      cfg.fluxes.volume == VolumeFluxKind::entropy_conservative ? "ec" : "central";
  kv["surface-flux"] = cfg.fluxes.surface == SurfaceFluxKind::llf ? "llf" : "ec";
  kv["llf-dissipation"] = cfg.fluxes.llf_dissipation == LlfDissipation::state ? "state" : "flux";
  kv["ec-energy-form"] = cfg.fluxes.ec_energy_form == EcEnergyForm::standard ? "standard" : "printed";
  if (!cfg.table_input.empty()) kv["input"] = cfg.table_input;

  std::string out;
  for (const auto& [k, v] : kv) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  return out;
}

std::uint64_t config_hash(const RunConfig& cfg) {
  std::string text = effective_config(cfg);
  return fnv1a64(text.data(), text.size());
}

}  // namespace stochdg
