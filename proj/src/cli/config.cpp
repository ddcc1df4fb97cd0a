#include "uwqkd/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "uwqkd/errors.hpp"

namespace uwqkd::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Splits "<number><spaces?><unit>" at the end of the numeric prefix.
std::pair<double, std::string> split_number(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr == text.data()) {
    throw ConfigError("expected a number in '" + std::string(text) + "'");
  }
  if (!std::isfinite(value)) throw ConfigError("non-finite number in '" + std::string(text) + "'");
  return {value, std::string(trim(std::string_view(ptr, text.data() + text.size() - ptr)))};
}

double unit_scale(const std::string& unit, Dimension dim) {
  static const std::map<Dimension, std::map<std::string, double>> kUnits = {
      {Dimension::Length, {{"", 1.0}, {"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}}},
      {Dimension::Time, {{"", 1.0}, {"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}, {"ps", 1e-12}}},
      {Dimension::Frequency, {{"", 1.0}, {"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}}},
      {Dimension::Angle, {{"", 1.0}, {"rad", 1.0}, {"deg", std::numbers::pi / 180.0}}},
      {Dimension::InverseLength, {{"", 1.0}, {"1/m", 1.0}, {"/m", 1.0}, {"m^-1", 1.0}}},
      {Dimension::Irradiance, {{"", 1.0}, {"W/m2", 1.0}, {"W/m^2", 1.0}}},
      {Dimension::Dimensionless, {{"", 1.0}}},
  };
  const auto& table = kUnits.at(dim);
  const auto it = table.find(unit);
  if (it == table.end()) throw ConfigError("unit '" + unit + "' does not match the expected dimension");
  return it->second;
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> out;
  while (true) {
    const std::size_t comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    if (item.empty()) throw ConfigError("empty item in list");
    out.push_back(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

bool parse_bool(std::string_view text) {
  const std::string v = lower(trim(text));
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ConfigError("expected a boolean, got '" + std::string(text) + "'");
}

std::uint64_t parse_count(std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return v;
}

double probability(std::string_view text) {
  const double v = parse_quantity(text, Dimension::Dimensionless);
  if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("expected a value in [0, 1], got '" + std::string(text) + "'");
  return v;
}

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

}  // namespace

double parse_quantity(std::string_view text, Dimension dim) {
  const auto [value, unit] = split_number(text);
  return value * unit_scale(unit, dim);
}

double parse_angle(std::string_view text) {
  std::string t = lower(trim(text));
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
  const std::size_t pi = t.find("pi");
  if (pi == std::string::npos) return parse_quantity(text, Dimension::Angle);

  double factor = 1.0;
  if (pi > 0) {
    if (t[pi - 1] != '*') throw ConfigError("malformed angle '" + std::string(text) + "'");
    factor = split_number(std::string_view(t).substr(0, pi - 1)).first;
  }
  double divisor = 1.0;
  const std::string rest = t.substr(pi + 2);
  if (!rest.empty()) {
    if (rest.front() != '/') throw ConfigError("malformed angle '" + std::string(text) + "'");
    const auto [d, unit] = split_number(std::string_view(rest).substr(1));
    if (!unit.empty() || d == 0.0) throw ConfigError("malformed angle '" + std::string(text) + "'");
    divisor = d;
  }
  return factor * std::numbers::pi / divisor;
}

EventModel parse_event_model(std::string_view text) {
  const std::string v = lower(trim(text));
  if (v == "mechanisms") return EventModel::ErrorMechanisms;
  if (v == "born") return EventModel::BornSharedBasis;
  throw ConfigError("unknown Monte Carlo model '" + std::string(text) + "' (expected mechanisms or born)");
}

std::string_view to_string(EventModel model) {
  return model == EventModel::ErrorMechanisms ? "mechanisms" : "born";
}

void SweepSpec::validate() const {
  if (!(l_min >= 0.0)) throw DomainError("sweep l_min must be non-negative");
  if (!(step > 0.0)) throw DomainError("sweep step must be positive");
  if (!(l_max > l_min)) throw DomainError("sweep l_max must exceed l_min");
  if (betas.empty() || waters.empty() || scenarios.empty()) throw DomainError("sweep selection is empty");
}

std::vector<double> SweepSpec::lengths() const {
  validate();
  const auto n = static_cast<std::size_t>(std::floor((l_max - l_min) / step + 1e-9));
  std::vector<double> out;
  out.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out.push_back(l_min + static_cast<double>(i) * step);
  return out;
}

RunConfig default_config() {
  RunConfig cfg;
  cfg.link.water = WaterType::preset(WaterKind::Clear);
  cfg.link.scenario = AtmosphericScenario::preset(1);
  cfg.sweep.betas = {std::numbers::pi / 5.0, std::numbers::pi / 4.0};
  cfg.sweep.waters.assign(kAllWaters.begin(), kAllWaters.end());
  cfg.sweep.scenarios.assign(kAllScenarios.begin(), kAllScenarios.end());
  return cfg;
}

RunConfig parse_config(std::string_view text) {
  static const std::map<std::string, std::set<std::string>> kSchema = {
      {"link", {"length", "source_fraction", "depth", "wavelength", "k_inf", "code_rate"}},
      {"detector",
       {"eta_alice", "eta_bob", "dark_current", "pulse_duration", "gate_time", "lens_diameter",
        "filter_bandwidth", "fov", "e_det", "t_corr", "apply_t_corr"}},
      {"water", {"type", "alpha", "gamma_dep"}},
      {"scenario", {"id", "r0"}},
      {"sweep", {"l_min", "l_max", "step", "betas", "waters", "scenarios"}},
      {"montecarlo", {"enabled", "packets", "photons", "seed", "model"}},
  };

  std::map<std::string, Section> sections;
  std::string current;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const std::size_t hash = line.find_first_of("#;"); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "malformed section header");
      current = lower(trim(line.substr(1, line.size() - 2)));
      if (!kSchema.contains(current)) throw ConfigError(where + "unknown section '" + current + "'");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    if (current.empty()) throw ConfigError(where + "key outside of a section");
    const std::string key = lower(trim(line.substr(0, eq)));
    if (!kSchema.at(current).contains(key)) {
      throw ConfigError(where + "unknown key '" + key + "' in section [" + current + "]");
    }
    auto [it, inserted] = sections[current].emplace(key, Entry{std::string(trim(line.substr(eq + 1))), line_no});
    if (!inserted) throw ConfigError(where + "duplicate key '" + key + "'");
  }

  RunConfig cfg = default_config();
  auto apply = [&](const std::string& section, const std::string& key, auto&& fn) {
    const auto sec = sections.find(section);
    if (sec == sections.end()) return;
    const auto entry = sec->second.find(key);
    if (entry == sec->second.end()) return;
    try {
      fn(std::string_view(entry->second.value));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(entry->second.line) + ": [" + section + "] " + key + ": " +
                        e.what());
    }
  };
  auto non_negative = [](double v) {
    if (!(v >= 0.0)) throw ConfigError("value must be non-negative");
    return v;
  };
  auto positive = [](double v) {
    if (!(v > 0.0)) throw ConfigError("value must be positive");
    return v;
  };

  LinkConfig& link = cfg.link;
  DetectorParams& det = link.detector;

  // Presets first, so that explicit coefficients in the same section override them.
  apply("water", "type", [&](std::string_view v) {
    const auto kind = parse_water(trim(v));
    if (!kind) throw ConfigError("unknown water type '" + std::string(v) + "'");
    link.water = WaterType::preset(*kind);
  });
  apply("water", "alpha", [&](auto v) { link.water.alpha = positive(parse_quantity(v, Dimension::InverseLength)); });
  apply("water", "gamma_dep",
        [&](auto v) { link.water.gamma_dep = positive(parse_quantity(v, Dimension::InverseLength)); });
  apply("scenario", "id", [&](std::string_view v) {
    const auto id = parse_scenario(trim(v));
    if (!id) throw ConfigError("unknown scenario '" + std::string(v) + "'");
    link.scenario = AtmosphericScenario::preset(*id);
  });
  apply("scenario", "r0", [&](auto v) { link.scenario.r0 = non_negative(parse_quantity(v, Dimension::Irradiance)); });

  apply("link", "source_fraction", [&](auto v) { cfg.source_fraction = probability(v); });
  apply("link", "length", [&](auto v) { link.total_length_l = non_negative(parse_quantity(v, Dimension::Length)); });
  apply("link", "depth", [&](auto v) { link.depth_z = non_negative(parse_quantity(v, Dimension::Length)); });
  apply("link", "wavelength", [&](auto v) { link.wavelength = positive(parse_quantity(v, Dimension::Length)); });
  apply("link", "k_inf", [&](auto v) { link.k_inf = non_negative(parse_quantity(v, Dimension::InverseLength)); });
  apply("link", "code_rate", [&](auto v) {
    link.code_rate = probability(v);
    if (link.code_rate == 0.0) throw ConfigError("code rate must be positive");
  });
  link.source_pos_x = cfg.source_fraction * link.total_length_l;

  apply("detector", "eta_alice", [&](auto v) { det.eta_alice = probability(v); });
  apply("detector", "eta_bob", [&](auto v) { det.eta_bob = probability(v); });
  apply("detector", "dark_current", [&](auto v) { det.i_dc = non_negative(parse_quantity(v, Dimension::Frequency)); });
  apply("detector", "pulse_duration", [&](auto v) { det.dt_pulse = positive(parse_quantity(v, Dimension::Time)); });
  apply("detector", "gate_time", [&](auto v) { det.dt_gate = positive(parse_quantity(v, Dimension::Time)); });
  apply("detector", "lens_diameter", [&](auto v) { det.lens_d = positive(parse_quantity(v, Dimension::Length)); });
  apply("detector", "filter_bandwidth", [&](auto v) { det.d_lambda = positive(parse_quantity(v, Dimension::Length)); });
  apply("detector", "fov", [&](auto v) { det.fov_delta = positive(parse_angle(v)); });
  apply("detector", "e_det", [&](auto v) { det.e_det = probability(v); });
  apply("detector", "t_corr", [&](auto v) { det.t_corr = probability(v); });
  apply("detector", "apply_t_corr", [&](auto v) { det.apply_t_corr = parse_bool(v); });

  SweepSpec& sweep = cfg.sweep;
  apply("sweep", "l_min", [&](auto v) { sweep.l_min = parse_quantity(v, Dimension::Length); });
  apply("sweep", "l_max", [&](auto v) { sweep.l_max = parse_quantity(v, Dimension::Length); });
  apply("sweep", "step", [&](auto v) { sweep.step = parse_quantity(v, Dimension::Length); });
  apply("sweep", "betas", [&](std::string_view v) {
    sweep.betas.clear();
    for (std::string_view item : split_list(v)) {
      const double beta = parse_angle(item);
      if (!(beta >= 0.0 && beta <= std::numbers::pi / 4.0)) {
        throw ConfigError("entanglement angle '" + std::string(item) + "' outside [0, pi/4]");
      }
      sweep.betas.push_back(beta);
    }
  });
  apply("sweep", "waters", [&](std::string_view v) {
    sweep.waters.clear();
    for (std::string_view item : split_list(v)) {
      const auto kind = parse_water(item);
      if (!kind) throw ConfigError("unknown water type '" + std::string(item) + "'");
      sweep.waters.push_back(*kind);
    }
  });
  apply("sweep", "scenarios", [&](std::string_view v) {
    sweep.scenarios.clear();
    for (std::string_view item : split_list(v)) {
      const auto id = parse_scenario(item);
      if (!id) throw ConfigError("unknown scenario '" + std::string(item) + "'");
      sweep.scenarios.push_back(*id);
    }
  });

  apply("montecarlo", "enabled", [&](auto v) { cfg.mc.enabled = parse_bool(v); });
  apply("montecarlo", "packets", [&](auto v) { cfg.mc.packets = parse_count(v); });
  apply("montecarlo", "photons", [&](auto v) { cfg.mc.photons = parse_count(v); });
  apply("montecarlo", "seed", [&](auto v) { cfg.mc.seed = parse_count(v); });
  apply("montecarlo", "model", [&](auto v) { cfg.mc.model = parse_event_model(v); });

  try {
    validate(cfg.link);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid link configuration: ") + e.what());
  }
  try {
    cfg.sweep.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid sweep: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace uwqkd::cli
