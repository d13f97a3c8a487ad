#include "smm/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace smm {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string format_round_trip(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double number_or_throw(std::string_view key, std::string_view value, std::size_t line) {
  if (auto v = parse_number(value)) return *v;
  throw ConfigError(std::string(key), line, "malformed number '" + std::string(value) + "'");
}

std::size_t count_or_throw(std::string_view key, std::string_view value, std::size_t line) {
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(std::string(key), line,
                      "expected a nonnegative integer, got '" + std::string(value) + "'");
  }
  return out;
}

// "90deg", "1.5708rad" or a bare number in degrees.
double angle_degrees(std::string_view key, std::string_view value, std::size_t line) {
  if (value.ends_with("deg")) {
    return number_or_throw(key, trim(value.substr(0, value.size() - 3)), line);
  }
  if (value.ends_with("rad")) {
    return number_or_throw(key, trim(value.substr(0, value.size() - 3)), line) * 180.0 /
           std::numbers::pi;
  }
  return number_or_throw(key, value, line);
}

void require(bool ok, std::string_view key, std::size_t line, const std::string& message) {
  if (!ok) throw ConfigError(std::string(key), line, message);
}

}  // namespace

ConfigError::ConfigError(const std::string& key, std::size_t line, const std::string& message)
    : std::runtime_error((line == 0 ? std::string("command line") : "line " + std::to_string(line)) +
                         ": " + key + ": " + message),
      key_(key),
      line_(line) {}

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() ||
      !std::isfinite(out)) {
    return std::nullopt;
  }
  return out;
}

SweepGrid RunConfig::grid() const {
  SweepGrid g;
  g.b_min = b_min_tesla;
  g.b_max = b_max_tesla;
  g.steps = steps;
  g.theta = theta_deg * std::numbers::pi / 180.0;
  g.phi = phi_deg * std::numbers::pi / 180.0;
  return g;
}

void RunConfig::validate() const {
  if (b_min_tesla > b_max_tesla) {
    throw ConfigError("b_min_tesla", 0, "b_min_tesla must not exceed b_max_tesla");
  }
  if (state_index && *state_index > static_cast<std::size_t>(system.s.twice())) {
    throw ConfigError("state_index", 0,
                      "state_index must lie in [0, " + std::to_string(system.s.twice()) + "]");
  }
  if (pair) {
    const std::size_t tracks = system.s.dim();
    if (pair->first < 1 || pair->second < 1 || pair->first > tracks ||
        pair->second > tracks || pair->first == pair->second) {
      throw ConfigError("pair", 0,
                        "pair needs two distinct track numbers in [1, " +
                            std::to_string(tracks) + "]");
    }
  }
}

void set_config_value(RunConfig& c, std::string_view key, std::string_view raw,
                      std::size_t line) {
  const std::string_view value = trim(raw);
  if (key == "spin") {
    const double s = number_or_throw(key, value, line);
    require(s >= 0.0 && s <= 100.0 && std::abs(2.0 * s - std::round(2.0 * s)) < 1e-12, key,
            line, "spin must be a multiple of 1/2 in [0, 100]");
    c.system.s = SpinQuantum(static_cast<int>(std::round(2.0 * s)));
  } else if (key == "d_kelvin") {
    c.system.d = number_or_throw(key, value, line);
  } else if (key == "e_kelvin") {
    c.system.e = number_or_throw(key, value, line);
  } else if (key == "g") {
    c.system.g = number_or_throw(key, value, line);
    require(c.system.g > 0.0, key, line, "g must be positive");
  } else if (key == "mu_b_kelvin_per_tesla") {
    c.system.mu_b = number_or_throw(key, value, line);
    require(c.system.mu_b > 0.0, key, line, "mu_b must be positive");
  } else if (key == "b_min_tesla") {
    c.b_min_tesla = number_or_throw(key, value, line);
  } else if (key == "b_max_tesla") {
    c.b_max_tesla = number_or_throw(key, value, line);
  } else if (key == "steps") {
    c.steps = count_or_throw(key, value, line);
    require(c.steps >= 2 && c.steps <= 10'000'000, key, line, "steps must lie in [2, 1e7]");
  } else if (key == "theta_deg" || key == "theta") {
    c.theta_deg = key == "theta" ? angle_degrees(key, value, line)
                                 : number_or_throw(key, value, line);
    require(c.theta_deg >= 0.0 && c.theta_deg <= 180.0, key, line,
            "theta must lie in [0, 180] degrees");
  } else if (key == "phi_deg" || key == "phi") {
    c.phi_deg = key == "phi" ? angle_degrees(key, value, line)
                             : number_or_throw(key, value, line);
  } else if (key == "output") {
    require(!value.empty(), key, line, "output path is empty");
    c.output_path = std::string(value);
  } else if (key == "state_index") {
    c.state_index = count_or_throw(key, value, line);
  } else if (key == "decimals") {
    const std::size_t d = count_or_throw(key, value, line);
    require(d >= 3 && d <= 17, key, line, "decimals must lie in [3, 17]");
    c.decimals = static_cast<int>(d);
  } else {
    throw ConfigError(std::string(key), line, "unknown key");
  }
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      require(line.back() == ']', "[section]", line_no, "unterminated section header");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(line), line_no, "expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    std::string_view value = line.substr(eq + 1);
    if (const auto hash = value.find('#'); hash != std::string_view::npos) {
      value = value.substr(0, hash);
    }
    require(!key.empty(), "<empty>", line_no, "missing key before '='");
    set_config_value(config, key, value, line_no);
  }
  if (config.system.rhombicity_warning()) {
    config.warnings.push_back("|E| > |D|/3: rhombic term exceeds the conventional range");
  }
  config.validate();
  return config;
}

std::string echo_config(const RunConfig& c) {
  std::ostringstream out;
  auto line = [&](const char* key, const std::string& value) {
    out << "# " << key << " = " << value << '\n';
  };
  line("spin", format_round_trip(c.system.s.value()));
  line("d_kelvin", format_round_trip(c.system.d));
  line("e_kelvin", format_round_trip(c.system.e));
  line("g", format_round_trip(c.system.g));
  line("mu_b_kelvin_per_tesla", format_round_trip(c.system.mu_b));
  line("b_min_tesla", format_round_trip(c.b_min_tesla));
  line("b_max_tesla", format_round_trip(c.b_max_tesla));
  line("steps", std::to_string(c.steps));
  line("theta_deg", format_round_trip(c.theta_deg));
  line("phi_deg", format_round_trip(c.phi_deg));
  if (c.state_index) line("state_index", std::to_string(*c.state_index));
  line("decimals", std::to_string(c.decimals));
  return out.str();
}

}  // namespace smm
