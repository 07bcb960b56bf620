#include "besov_ns/config.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <set>
#include <sstream>

namespace besov_ns {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Bad {
  std::string what;
};

template <typename T>
T number(const std::string& v) {
  T out{};
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw Bad{"malformed value '" + v + "'"};
  return out;
}

bool boolean(const std::string& v) {
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  throw Bad{"malformed value '" + v + "' (expected true or false)"};
}

std::string show(double x) {
  std::ostringstream o;
  o.precision(10);
  o << x;
  return o.str();
}

struct Key {
  std::string section;
  std::string name;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

template <typename T>
Key entry(std::string section, std::string name, T ExperimentConfig::*member,
          std::function<void(T)> check = nullptr) {
  Key k{std::move(section), std::move(name), nullptr, nullptr};
  k.set = [member, check](ExperimentConfig& c, const std::string& v) {
    T value;
    if constexpr (std::is_same_v<T, bool>) value = boolean(v);
    else if constexpr (std::is_same_v<T, std::string>) value = v;
    else value = number<T>(v);
    if (check) check(value);
    c.*member = value;
  };
  k.get = [member](const ExperimentConfig& c) {
    if constexpr (std::is_same_v<T, bool>) return std::string(c.*member ? "true" : "false");
    else if constexpr (std::is_same_v<T, std::string>) return c.*member;
    else if constexpr (std::is_floating_point_v<T>) return show(c.*member);
    else return std::to_string(c.*member);
  };
  return k;
}

template <typename T>
std::function<void(T)> positive(const char* name) {
  return [name](T v) {
    if (!(v > 0)) throw Bad{std::string(name) + " must be positive"};
  };
}

const std::vector<Key>& schema() {
  static const std::vector<Key> keys = [] {
    std::vector<Key> k;
    k.push_back(entry<int>("grid", "n", &ExperimentConfig::n, [](int v) {
      if (v < 1 || v > 3) throw Bad{"n must be 1, 2 or 3"};
    }));
    k.push_back(entry<int>("grid", "N", &ExperimentConfig::N, [](int v) {
      if (v < 8 || (v & (v - 1)) != 0) throw Bad{"N must be a power of two (at least 8)"};
    }));
    k.push_back(entry<double>("grid", "L", &ExperimentConfig::L, positive<double>("L")));

    k.push_back(entry<double>("physics", "rho_bar", &ExperimentConfig::rho_bar, positive<double>("rho_bar")));
    k.push_back(entry<double>("physics", "mu", &ExperimentConfig::mu, positive<double>("mu")));
    k.push_back(entry<double>("physics", "lambda", &ExperimentConfig::lambda));
    k.push_back(entry<double>("physics", "gamma", &ExperimentConfig::gamma, positive<double>("gamma")));

    k.push_back(entry<double>("solver", "dt", &ExperimentConfig::dt, positive<double>("dt")));
    k.push_back(entry<double>("solver", "T_end", &ExperimentConfig::T_end, positive<double>("T_end")));
    k.push_back(entry<bool>("solver", "dealias", &ExperimentConfig::dealias));
    k.push_back(entry<double>("solver", "cfl", &ExperimentConfig::cfl, positive<double>("cfl")));
    k.push_back(entry<int>("solver", "monitor_stride", &ExperimentConfig::monitor_stride, positive<int>("monitor_stride")));
    k.push_back(entry<int>("solver", "snapshot_stride", &ExperimentConfig::snapshot_stride, [](int v) {
      if (v < 0) throw Bad{"snapshot_stride must be nonnegative"};
    }));
    k.push_back(entry<double>("solver", "p", &ExperimentConfig::norm_p, [](double v) {
      if (!(v >= 2.0)) throw Bad{"p must be at least 2"};
    }));
    k.push_back(entry<double>("solver", "R0", &ExperimentConfig::norm_R0, [](double v) {
      if (!(v >= 0.0)) throw Bad{"R0 must be nonnegative (0 selects 2/nu_bar)"};
    }));

    k.push_back(entry<std::string>("experiment", "kind", &ExperimentConfig::kind, [](std::string v) {
      const auto& ks = experiment_kinds();
      if (std::find(ks.begin(), ks.end(), v) == ks.end()) throw Bad{"unknown experiment kind '" + v + "'"};
    }));
    k.push_back(entry<std::uint64_t>("experiment", "seed", &ExperimentConfig::seed));
    k.push_back(entry<int>("experiment", "samples", &ExperimentConfig::samples, positive<int>("samples")));
    k.push_back(entry<double>("experiment", "s", &ExperimentConfig::s));
    k.push_back(entry<double>("experiment", "sigma", &ExperimentConfig::sigma));
    k.push_back(entry<double>("experiment", "p", &ExperimentConfig::p, [](double v) {
      if (!(v >= 1.0)) throw Bad{"p must be at least 1"};
    }));
    k.push_back(entry<double>("experiment", "q", &ExperimentConfig::q, [](double v) {
      if (!(v >= 1.0)) throw Bad{"q must be at least 1"};
    }));
    k.push_back(entry<double>("experiment", "R0", &ExperimentConfig::R0, positive<double>("R0")));
    k.push_back(entry<std::string>("experiment", "probe", &ExperimentConfig::probe));
    k.push_back(entry<int>("experiment", "ring_lo", &ExperimentConfig::ring_lo));
    k.push_back(entry<int>("experiment", "ring_hi", &ExperimentConfig::ring_hi));
    k.push_back(entry<double>("experiment", "decay_nu", &ExperimentConfig::decay_nu, positive<double>("decay_nu")));
    k.push_back(entry<double>("experiment", "t_start", &ExperimentConfig::t_start, [](double v) {
      if (!(v >= 0.0)) throw Bad{"t_start must be nonnegative"};
    }));
    k.push_back(entry<double>("experiment", "t_stop", &ExperimentConfig::t_stop, positive<double>("t_stop")));
    k.push_back(entry<int>("experiment", "t_count", &ExperimentConfig::t_count, [](int v) {
      if (v < 3) throw Bad{"t_count must be at least 3"};
    }));
    k.push_back(entry<std::string>("experiment", "oscillation", &ExperimentConfig::oscillation));
    k.push_back(entry<int>("experiment", "eps_k_min", &ExperimentConfig::eps_k_min));
    k.push_back(entry<int>("experiment", "eps_k_max", &ExperimentConfig::eps_k_max));
    k.push_back(entry<double>("experiment", "osc_R0", &ExperimentConfig::osc_R0, positive<double>("osc_R0")));
    k.push_back(entry<std::string>("experiment", "osc_p", &ExperimentConfig::osc_p, [](std::string v) {
      std::vector<double> ps;
      try {
        ps = parse_number_list(v, "osc_p");
      } catch (const ConfigError& e) {
        throw Bad{e.what()};
      }
      for (double x : ps)
        if (!(x >= 2.0)) throw Bad{"osc_p entries must be at least 2"};
    }));
    k.push_back(entry<double>("experiment", "conv_s", &ExperimentConfig::conv_s));
    k.push_back(entry<double>("experiment", "conv_amplitude", &ExperimentConfig::conv_amplitude));
    k.push_back(entry<double>("experiment", "eta", &ExperimentConfig::eta, [](double v) {
      if (!(v >= 0.0)) throw Bad{"eta must be nonnegative"};
    }));
    k.push_back(entry<double>("experiment", "bound_M", &ExperimentConfig::bound_M, positive<double>("bound_M")));
    return k;
  }();
  return keys;
}

const Key* find_key(const std::string& section, const std::string& name) {
  for (const Key& k : schema())
    if (k.section == section && k.name == name) return &k;
  return nullptr;
}

bool known_section(const std::string& s) {
  return s == "grid" || s == "physics" || s == "solver" || s == "experiment";
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string raw, section;
  std::set<std::string> seen;
  int line_no = 0;
  auto fail = [&](const std::string& msg) { throw ConfigError("line " + std::to_string(line_no) + ": " + msg); };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto c = line.find_first_of("#;"); c != std::string::npos) line.erase(c);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("malformed section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      if (!known_section(section)) fail("unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value, got '" + line + "'");
    if (section.empty()) fail("key outside of a section");
    const std::string name = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const Key* key = find_key(section, name);
    if (!key) fail("unknown key '" + name + "' in [" + section + "]");
    if (!seen.insert(section + "." + name).second) fail("duplicate key '" + name + "' in [" + section + "]");
    if (value.empty()) fail("missing value for '" + name + "'");
    try {
      key->set(cfg, value);
    } catch (const Bad& b) {
      fail(b.what);
    }
  }
  return cfg;
}

void apply_override(ExperimentConfig& config, const std::string& assignment) {
  auto fail = [&](const std::string& msg) { throw ConfigError("--set " + assignment + ": " + msg); };
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) fail("expected section.key=value");
  const std::string path = trim(assignment.substr(0, eq));
  const auto dot = path.find('.');
  if (dot == std::string::npos) fail("expected section.key=value");
  const std::string section = path.substr(0, dot), name = path.substr(dot + 1);
  if (!known_section(section)) fail("unknown section [" + section + "]");
  const Key* key = find_key(section, name);
  if (!key) fail("unknown key '" + name + "' in [" + section + "]");
  const std::string value = trim(assignment.substr(eq + 1));
  if (value.empty()) fail("missing value for '" + name + "'");
  try {
    key->set(config, value);
  } catch (const Bad& b) {
    fail(b.what);
  }
}

void validate_config(const ExperimentConfig& c) {
  if (c.kind.empty()) throw ConfigError("missing required field experiment.kind");
  const auto& ks = experiment_kinds();
  if (std::find(ks.begin(), ks.end(), c.kind) == ks.end())
    throw ConfigError("unknown experiment kind '" + c.kind + "'");
  if (!(c.lambda + 2.0 * c.mu > 0.0)) throw ConfigError("physics: lambda + 2 mu must be positive");
  if (!(c.T_end >= c.dt)) throw ConfigError("solver: T_end must be at least dt");
  if (c.ring_lo > c.ring_hi) throw ConfigError("experiment: ring_lo must not exceed ring_hi");
  if (!(c.t_stop > c.t_start)) throw ConfigError("experiment: t_stop must exceed t_start");
  if (c.eps_k_max - c.eps_k_min < 2) throw ConfigError("experiment: the eps sweep needs at least 3 values");
}

ExperimentConfig resolve_defaults(ExperimentConfig c) {
  if (c.n == 0) {
    if (c.kind == "green-decay") c.n = 1;
    else if (c.kind == "oscillation-scaling" && c.oscillation == "shear_velocity") c.n = 3;
    else c.n = 2;
  }
  if (c.N == 0) {
    if (c.kind == "green-decay") c.N = 256;
    else if (c.kind == "oscillation-scaling") c.N = c.n == 3 ? 128 : 256;
    else c.N = 64;
  }
  return c;
}

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    try {
      out.push_back(number<double>(item));
    } catch (const Bad&) {
      throw ConfigError(what + ": malformed list entry '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError(what + ": empty list");
  return out;
}

std::vector<std::string> describe_config(const ExperimentConfig& config) {
  std::vector<std::string> out;
  for (const Key& k : schema()) out.push_back(k.section + "." + k.name + " = " + k.get(config));
  return out;
}

}  // namespace besov_ns
