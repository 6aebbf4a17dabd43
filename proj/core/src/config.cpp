#include <rotorchan/config.hpp>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace rotorchan {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int parse_int(const std::string& path, const std::string& text) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(path + ": '" + text + "' is not an integer");
  }
}

std::uint64_t parse_seed(const std::string& path, const std::string& text) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(path + ": '" + text + "' is not an unsigned integer");
  }
}

double parse_double(const std::string& path, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(path + ": '" + text + "' is not a number");
  }
}

bool parse_bool(const std::string& path, const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ConfigError(path + ": '" + text + "' is not true or false");
}

std::vector<int> parse_int_list(const std::string& path, const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(path, trim(item)));
  if (out.empty()) throw ConfigError(path + ": empty list");
  return out;
}

std::string format_int_list(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

struct FieldSpec {
  std::string path;
  std::function<std::string(const Config&)> get;
  std::function<void(Config&, const std::string&)> set;
};

// One table drives parsing, overrides, serialization, and manifests, so the
// key set can never drift between them. Order here is the dump order.
const std::vector<FieldSpec>& field_table() {
  static const std::vector<FieldSpec> table = [] {
    std::vector<FieldSpec> t;
    const auto int_field = [&t](const std::string& path, auto ref) {
      t.push_back({path,
                   [ref](const Config& c) { return std::to_string(ref(const_cast<Config&>(c))); },
                   [ref, path](Config& c, const std::string& v) { ref(c) = parse_int(path, v); }});
    };
    const auto double_field = [&t](const std::string& path, auto ref) {
      t.push_back({path,
                   [ref](const Config& c) { return fmt_double(ref(const_cast<Config&>(c))); },
                   [ref, path](Config& c, const std::string& v) { ref(c) = parse_double(path, v); }});
    };
    const auto str_field = [&t](const std::string& path, auto ref) {
      t.push_back({path, [ref](const Config& c) { return ref(const_cast<Config&>(c)); },
                   [ref](Config& c, const std::string& v) { ref(c) = v; }});
    };
    const auto bool_field = [&t](const std::string& path, auto ref) {
      t.push_back({path,
                   [ref](const Config& c) {
                     return std::string(ref(const_cast<Config&>(c)) ? "true" : "false");
                   },
                   [ref, path](Config& c, const std::string& v) { ref(c) = parse_bool(path, v); }});
    };
    const auto list_field = [&t](const std::string& path, auto ref) {
      t.push_back({path,
                   [ref](const Config& c) { return format_int_list(ref(const_cast<Config&>(c))); },
                   [ref, path](Config& c, const std::string& v) {
                     ref(c) = parse_int_list(path, v);
                   }});
    };
    const auto seed_field = [&t](const std::string& path, auto ref) {
      t.push_back({path,
                   [ref](const Config& c) { return std::to_string(ref(const_cast<Config&>(c))); },
                   [ref, path](Config& c, const std::string& v) { ref(c) = parse_seed(path, v); }});
    };

    str_field("system.kind", [](Config& c) -> std::string& { return c.system.kind; });
    int_field("system.n", [](Config& c) -> int& { return c.system.n; });
    int_field("system.cutoff", [](Config& c) -> int& { return c.system.cutoff; });
    double_field("system.alpha1", [](Config& c) -> double& { return c.system.alpha1; });
    double_field("system.alpha2", [](Config& c) -> double& { return c.system.alpha2; });
    double_field("system.b", [](Config& c) -> double& { return c.system.b; });

    str_field("solver.backend", [](Config& c) -> std::string& { return c.solver.backend; });
    int_field("solver.k", [](Config& c) -> int& { return c.solver.k; });
    double_field("solver.tol", [](Config& c) -> double& { return c.solver.tol; });
    int_field("solver.max_restarts", [](Config& c) -> int& { return c.solver.max_restarts; });
    int_field("solver.subspace", [](Config& c) -> int& { return c.solver.subspace; });
    int_field("solver.dense_limit", [](Config& c) -> int& { return c.solver.dense_limit; });

    int_field("grid.size", [](Config& c) -> int& { return c.grid.size; });
    str_field("grid.colormap", [](Config& c) -> std::string& { return c.grid.colormap; });

    list_field("modes.indices", [](Config& c) -> std::vector<int>& { return c.modes.indices; });
    bool_field("modes.overlay_ftse", [](Config& c) -> bool& { return c.modes.overlay_ftse; });
    bool_field("modes.left", [](Config& c) -> bool& { return c.modes.left; });

    int_field("ftse.t", [](Config& c) -> int& { return c.ftse.t; });
    double_field("ftse.floor", [](Config& c) -> double& { return c.ftse.floor; });

    double_field("sweep.alpha_min", [](Config& c) -> double& { return c.sweep.alpha_min; });
    double_field("sweep.alpha_max", [](Config& c) -> double& { return c.sweep.alpha_max; });
    int_field("sweep.steps", [](Config& c) -> int& { return c.sweep.steps; });

    double_field("submatrix.alpha_min",
                 [](Config& c) -> double& { return c.submatrix.alpha_min; });
    double_field("submatrix.alpha_max",
                 [](Config& c) -> double& { return c.submatrix.alpha_max; });
    int_field("submatrix.steps", [](Config& c) -> int& { return c.submatrix.steps; });

    int_field("correlations.t_max", [](Config& c) -> int& { return c.correlations.t_max; });
    int_field("correlations.m", [](Config& c) -> int& { return c.correlations.m; });
    int_field("correlations.n", [](Config& c) -> int& { return c.correlations.n; });
    int_field("correlations.mp", [](Config& c) -> int& { return c.correlations.mp; });
    int_field("correlations.np", [](Config& c) -> int& { return c.correlations.np; });

    int_field("monte_carlo.samples", [](Config& c) -> int& { return c.monte_carlo.samples; });
    int_field("monte_carlo.grid", [](Config& c) -> int& { return c.monte_carlo.grid; });

    list_field("radii.n_list", [](Config& c) -> std::vector<int>& { return c.radii.n_list; });

    seed_field("run.seed", [](Config& c) -> std::uint64_t& { return c.run.seed; });
    int_field("run.jobs", [](Config& c) -> int& { return c.run.jobs; });
    str_field("run.out", [](Config& c) -> std::string& { return c.run.out; });
    return t;
  }();
  return table;
}

const FieldSpec& find_field(const std::string& path) {
  for (const auto& spec : field_table())
    if (spec.path == path) return spec;
  throw ConfigError("unknown config key '" + path + "'");
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

Config parse_config_text(const std::string& text) {
  Config config;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      require(s.back() == ']', "config line " + std::to_string(lineno) + ": unterminated section");
      section = trim(s.substr(1, s.size() - 2));
      require(!section.empty(), "config line " + std::to_string(lineno) + ": empty section name");
      continue;
    }
    const std::size_t eq = s.find('=');
    require(eq != std::string::npos,
            "config line " + std::to_string(lineno) + ": expected key = value");
    require(!section.empty(),
            "config line " + std::to_string(lineno) + ": key before any [section]");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    find_field(section + "." + key).set(config, value);
  }
  return config;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_override(Config& config, const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override '" + assignment + "' is not of the form section.key=value");
  const std::string path = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  find_field(path).set(config, value);
}

void validate_config(const Config& config) {
  const auto& c = config;
  require(c.system.kind == "quantum" || c.system.kind == "classical",
          "system.kind must be quantum or classical");
  require(c.system.n >= 2 && c.system.n % 2 == 0, "system.n must be even and >= 2");
  require(c.system.cutoff >= 1, "system.cutoff must be >= 1");
  require(c.system.b >= 0.0, "system.b must be >= 0");
  require(c.solver.backend == "auto" || c.solver.backend == "dense" ||
              c.solver.backend == "iterative",
          "solver.backend must be auto, dense, or iterative");
  require(c.solver.k >= 1, "solver.k must be >= 1");
  require(c.solver.tol > 0.0, "solver.tol must be > 0");
  require(c.solver.max_restarts >= 1, "solver.max_restarts must be >= 1");
  require(c.solver.subspace >= 0, "solver.subspace must be >= 0");
  require(c.solver.dense_limit >= 2, "solver.dense_limit must be >= 2");
  require(c.grid.size >= 2, "grid.size must be >= 2");
  require(c.grid.colormap == "gray" || c.grid.colormap == "viridis",
          "grid.colormap must be gray or viridis");
  require(!c.modes.indices.empty(), "modes.indices must not be empty");
  for (const int idx : c.modes.indices)
    require(idx >= 0, "modes.indices entries must be >= 0");
  require(c.ftse.t >= 1, "ftse.t must be >= 1");
  require(c.ftse.floor > 0.0, "ftse.floor must be > 0");
  for (const auto* range : {&c.sweep, &c.submatrix}) {
    const char* name = range == &c.sweep ? "sweep" : "submatrix";
    require(range->steps >= 1, std::string(name) + ".steps must be >= 1");
    require(range->alpha_max >= range->alpha_min,
            std::string(name) + ".alpha_max must be >= alpha_min");
  }
  require(c.correlations.t_max >= 1, "correlations.t_max must be >= 1");
  require(c.monte_carlo.samples >= 2, "monte_carlo.samples must be >= 2");
  require(c.monte_carlo.grid >= 2, "monte_carlo.grid must be >= 2");
  require(!c.radii.n_list.empty(), "radii.n_list must not be empty");
  for (const int n : c.radii.n_list)
    require(n >= 2, "radii.n_list entries must be >= 2");
  require(c.run.jobs >= 1, "run.jobs must be >= 1");
  require(!c.run.out.empty(), "run.out must not be empty");
}

std::string serialize_config(const Config& config) {
  std::string out;
  std::string section;
  for (const auto& spec : field_table()) {
    const std::size_t dot = spec.path.find('.');
    const std::string sec = spec.path.substr(0, dot);
    if (sec != section) {
      if (!out.empty()) out += "\n";
      out += "[" + sec + "]\n";
      section = sec;
    }
    out += spec.path.substr(dot + 1) + " = " + spec.get(config) + "\n";
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> flatten_config(const Config& config) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& spec : field_table()) out.emplace_back(spec.path, spec.get(config));
  return out;
}

}  // namespace rotorchan
