#include "maball/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "maball/errors.hpp"

namespace maball {

namespace {

double parse_double(const std::string& v, int line, const std::string& key) {
  try {
    size_t idx = 0;
    const double d = std::stod(v, &idx);
    if (idx != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": bad numeric value for '" +
                      key + "': " + v);
  }
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool have_f = false;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string ln = trim(raw);
    if (ln.empty()) continue;
    const auto eq = ln.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(ln.substr(0, eq));
    const std::string val = trim(ln.substr(eq + 1));

    if (key == "dim") {
      cfg.dim = static_cast<int>(parse_double(val, lineno, key));
      if (cfg.dim != 2 && cfg.dim != 3)
        throw ConfigError("line " + std::to_string(lineno) + ": dim must be 2 or 3");
    } else if (key == "h") {
      cfg.h = parse_double(val, lineno, key);
      if (!(cfg.h > 0.0 && cfg.h <= 0.5))
        throw ConfigError("line " + std::to_string(lineno) + ": need 0 < h <= 0.5");
    } else if (key == "sigma") {
      cfg.sigma = parse_double(val, lineno, key);
      if (cfg.sigma != 1.0 && cfg.sigma != 0.0 && cfg.sigma != -1.0)
        throw ConfigError("line " + std::to_string(lineno) +
                          ": sigma must be +1, 0 or -1");
    } else if (key == "f") {
      try {
        cfg.f_expr = expr::parse(val, lineno);
      } catch (const expr::ParseError& pe) {
        throw ConfigError("line " + std::to_string(lineno) + ", col " +
                          std::to_string(pe.column) + ": " + pe.what());
      }
      cfg.f_text = val;
      have_f = true;
    } else if (key == "f_csv") {
      cfg.f_csv = val;
      have_f = true;
    } else if (key == "mu") {
      cfg.mu = parse_double(val, lineno, key);
      if (!(*cfg.mu > 0.0))
        throw ConfigError("line " + std::to_string(lineno) + ": mu must be positive");
    } else if (key == "strict") {
      if (val == "true" || val == "1")
        cfg.strict = true;
      else if (val == "false" || val == "0")
        cfg.strict = false;
      else
        throw ConfigError("line " + std::to_string(lineno) +
                          ": strict must be true/false");
    } else if (key == "newton_tol") {
      cfg.newton_tol = parse_double(val, lineno, key);
      if (!(cfg.newton_tol > 0.0))
        throw ConfigError("line " + std::to_string(lineno) + ": newton_tol > 0");
    } else if (key == "t_step") {
      cfg.t_step = parse_double(val, lineno, key);
      if (!(cfg.t_step > 0.0 && cfg.t_step <= 0.25))
        throw ConfigError("line " + std::to_string(lineno) +
                          ": t_step must be in (0, 0.25]");
    } else if (key == "seed") {
      cfg.seed = static_cast<unsigned long long>(parse_double(val, lineno, key));
    } else if (key == "output_dir") {
      cfg.output_dir = val;
    } else {
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key +
                        "'");
    }
  }
  if (cfg.f_expr && expr::max_variable(cfg.f_expr) > cfg.dim)
    throw ConfigError("f references x" + std::to_string(expr::max_variable(cfg.f_expr)) +
                      " but dim = " + std::to_string(cfg.dim));
  if (!have_f && !cfg.f_expr) cfg.f_expr = expr::parse(cfg.f_text);
  if (!cfg.f_expr && cfg.f_csv.empty())
    throw ConfigError("config must define f (expression) or f_csv");
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace maball
