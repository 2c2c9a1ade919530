#pragma once

#include <optional>
#include <string>

#include "maball/expr.hpp"

namespace maball {

// Line-oriented key=value run configuration ('#' comments). Unknown keys
// and out-of-range values are rejected with a location diagnostic.
struct RunConfig {
  int dim = 3;
  double h = 1.0 / 16.0;
  double sigma = 1.0;
  expr::NodePtr f_expr;             // parsed right-hand side
  std::string f_text = "48";
  std::string f_csv;                // optional nodewise data file
  std::optional<double> mu;
  bool strict = false;
  double newton_tol = 1e-8;
  double t_step = 0.1;
  unsigned long long seed = 0;
  std::string output_dir = ".";
};

RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

}  // namespace maball
