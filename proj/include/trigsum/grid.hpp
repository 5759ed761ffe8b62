#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace trigsum::grid {

// n points from a to b inclusive; endpoints are reproduced exactly.
std::vector<double> linear(double a, double b, int n);
std::vector<double> geometric(double a, double b, int n);

/// "linear:a:b:n" or "geometric:a:b:n". n >= 2; geometric needs a, b > 0.
std::vector<double> parse(std::string_view spec);

struct Spec {
  std::string kind;
  double a = 0.0;
  double b = 0.0;
  int n = 0;
};

Spec parse_spec(std::string_view spec);
std::vector<double> expand(const Spec& spec);

}  // namespace trigsum::grid
