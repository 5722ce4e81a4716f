#pragma once

#include <cmath>
#include <string>

#include "evt/catalog.hpp"

namespace evt::test {

struct QuantileOracle {
  const char* family;
  double u;
  double q;
};

struct RatioOracle {
  const char* family;
  double u;
  double x;
  double ratio;
  double h;
};

struct BOracle {
  const char* family;
  double u;
  double b;
};

#include "oracle_values.inc"

inline Distribution by_name(const std::string& name) {
  const auto family = family_from_string(name);
  if (!family) throw std::invalid_argument("unknown family " + name);
  return Distribution::from_params(*family, describe(*family).default_params);
}

inline double rel_err(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0 ? 0.0 : std::fabs(a - b) / scale;
}

inline const char* const kFamilies[] = {"burr",           "reversedburr", "singhmaddala",
                                        "logsinghmaddala", "exponential",  "logexponential",
                                        "normal",          "lognormal",    "logistic"};

}  // namespace evt::test
