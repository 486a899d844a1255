#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace floc {

// Malformed input: dimension mismatch, invalid config, parse failure.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Numeric solver failed to certify its tolerance. Carries the best iterate
// found so far when one exists.
struct solver_error : std::runtime_error {
  explicit solver_error(const std::string& what) : std::runtime_error(what) {}
  solver_error(const std::string& what, double best_a, double best_b, double best_cost)
      : std::runtime_error(what),
        best(std::in_place, best_a, best_b),
        best_cost(best_cost) {}

  std::optional<std::pair<double, double>> best;
  std::optional<double> best_cost;
};

}  // namespace floc
