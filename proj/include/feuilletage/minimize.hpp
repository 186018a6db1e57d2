#pragma once

#include <functional>
#include <span>
#include <vector>

namespace feuilletage {

struct SimplexOptions {
  /// Stop when every simplex vertex is within this relative distance of the
  /// best one in every coordinate (absolute below magnitude 1).
  double relative_tolerance = 1e-8;
  int max_evaluations = 40000;
  /// Fresh simplices built around the best point after convergence.
  int restarts = 3;
};

struct SimplexResult {
  std::vector<double> point;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Derivative-free Nelder-Mead descent with restarts. Non-finite objective
/// values are treated as +infinity, which lets callers encode constraints.
SimplexResult nelder_mead(const Objective& f, std::vector<double> start, std::vector<double> steps,
                          const SimplexOptions& options = {});

}  // namespace feuilletage
