#include "feuilletage/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace feuilletage {

namespace {

struct Run {
  std::vector<double> point;
  double value;
  bool converged;
};

Run descend(const Objective& raw, const std::vector<double>& start, const std::vector<double>& steps,
            const SimplexOptions& opt, int& evaluations) {
  const std::size_t dim = start.size();
  auto f = [&](const std::vector<double>& x) {
    ++evaluations;
    const double v = raw(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  std::vector<std::vector<double>> simplex(dim + 1, start);
  for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += steps[i];
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = f(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), trial(dim), trial2(dim);
  auto blend = [&](std::vector<double>& out, double t) {
    // out = centroid + t * (centroid - worst)
    const auto& worst = simplex[order[dim]];
    for (std::size_t j = 0; j < dim; ++j) out[j] = centroid[j] + t * (centroid[j] - worst[j]);
  };

  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    const auto& best = simplex[order[0]];

    bool small = true;
    for (std::size_t i = 0; i <= dim && small; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        if (std::abs(simplex[i][j] - best[j]) > opt.relative_tolerance * std::max(std::abs(best[j]), 1.0)) {
          small = false;
          break;
        }
    if (small) return {best, values[order[0]], true};
    if (evaluations >= opt.max_evaluations) return {best, values[order[0]], false};

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[order[i]][j] / static_cast<double>(dim);

    const auto worst = order[dim];
    const double f_best = values[order[0]], f_second = values[order[dim - 1]], f_worst = values[worst];

    blend(trial, 1.0);
    const double f_reflect = f(trial);
    if (f_reflect < f_best) {
      blend(trial2, 2.0);
      const double f_expand = f(trial2);
      if (f_expand < f_reflect) {
        simplex[worst] = trial2;
        values[worst] = f_expand;
      } else {
        simplex[worst] = trial;
        values[worst] = f_reflect;
      }
      continue;
    }
    if (f_reflect < f_second) {
      simplex[worst] = trial;
      values[worst] = f_reflect;
      continue;
    }
    const bool outside = f_reflect < f_worst;
    blend(trial2, outside ? 0.5 : -0.5);
    const double f_contract = f(trial2);
    if (f_contract < (outside ? f_reflect : f_worst)) {
      simplex[worst] = trial2;
      values[worst] = f_contract;
      continue;
    }
    // shrink towards the best vertex
    const auto keep = simplex[order[0]];
    for (std::size_t i = 1; i <= dim; ++i) {
      auto& x = simplex[order[i]];
      for (std::size_t j = 0; j < dim; ++j) x[j] = keep[j] + 0.5 * (x[j] - keep[j]);
      values[order[i]] = f(x);
    }
  }
}

}  // namespace

SimplexResult nelder_mead(const Objective& f, std::vector<double> start, std::vector<double> steps,
                          const SimplexOptions& options) {
  if (start.empty() || start.size() != steps.size()) throw std::invalid_argument("nelder_mead: bad dimensions");
  SimplexResult result;
  auto run = descend(f, start, steps, options, result.evaluations);
  for (int r = 0; r < options.restarts && result.evaluations < options.max_evaluations; ++r) {
    std::vector<double> restart_steps(steps.size());
    for (std::size_t j = 0; j < steps.size(); ++j)
      restart_steps[j] = std::max(std::abs(run.point[j]) * 0.05, std::abs(steps[j]) * 0.1);
    auto again = descend(f, run.point, restart_steps, options, result.evaluations);
    const bool improved = again.value < run.value;
    if (again.value <= run.value) run = std::move(again);
    if (!improved) break;
  }
  result.point = std::move(run.point);
  result.value = run.value;
  result.converged = run.converged;
  return result;
}

}  // namespace feuilletage
