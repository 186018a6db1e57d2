#include "feuilletage/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "feuilletage/minimize.hpp"

namespace feuilletage {

FitWindow decile_window(const Density& reference, double decile) {
  if (reference.values.empty()) throw std::invalid_argument("decile_window: empty density");
  if (!(decile > 0.0 && decile <= 1.0)) throw std::invalid_argument("decile_window: decile must be in (0, 1]");
  const auto& v = reference.values;
  const auto peak = std::max_element(v.begin(), v.end()) - v.begin();
  const double threshold = decile * v[static_cast<std::size_t>(peak)];
  FitWindow w{peak, peak, decile};
  while (w.lo > 0 && v[static_cast<std::size_t>(w.lo - 1)] >= threshold) --w.lo;
  while (w.hi + 1 < static_cast<std::int64_t>(v.size()) && v[static_cast<std::size_t>(w.hi + 1)] >= threshold) ++w.hi;
  return w;
}

double interpolate(const Density& rho, double y) {
  const auto last = static_cast<double>(rho.values.size()) - 1.0;
  if (!(y >= 0.0) || y > last) return 0.0;
  const double fl = std::floor(y);
  const auto i = static_cast<std::int64_t>(fl);
  const double t = y - fl;
  if (t == 0.0) return rho.at(i);
  return (1.0 - t) * rho.at(i) + t * rho.at(i + 1);
}

double rescaled_eval(const Density& rho, double k, double s, double x) {
  if (!(k > 0.0)) throw std::invalid_argument("rescaled_eval: k must be positive");
  return interpolate(rho, (x + s) / k - s) / k;
}

double collapse_residual(const Density& rho, const Density& reference, const FitWindow& window, double k, double s) {
  double sum = 0.0;
  for (auto x = window.lo; x <= window.hi; ++x) {
    const double d = rescaled_eval(rho, k, s, static_cast<double>(x)) - reference.at(x);
    sum += d * d;
  }
  return sum;
}

namespace {

double mean_distance(const Density& rho) {
  double m = 0.0;
  for (std::size_t i = 0; i < rho.values.size(); ++i) m += static_cast<double>(i) * rho.values[i];
  return m;
}

double initial_k(const Density& rho, const Density& reference) {
  const double m = mean_distance(rho);
  const double k = m > 0.0 ? mean_distance(reference) / m : 1.0;
  return std::isfinite(k) && k > 0.0 ? k : 1.0;
}

void check_inputs(const Density& rho, const Density& reference, const FitWindow& window) {
  if (rho.values.empty() || reference.values.empty()) throw std::invalid_argument("fit: empty density");
  if (window.lo < 0 || window.hi < window.lo) throw std::invalid_argument("fit: bad window");
}

}  // namespace

KFit fit_k_s(const Density& rho, const Density& reference, const FitWindow& window, std::int64_t n) {
  check_inputs(rho, reference, window);
  const double k0 = initial_k(rho, reference);
  auto objective = [&](std::span<const double> p) {
    if (!(p[0] > 0.0)) return std::numeric_limits<double>::infinity();
    return collapse_residual(rho, reference, window, p[0], p[1]);
  };
  const auto best = nelder_mead(objective, {k0, 0.0}, {0.1 * k0, 0.5});
  KFit fit{n, best.point[0], best.point[1], best.value, best.converged};
  if (std::abs(fit.k - 1.0) < 1e-9) fit.s = 0.0;
  return fit;
}

KFit fit_k_fixed_shift(const Density& rho, const Density& reference, const FitWindow& window, double s,
                       std::int64_t n) {
  check_inputs(rho, reference, window);
  const double k0 = initial_k(rho, reference);
  auto objective = [&](std::span<const double> p) {
    if (!(p[0] > 0.0)) return std::numeric_limits<double>::infinity();
    return collapse_residual(rho, reference, window, p[0], s);
  };
  const auto best = nelder_mead(objective, {k0}, {0.1 * k0});
  return KFit{n, best.point[0], s, best.value, best.converged};
}

Collapse two_pass_collapse(std::span<const SizedDensity> densities, const Density& reference,
                           const FitWindow& window) {
  if (densities.size() < 2) throw std::invalid_argument("two_pass_collapse: need at least two densities");
  Collapse out;
  for (const auto& d : densities) out.free_fits.push_back(fit_k_s(d.density, reference, window, d.n));
  double sum = 0.0;
  for (const auto& f : out.free_fits) sum += f.s;
  out.mean_shift = sum / static_cast<double>(out.free_fits.size());
  for (const auto& d : densities)
    out.fits.push_back(fit_k_fixed_shift(d.density, reference, window, out.mean_shift, d.n));
  return out;
}

double dh_model(double d_h, double a, double b, double delta, double ratio) {
  return std::pow(ratio, -1.0 / d_h) * (a + b * std::pow(ratio, -delta));
}

namespace {

constexpr double kDeltaStarts[] = {0.1, 0.25, 0.5, 1.0};
// delta within this fraction of the box edge counts as pinned
constexpr double kPinnedFraction = 0.01;

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

struct Params {
  double d_h, a, b, delta;
};

// unconstrained coordinates -> box
Params to_params(std::span<const double> u) {
  return {kMinDH + (kMaxDH - kMinDH) * logistic(u[0]), std::exp(u[1]), u[2], kMaxDelta * logistic(u[3])};
}

std::vector<double> to_free(const Params& p) {
  auto clamp01 = [](double x) { return std::clamp(x, 1e-12, 1.0 - 1e-12); };
  return {logit(clamp01((p.d_h - kMinDH) / (kMaxDH - kMinDH))), std::log(p.a), p.b, logit(clamp01(p.delta / kMaxDelta))};
}

double log_residual(const std::vector<double>& x, const std::vector<double>& y, const Params& p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double m = dh_model(p.d_h, p.a, p.b, p.delta, std::exp(x[i]));
    if (!(m > 0.0)) return std::numeric_limits<double>::infinity();
    const double r = y[i] - std::log(m);
    sum += r * r;
  }
  return sum;
}

// Solve (J^T J) and return the diagonal of its inverse; empty if singular.
std::vector<double> normal_inverse_diagonal(std::vector<std::array<double, 4>> jac) {
  double m[4][8] = {};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c)
      for (const auto& row : jac) m[r][c] += row[static_cast<std::size_t>(r)] * row[static_cast<std::size_t>(c)];
    m[r][4 + r] = 1.0;
  }
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (std::abs(m[pivot][col]) < 1e-300) return {};
    if (pivot != col)
      for (int c = 0; c < 8; ++c) std::swap(m[pivot][c], m[col][c]);
    const double inv = 1.0 / m[col][col];
    for (int c = 0; c < 8; ++c) m[col][c] *= inv;
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double f = m[r][col];
      for (int c = 0; c < 8; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return {m[0][4], m[1][5], m[2][6], m[3][7]};
}

}  // namespace

DHFit fit_dh(std::span<const KPoint> points, std::int64_t n0) {
  if (n0 < 1) throw std::invalid_argument("fit_dh: n0 must be >= 1");
  std::vector<KPoint> pts(points.begin(), points.end());
  if (std::none_of(pts.begin(), pts.end(), [&](const KPoint& p) { return p.n == n0; })) pts.push_back({n0, 1.0});

  std::set<std::int64_t> distinct;
  for (const auto& p : pts) {
    if (p.n < 1 || !(p.k > 0.0)) throw std::invalid_argument("fit_dh: points need n >= 1 and k > 0");
    distinct.insert(p.n);
  }
  if (distinct.size() < 4) throw std::invalid_argument("fit_dh: need at least 4 distinct n");
  if (*distinct.rbegin() < 4 * *distinct.begin()) throw std::invalid_argument("fit_dh: n must span two octaves");

  std::vector<double> x, y;
  for (const auto& p : pts) {
    x.push_back(std::log(static_cast<double>(p.n) / static_cast<double>(n0)));
    y.push_back(std::log(p.k));
  }

  // stage 1: log k = log a - (1/d_H) log(n/n0)
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  const double d1 = slope < 0.0 ? std::clamp(-1.0 / slope, kMinDH, kMaxDH) : kMaxDH;

  DHFit fit;
  fit.power_law_d_h = slope < 0.0 ? -1.0 / slope : std::numeric_limits<double>::infinity();

  // stage 2: local refinement of all four parameters starting from the power
  // law. delta is not identified while b = 0, so a few starting values are
  // tried and the lowest residual is kept.
  auto objective = [&](std::span<const double> u) { return log_residual(x, y, to_params(u)); };
  SimplexOptions opt;
  opt.relative_tolerance = 1e-12;
  opt.restarts = 6;
  Params best_params{d1, std::exp(intercept), 0.0, 1.0 / d1};
  double best_value = log_residual(x, y, best_params);
  bool converged = true;
  // A solution where the correction outweighs the leading term, or d_H sits on
  // its box edge, swaps the roles of the two terms; such solutions are used
  // only if no regular one exists.
  auto regular = [](const Params& p) {
    const double edge = (kMaxDH - kMinDH) * kPinnedFraction;
    return std::abs(p.b) < p.a && p.d_h > kMinDH + edge && p.d_h < kMaxDH - edge;
  };
  bool best_regular = regular(best_params);
  for (double delta0 : kDeltaStarts) {
    const Params start{d1, std::exp(intercept), 0.0, delta0};
    const auto r = nelder_mead(objective, to_free(start), {0.1, 0.02, 0.02, 0.3}, opt);
    const auto p = to_params(r.point);
    const bool is_regular = regular(p);
    if ((is_regular && !best_regular) || (is_regular == best_regular && r.value < best_value)) {
      best_value = r.value;
      best_params = p;
      best_regular = is_regular;
      converged = r.converged;
    }
  }

  fit.d_h = best_params.d_h;
  fit.a = best_params.a;
  fit.b = best_params.b;
  fit.delta = best_params.delta;
  fit.residual = best_value;
  fit.converged = converged;
  fit.delta_at_bound = fit.delta > kMaxDelta * (1.0 - kPinnedFraction) || fit.delta < kMaxDelta * kPinnedFraction;

  // Gauss-Newton standard errors from a finite-difference Jacobian
  std::vector<std::array<double, 4>> jac(x.size());
  const std::array<double, 4> p{fit.d_h, fit.a, fit.b, fit.delta};
  for (std::size_t j = 0; j < 4; ++j) {
    const double h = 1e-6 * std::max(std::abs(p[j]), 1e-3);
    auto up = p, down = p;
    up[j] += h;
    down[j] -= h;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double ratio = std::exp(x[i]);
      const double fu = std::log(std::abs(dh_model(up[0], up[1], up[2], up[3], ratio)));
      const double fd = std::log(std::abs(dh_model(down[0], down[1], down[2], down[3], ratio)));
      jac[i][j] = (fu - fd) / (2.0 * h);
    }
  }
  const auto dof = static_cast<double>(x.size()) - 4.0;
  const auto diag = normal_inverse_diagonal(jac);
  for (std::size_t j = 0; j < 4; ++j)
    fit.sensitivity[j] = dof > 0.0 && !diag.empty() && diag[j] >= 0.0
                             ? std::sqrt(fit.residual / dof * diag[j])
                             : std::numeric_limits<double>::quiet_NaN();
  return fit;
}

BatchEstimate batch_statistics(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("batch_statistics: no values");
  BatchEstimate e;
  e.values.assign(values.begin(), values.end());
  e.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - e.mean) * (v - e.mean);
    e.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return e;
}

}  // namespace feuilletage
