#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "feuilletage/histograms.hpp"

namespace feuilletage {

/// Contiguous integer range [lo, hi] around the argmax of a reference density
/// where the density stays >= decile * max.
struct FitWindow {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  double decile = 1.0;
};

FitWindow decile_window(const Density& reference, double decile);

/// Piecewise-linear interpolation on the integer grid, 0 outside [0, size-1].
double interpolate(const Density& rho, double y);

/// k^-1 * rho((x + s) / k - s). Throws std::invalid_argument for k <= 0.
double rescaled_eval(const Density& rho, double k, double s, double x);

/// Squared deviation summed over the integer points of the window.
double collapse_residual(const Density& rho, const Density& reference, const FitWindow& window, double k, double s);

struct KFit {
  std::int64_t n = 0;
  double k = 1.0;
  double s = 0.0;
  double residual = 0.0;
  bool converged = true;
};

/// Free fit of (k, s). s is reported as 0 when k == 1, where it has no effect.
KFit fit_k_s(const Density& rho, const Density& reference, const FitWindow& window, std::int64_t n = 0);

/// Fit of k alone with the shift held at `s`.
KFit fit_k_fixed_shift(const Density& rho, const Density& reference, const FitWindow& window, double s,
                       std::int64_t n = 0);

struct SizedDensity {
  std::int64_t n = 0;
  Density density;
};

struct Collapse {
  std::vector<KFit> free_fits;  // pass 1: (k_n, s_n)
  double mean_shift = 0.0;      // mean of s_n
  std::vector<KFit> fits;       // pass 2: k_n with s = mean_shift
};

/// Pass 1 fits (k_n, s_n) for every density, pass 2 refits k_n with the mean
/// shift. Needs at least two densities.
Collapse two_pass_collapse(std::span<const SizedDensity> densities, const Density& reference, const FitWindow& window);

struct KPoint {
  std::int64_t n = 0;
  double k = 1.0;
};

/// k_n = (n/n0)^(-1/d_H) * (a + b (n/n0)^(-delta)).
struct DHFit {
  double d_h = 0.0;
  double a = 1.0;
  double b = 0.0;
  double delta = 0.0;
  double residual = 0.0;
  /// Gauss-Newton standard errors of (d_H, a, b, delta); NaN when there are
  /// no residual degrees of freedom or the normal matrix is singular.
  std::array<double, 4> sensitivity{};
  double power_law_d_h = 0.0;  // stage 1 (b = 0) estimate
  bool delta_at_bound = false;
  bool converged = true;
};

double dh_model(double d_h, double a, double b, double delta, double ratio);
inline double dh_model(const DHFit& fit, double ratio) { return dh_model(fit.d_h, fit.a, fit.b, fit.delta, ratio); }

inline constexpr double kMinDH = 1.0;
inline constexpr double kMaxDH = 32.0;
inline constexpr double kMaxDelta = 3.0;

/// Least squares in log k. Stage 1 is a log-log linear regression (b = 0),
/// stage 2 refines all four parameters with bounded Nelder-Mead from several
/// starting exponents delta. The point (n0, 1) is added unless present.
/// Throws std::invalid_argument for fewer than 4 distinct n or a span below
/// two octaves.
DHFit fit_dh(std::span<const KPoint> points, std::int64_t n0);

struct BatchEstimate {
  std::vector<double> values;
  double mean = 0.0;
  std::optional<double> std;  // unbiased, absent for a single batch
};

BatchEstimate batch_statistics(std::span<const double> values);

}  // namespace feuilletage
