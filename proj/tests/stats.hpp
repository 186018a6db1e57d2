#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

// Upper-tail p-value of Pearson's statistic against equal expected counts.
inline double chi_square_uniform_p(const std::vector<std::uint64_t>& observed) {
  double total = 0.0;
  for (auto o : observed) total += static_cast<double>(o);
  const double expected = total / static_cast<double>(observed.size());
  double stat = 0.0;
  for (auto o : observed) stat += (static_cast<double>(o) - expected) * (static_cast<double>(o) - expected) / expected;
  boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

// |observed - n p| within `sigmas` binomial standard deviations.
inline bool within_sigma(std::uint64_t observed, std::uint64_t trials, double p, double sigmas = 3.0) {
  const double mean = static_cast<double>(trials) * p;
  const double sd = std::sqrt(static_cast<double>(trials) * p * (1.0 - p));
  return std::abs(static_cast<double>(observed) - mean) <= sigmas * sd;
}
