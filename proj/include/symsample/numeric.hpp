#ifndef SYMSAMPLE_NUMERIC_HPP
#define SYMSAMPLE_NUMERIC_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

namespace symsample {

// log(sum_i exp(x_i)), stable under large magnitudes.
inline double log_sum_exp(std::span<const double> xs) {
  const double m = *std::max_element(xs.begin(), xs.end());
  if (!std::isfinite(m)) return m;  // all -inf, or a NaN/inf poisoning the set
  double acc = 0.0;
  for (const double x : xs) acc += std::exp(x - m);
  return m + std::log(acc);
}

inline double mean(std::span<const double> xs) {
  double acc = 0.0;
  for (const double x : xs) acc += x;
  return acc / double(xs.size());
}

// Population variance (divide by N).
inline double variance(std::span<const double> xs) {
  const double mu = mean(xs);
  double acc = 0.0;
  for (const double x : xs) acc += (x - mu) * (x - mu);
  return acc / double(xs.size());
}

// 17 significant digits: round-trips IEEE doubles exactly in text form.
inline std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace symsample

#endif
