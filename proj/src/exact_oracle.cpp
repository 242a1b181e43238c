#include "symsample/exact_oracle.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "symsample/numeric.hpp"

namespace symsample {

std::vector<double> ExactDistribution::probs() const {
  std::vector<double> p(log_probs.size());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::exp(log_probs[k]);
  return p;
}

ExactDistribution enumerate_distribution(const QuadraticModel& model) {
  const int n = model.size();
  if (n < 1 || n > 20) throw std::invalid_argument("enumeration limited to 1..20 spins");

  const std::uint64_t count = std::uint64_t(1) << n;
  ExactDistribution dist;
  dist.n = n;
  dist.log_probs.assign(std::size_t(count), 0.0);

  // Walk states in Gray-code order: consecutive codes differ in bit ctz(k),
  // so each step is one spin flip with energy delta -2 s_i * local_field_i.
  SpinConfig s = SpinConfig::from_state_id(0, n);
  double energy = model.log_density(s);
  dist.log_probs[0] = energy;
  for (std::uint64_t k = 1; k < count; ++k) {
    const int i = std::countr_zero(k);
    energy -= 2.0 * double(s[i]) * model.local_field(s, i);
    s.set(i, std::int8_t(-s[i]));
    if ((k & 0xFFFu) == 0) energy = model.log_density(s);  // cap drift of the running sum
    const std::uint64_t id = k ^ (k >> 1);
    dist.log_probs[std::size_t(id)] = energy;
  }

  dist.log_partition = log_sum_exp(dist.log_probs);
  for (double& lp : dist.log_probs) lp -= dist.log_partition;
  return dist;
}

double exact_expectation(const ExactDistribution& dist,
                         const std::function<double(const SpinConfig&)>& observable) {
  double acc = 0.0;
  for (std::uint64_t id = 0; id < dist.log_probs.size(); ++id)
    acc += std::exp(dist.log_probs[std::size_t(id)]) *
           observable(SpinConfig::from_state_id(id, dist.n));
  return acc;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("total_variation: size mismatch");
  double acc = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) acc += std::abs(p[k] - q[k]);
  return 0.5 * acc;
}

double kernel_stationarity_check(
    const ExactDistribution& dist,
    const std::function<std::vector<double>(const std::vector<double>&)>& kernel) {
  const std::vector<double> p = dist.probs();
  return total_variation(p, kernel(p));
}

std::vector<double> push_site_heat_bath(const QuadraticModel& model,
                                        const std::vector<double>& p, int site) {
  const int n = model.size();
  if (p.size() != (std::size_t(1) << n)) throw std::invalid_argument("push: size mismatch");
  const std::uint64_t bit = std::uint64_t(1) << site;
  std::vector<double> out(p.size());
  for (std::uint64_t id = 0; id < p.size(); ++id) {
    if (id & bit) continue;  // handle each (down, up) pair once
    const std::uint64_t up = id | bit;
    // The conditional only depends on the other spins, shared by the pair.
    const SpinConfig s = SpinConfig::from_state_id(id, n);
    const double p_up = 1.0 / (1.0 + std::exp(-2.0 * model.local_field(s, site)));
    const double mass = p[std::size_t(id)] + p[std::size_t(up)];
    out[std::size_t(up)] = mass * p_up;
    out[std::size_t(id)] = mass * (1.0 - p_up);
  }
  return out;
}

std::vector<double> push_sweep_heat_bath(const QuadraticModel& model,
                                         const std::vector<double>& p) {
  std::vector<double> cur = p;
  for (int i = 0; i < model.size(); ++i) cur = push_site_heat_bath(model, cur, i);
  return cur;
}

}  // namespace symsample
