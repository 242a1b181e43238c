#ifndef SYMSAMPLE_SCHEDULE_HPP
#define SYMSAMPLE_SCHEDULE_HPP

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "symsample/spin_model.hpp"

namespace symsample {

// Test/diagnostic hook for path walkers: called as observer(l, s) with the
// state at which the level-l weight increment is evaluated.
using LevelObserver = std::function<void(int, const SpinConfig&)>;

// Strictly monotone c : [0,1] -> [0,1] with c(0) = 0 and c(1) = 1 exactly.
class InterpolationCurve {
 public:
  static InterpolationCurve linear();
  static InterpolationCurve power(double gamma);  // c(t) = t^gamma, gamma > 0
  static InterpolationCurve parse(const std::string& name);  // "linear" | "power:<gamma>"

  double operator()(double t) const;
  std::string name() const;

 private:
  InterpolationCurve(double gamma, std::string name) : gamma_(gamma), name_(std::move(name)) {}
  double gamma_;
  std::string name_;
};

enum class PathKind { ais_reference, tt_reference, ais_temperature, tt_temperature };

std::string to_string(PathKind kind);

// Indexed family of log densities E_l along a continuation path, represented
// as E_l(s) = E_base(s) + coef(l) * D(s) with D = E_far - E_base:
//
//   ais_reference:   base = reference, far = target,  coef(l) = c(l/L), l = 0..L
//   ais_temperature: base = uniform,   far = target,  coef(l) = c(l/L)
//   tt_reference:    base = target,    far = reference, coef(l) = c(min(l,2L-l)/L), l = 0..2L
//   tt_temperature:  base = target,    far = uniform,   coef palindromic as above
//
// "uniform" is the zero-coupling zero-field model (log density identically 0).
// Level 0, L and (for TT) 2L are exact copies of the input models, interior
// levels are materialized lazily and cached. level_increment uses the
// equivalent form (coef(l) - coef(l-1)) * D(s), which vanishes identically
// when target and reference coincide.
class PathFamily {
 public:
  static PathFamily ais_reference(QuadraticModel target, QuadraticModel reference, int L,
                                  InterpolationCurve curve);
  static PathFamily tt_reference(QuadraticModel target, QuadraticModel reference, int L,
                                 InterpolationCurve curve);
  static PathFamily ais_temperature(QuadraticModel target, int L, InterpolationCurve curve);
  static PathFamily tt_temperature(QuadraticModel target, int L, InterpolationCurve curve);

  PathKind kind() const { return kind_; }
  bool is_ais() const;
  bool is_tt() const;
  int half_levels() const { return L_; }           // L
  int levels() const;                              // L for AIS, 2L for TT
  int size() const { return base_.size(); }        // node count

  const QuadraticModel& target() const;
  const QuadraticModel& midpoint() const;          // TT only: the level-L model

  double coef(int l) const;                        // interpolation coefficient at level l
  const QuadraticModel& level_model(int l) const;  // cached; TT maps l > L to 2L - l
  double level_log_density(int l, const SpinConfig& s) const;
  double level_increment(int l, const SpinConfig& s) const;  // E_l(s) - E_{l-1}(s)

  // Union of base and far coupling supports; every level's support is inside it.
  const std::vector<WeightedEdge>& union_support() const { return union_support_; }

 private:
  PathFamily(PathKind kind, QuadraticModel base, QuadraticModel far, int L,
             InterpolationCurve curve);

  PathKind kind_;
  QuadraticModel base_;  // level-0 model
  QuadraticModel far_;   // level-L model (AIS endpoint / TT midpoint)
  QuadraticModel diff_;  // D = far - base, evaluated for increments
  int L_;
  InterpolationCurve curve_;
  std::vector<WeightedEdge> union_support_;
  mutable std::vector<std::unique_ptr<const QuadraticModel>> cache_;  // interior levels
  mutable std::mutex cache_mutex_;
};

}  // namespace symsample

#endif
