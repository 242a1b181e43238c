#include "symsample/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace symsample {

InterpolationCurve InterpolationCurve::linear() { return InterpolationCurve(1.0, "linear"); }

InterpolationCurve InterpolationCurve::power(double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("power curve needs gamma > 0");
  return InterpolationCurve(gamma, "power:" + std::to_string(gamma));
}

InterpolationCurve InterpolationCurve::parse(const std::string& name) {
  if (name == "linear") return linear();
  if (name.rfind("power:", 0) == 0) {
    std::size_t used = 0;
    const double gamma = std::stod(name.substr(6), &used);
    if (used != name.size() - 6) throw std::invalid_argument("bad curve spec: " + name);
    return power(gamma);
  }
  throw std::invalid_argument("unknown curve: " + name);
}

double InterpolationCurve::operator()(double t) const {
  if (t < 0.0 || t > 1.0) throw std::invalid_argument("curve argument outside [0,1]");
  if (t == 0.0) return 0.0;
  if (t == 1.0) return 1.0;
  return gamma_ == 1.0 ? t : std::pow(t, gamma_);
}

std::string InterpolationCurve::name() const { return name_; }

std::string to_string(PathKind kind) {
  switch (kind) {
    case PathKind::ais_reference: return "ais_reference";
    case PathKind::tt_reference: return "tt_reference";
    case PathKind::ais_temperature: return "ais_temperature";
    case PathKind::tt_temperature: return "tt_temperature";
  }
  return "?";
}

namespace {

QuadraticModel uniform_model(const QuadraticModel& like) {
  return QuadraticModel(like.beta(), std::vector<double>(std::size_t(like.size()), 0.0), {});
}

// far - base as a quadratic form; the model constructor drops exact zeros, so
// this is empty whenever far and base coincide edge-for-edge and field-for-field.
QuadraticModel difference_model(const QuadraticModel& base, const QuadraticModel& far) {
  std::vector<WeightedEdge> edges = far.edges();
  for (const WeightedEdge& e : base.edges()) edges.push_back({e.i, e.j, -e.w});
  std::vector<double> field(std::size_t(base.size()));
  for (int i = 0; i < base.size(); ++i)
    field[std::size_t(i)] = far.field()[std::size_t(i)] - base.field()[std::size_t(i)];
  return QuadraticModel(base.beta(), std::move(field), std::move(edges));
}

std::vector<WeightedEdge> support_union(const QuadraticModel& a, const QuadraticModel& b) {
  std::vector<WeightedEdge> edges = a.edges();
  edges.insert(edges.end(), b.edges().begin(), b.edges().end());
  return edges;
}

}  // namespace

PathFamily::PathFamily(PathKind kind, QuadraticModel base, QuadraticModel far, int L,
                       InterpolationCurve curve)
    : kind_(kind),
      base_(std::move(base)),
      far_(std::move(far)),
      diff_(difference_model(base_, far_)),
      L_(L),
      curve_(std::move(curve)),
      union_support_(support_union(base_, far_)),
      cache_(std::size_t(L > 0 ? L - 1 : 0)) {
  if (L_ < 1) throw std::invalid_argument("path needs L >= 1");
  if (base_.size() != far_.size()) throw std::invalid_argument("path endpoint size mismatch");
  if (base_.beta() != far_.beta()) throw std::invalid_argument("path endpoint beta mismatch");
  // Strict monotonicity of the curve on the level grid.
  double prev = 0.0;
  for (int l = 1; l <= L_; ++l) {
    const double c = curve_(double(l) / double(L_));
    if (!(c > prev)) throw std::invalid_argument("curve not strictly monotone on the level grid");
    prev = c;
  }
}

PathFamily PathFamily::ais_reference(QuadraticModel target, QuadraticModel reference, int L,
                                     InterpolationCurve curve) {
  return PathFamily(PathKind::ais_reference, std::move(reference), std::move(target), L,
                    std::move(curve));
}

PathFamily PathFamily::tt_reference(QuadraticModel target, QuadraticModel reference, int L,
                                    InterpolationCurve curve) {
  return PathFamily(PathKind::tt_reference, std::move(target), std::move(reference), L,
                    std::move(curve));
}

PathFamily PathFamily::ais_temperature(QuadraticModel target, int L, InterpolationCurve curve) {
  QuadraticModel base = uniform_model(target);
  return PathFamily(PathKind::ais_temperature, std::move(base), std::move(target), L,
                    std::move(curve));
}

PathFamily PathFamily::tt_temperature(QuadraticModel target, int L, InterpolationCurve curve) {
  QuadraticModel far = uniform_model(target);
  return PathFamily(PathKind::tt_temperature, std::move(target), std::move(far), L,
                    std::move(curve));
}

bool PathFamily::is_ais() const {
  return kind_ == PathKind::ais_reference || kind_ == PathKind::ais_temperature;
}

bool PathFamily::is_tt() const { return !is_ais(); }

int PathFamily::levels() const { return is_ais() ? L_ : 2 * L_; }

const QuadraticModel& PathFamily::target() const {
  // The target sits at level 0 for TT paths and at level L for AIS-reference;
  // for the temperature baselines it is the non-uniform end.
  switch (kind_) {
    case PathKind::ais_reference:
    case PathKind::ais_temperature: return far_;
    case PathKind::tt_reference:
    case PathKind::tt_temperature: return base_;
  }
  return base_;
}

const QuadraticModel& PathFamily::midpoint() const {
  if (!is_tt()) throw std::logic_error("midpoint is defined for palindromic paths only");
  return far_;
}

double PathFamily::coef(int l) const {
  if (l < 0 || l > levels()) throw std::out_of_range("level index out of range");
  const int m = is_tt() ? std::min(l, 2 * L_ - l) : l;
  return curve_(double(m) / double(L_));
}

const QuadraticModel& PathFamily::level_model(int l) const {
  if (l < 0 || l > levels()) throw std::out_of_range("level index out of range");
  const int m = is_tt() ? std::min(l, 2 * L_ - l) : l;  // palindrome: E_l = E_{2L-l}
  if (m == 0) return base_;
  if (m == L_) return far_;

  std::lock_guard<std::mutex> lock(cache_mutex_);
  std::unique_ptr<const QuadraticModel>& slot = cache_[std::size_t(m - 1)];
  if (!slot) {
    const double c = coef(m);
    std::vector<WeightedEdge> edges = base_.edges();
    for (const WeightedEdge& e : diff_.edges()) edges.push_back({e.i, e.j, c * e.w});
    std::vector<double> field(std::size_t(base_.size()));
    for (int i = 0; i < base_.size(); ++i)
      field[std::size_t(i)] =
          base_.field()[std::size_t(i)] + c * diff_.field()[std::size_t(i)];
    slot = std::make_unique<const QuadraticModel>(base_.beta(), std::move(field),
                                                  std::move(edges));
  }
  return *slot;
}

double PathFamily::level_log_density(int l, const SpinConfig& s) const {
  return level_model(l).log_density(s);
}

double PathFamily::level_increment(int l, const SpinConfig& s) const {
  if (l < 1 || l > levels()) throw std::out_of_range("level index out of range");
  const double dc = coef(l) - coef(l - 1);
  if (dc == 0.0) return 0.0;
  return dc * diff_.log_density(s);
}

}  // namespace symsample
