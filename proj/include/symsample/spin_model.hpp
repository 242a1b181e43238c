#ifndef SYMSAMPLE_SPIN_MODEL_HPP
#define SYMSAMPLE_SPIN_MODEL_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symsample/lattice.hpp"
#include "symsample/rng.hpp"

namespace symsample {

// Configuration of +/-1 spins indexed by lattice nodes.
class SpinConfig {
 public:
  SpinConfig() = default;
  explicit SpinConfig(std::vector<std::int8_t> spins);
  static SpinConfig all_up(int n);
  static SpinConfig uniform_random(int n, RngStream& rng);

  int size() const { return int(spins_.size()); }
  std::int8_t operator[](int i) const { return spins_[i]; }
  void set(int i, std::int8_t v);
  double mean_spin() const;

  // State id for exhaustive enumeration: bit i set iff spin i is +1.
  std::uint64_t state_id() const;
  static SpinConfig from_state_id(std::uint64_t id, int n);

  bool operator==(const SpinConfig&) const = default;

 private:
  std::vector<std::int8_t> spins_;
};

struct WeightedEdge {
  int i;
  int j;
  double w;
  bool operator==(const WeightedEdge&) const = default;
};

// Unnormalized log density E(s) = beta * (1/2 s^T J s + h^T s), with the
// symmetric coupling J given by an undirected weighted edge list (zero
// diagonal). Immutable after construction.
class QuadraticModel {
 public:
  QuadraticModel(double beta, std::vector<double> field, std::vector<WeightedEdge> edges);

  int size() const { return int(field_.size()); }
  double beta() const { return beta_; }
  const std::vector<double>& field() const { return field_; }
  // Canonical edge list: i < j, sorted, duplicates merged, exact zeros dropped.
  const std::vector<WeightedEdge>& edges() const { return edges_; }

  double log_density(const SpinConfig& s) const;
  // beta * (sum_j J_ij s_j + h_i); i's own spin never enters (zero diagonal).
  double local_field(const SpinConfig& s, int i) const;

  std::span<const int> neighbors(int i) const;
  std::span<const double> neighbor_weights(int i) const;
  int max_degree() const;

  bool operator==(const QuadraticModel&) const = default;

 private:
  double beta_;
  std::vector<double> field_;
  std::vector<WeightedEdge> edges_;
  std::vector<int> adj_offset_;
  std::vector<int> adj_index_;
  std::vector<double> adj_weight_;
};

// Example model builders (square / rectangular Ising with boundary forcing).
//
// Side conventions: left/right are the boundary columns, top/bottom the
// boundary rows. In build_example1 the four corners carry zero field, so the
// noise-free model is exactly symmetric under the double-flip. In
// build_example2 the corners count as left/right nodes.
QuadraticModel build_example1(int n, double beta, double noise_scale, std::uint64_t seed);
QuadraticModel build_example2(int n1, int n2, double beta);

// Plain-text model file (key-value header, then one line per node with its
// field value and weighted neighbor list). Lossless for doubles.
void save_model(const QuadraticModel& model, int n1, int n2, const std::string& path);
struct LoadedModel {
  QuadraticModel model;
  int n1;
  int n2;
};
LoadedModel load_model(const std::string& path);

}  // namespace symsample

#endif
