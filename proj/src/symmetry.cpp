#include "symsample/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "symsample/numeric.hpp"
#include "symsample/rng.hpp"

namespace symsample {

SignedInvolution::SignedInvolution(std::vector<int> perm, bool negate_spins)
    : perm_(std::move(perm)), negate_spins_(negate_spins) {
  const int n = int(perm_.size());
  for (int i = 0; i < n; ++i) {
    const int j = perm_[std::size_t(i)];
    if (j < 0 || j >= n) throw std::invalid_argument("involution: index out of range");
    if (perm_[std::size_t(j)] != i) throw std::invalid_argument("involution: perm(perm(i)) != i");
  }
}

SpinConfig apply(const SignedInvolution& action, const SpinConfig& s) {
  if (action.size() != s.size()) throw std::invalid_argument("apply: dimension mismatch");
  SpinConfig t = s;
  const std::int8_t sign = action.negates() ? -1 : 1;
  for (int i = 0; i < s.size(); ++i) t.set(action.map(i), std::int8_t(sign * s[i]));
  return t;
}

SignedInvolution build_double_flip(const Lattice& lat) {
  if (!lat.is_square()) throw std::invalid_argument("double flip needs a square lattice");
  std::vector<int> perm(std::size_t(lat.node_count()));
  for (int i = 0; i < lat.node_count(); ++i)
    perm[std::size_t(i)] = lat.node(lat.col_of(i), lat.row_of(i));
  return SignedInvolution(std::move(perm));
}

EmbeddedPoint embed_node(const Lattice& lat, int i) {
  // Map col 0..n2-1 onto x in [-1,1] and row 0..n1-1 onto y in [-1,1].
  const double x = -1.0 + 2.0 * double(lat.col_of(i)) / double(lat.n2() - 1);
  const double y = -1.0 + 2.0 * double(lat.row_of(i)) / double(lat.n1() - 1);
  return {x, y};
}

namespace {

double point_norm(double dx, double dy, PairingNorm norm) {
  dx = std::abs(dx);
  dy = std::abs(dy);
  return norm == PairingNorm::linf ? std::max(dx, dy) : std::hypot(dx, dy);
}

}  // namespace

SignedInvolution build_paired_flip(const Lattice& lat, PairingNorm norm) {
  const int n = lat.node_count();
  const std::size_t count = std::size_t(n);
  std::vector<EmbeddedPoint> x(count);  // node embeddings
  std::vector<EmbeddedPoint> y(count);  // coordinate swaps: y_i = swap(x_i)
  for (int i = 0; i < n; ++i) {
    x[std::size_t(i)] = embed_node(lat, i);
    y[std::size_t(i)] = {x[std::size_t(i)].y, x[std::size_t(i)].x};
  }

  // Scan order: decreasing distance to the origin; ties by node index.
  std::vector<int> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double da = point_norm(x[std::size_t(a)].x, x[std::size_t(a)].y, norm);
    const double db = point_norm(x[std::size_t(b)].x, x[std::size_t(b)].y, norm);
    if (da != db) return da > db;
    return a < b;
  });

  std::vector<int> perm(std::size_t(n), -1);
  for (const int j : order) {
    if (perm[std::size_t(j)] >= 0) continue;
    // Greedy match: the unpaired i whose swapped point lies nearest node j.
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (perm[std::size_t(i)] >= 0) continue;
      const double d = point_norm(y[std::size_t(i)].x - x[std::size_t(j)].x,
                                  y[std::size_t(i)].y - x[std::size_t(j)].y, norm);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    perm[std::size_t(j)] = best;
    perm[std::size_t(best)] = j;
  }
  return SignedInvolution(std::move(perm));
}

PairingQuality pairing_quality(const Lattice& lat, const SignedInvolution& action,
                               PairingNorm norm) {
  if (action.size() != lat.node_count())
    throw std::invalid_argument("pairing_quality: dimension mismatch");
  double max_d = 0.0;
  double sum_d = 0.0;
  for (int i = 0; i < action.size(); ++i) {
    const EmbeddedPoint xi = embed_node(lat, i);
    const EmbeddedPoint xg = embed_node(lat, action.map(i));
    // y_i = swap(x_i) is where i's partner should sit.
    const double d = point_norm(xi.y - xg.x, xi.x - xg.y, norm);
    max_d = std::max(max_d, d);
    sum_d += d;
  }
  return {max_d, sum_d / double(action.size())};
}

DefectStats symmetry_defect(const QuadraticModel& model, const SignedInvolution& action,
                            const std::vector<SpinConfig>& probes) {
  if (probes.empty()) throw std::invalid_argument("symmetry_defect: empty probe set");
  DefectStats stats;
  stats.probes = int(probes.size());
  double sum = 0.0;
  for (const SpinConfig& s : probes) {
    const double d = std::abs(model.log_density(apply(action, s)) - model.log_density(s));
    stats.max = std::max(stats.max, d);
    sum += d;
  }
  stats.mean = sum / double(probes.size());
  return stats;
}

OrbitAveragedModel build_reference(const QuadraticModel& model, const SignedInvolution& action,
                                   int probe_count, std::uint64_t probe_seed) {
  if (action.size() != model.size())
    throw std::invalid_argument("build_reference: dimension mismatch");

  // E(gs) = beta * (1/2 s^T (P^T J P) s - (Ph)^T s) with (Ph)_i = h_{perm(i)},
  // so the orbit average halves each edge and adds its permuted image, and
  // the field becomes (h - Ph)/2. The model constructor merges duplicates, so
  // an automorphism-invariant coupling survives unchanged.
  std::vector<WeightedEdge> edges;
  edges.reserve(2 * model.edges().size());
  for (const WeightedEdge& e : model.edges()) {
    edges.push_back({e.i, e.j, 0.5 * e.w});
    edges.push_back({action.map(e.i), action.map(e.j), 0.5 * e.w});
  }
  std::vector<double> field(std::size_t(model.size()));
  for (int i = 0; i < model.size(); ++i)
    field[std::size_t(i)] = 0.5 * (model.field()[std::size_t(i)] -
                                   model.field()[std::size_t(action.map(i))]);

  OrbitAveragedModel out{QuadraticModel(model.beta(), std::move(field), std::move(edges)),
                         action,
                         {}};

  if (probe_count > 0) {
    RngStream rng(probe_seed, 0x5de7);
    std::vector<SpinConfig> probes;
    probes.reserve(std::size_t(probe_count));
    for (int k = 0; k < probe_count; ++k)
      probes.push_back(SpinConfig::uniform_random(model.size(), rng));
    out.defect_stats = symmetry_defect(model, action, probes);
  }
  return out;
}

void save_pairing(const Lattice& lat, const SignedInvolution& action, const std::string& path) {
  if (action.size() != lat.node_count())
    throw std::invalid_argument("save_pairing: dimension mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "# i g(i) x_i y_i x_g(i) y_g(i)\n";
  for (int i = 0; i < action.size(); ++i) {
    const EmbeddedPoint a = embed_node(lat, i);
    const EmbeddedPoint b = embed_node(lat, action.map(i));
    out << i << ' ' << action.map(i) << ' ' << format_g17(a.x) << ' ' << format_g17(a.y) << ' '
        << format_g17(b.x) << ' ' << format_g17(b.y) << '\n';
  }
  if (!out.good()) throw std::runtime_error("write failed: " + path);
}

}  // namespace symsample
