#include "symsample/spin_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "symsample/numeric.hpp"

namespace symsample {

SpinConfig::SpinConfig(std::vector<std::int8_t> spins) : spins_(std::move(spins)) {
  for (const std::int8_t v : spins_) {
    if (v != 1 && v != -1) throw std::invalid_argument("SpinConfig: entries must be +1 or -1");
  }
}

SpinConfig SpinConfig::all_up(int n) {
  SpinConfig cfg;
  cfg.spins_.assign(std::size_t(n), std::int8_t{1});
  return cfg;
}

SpinConfig SpinConfig::uniform_random(int n, RngStream& rng) {
  SpinConfig cfg;
  cfg.spins_.resize(std::size_t(n));
  for (int i = 0; i < n; ++i) cfg.spins_[i] = rng.uniform() < 0.5 ? std::int8_t{-1} : std::int8_t{1};
  return cfg;
}

void SpinConfig::set(int i, std::int8_t v) {
  spins_[std::size_t(i)] = v;
}

double SpinConfig::mean_spin() const {
  long sum = 0;
  for (const std::int8_t v : spins_) sum += v;
  return double(sum) / double(spins_.size());
}

std::uint64_t SpinConfig::state_id() const {
  std::uint64_t id = 0;
  for (std::size_t i = 0; i < spins_.size(); ++i) {
    if (spins_[i] > 0) id |= std::uint64_t{1} << i;
  }
  return id;
}

SpinConfig SpinConfig::from_state_id(std::uint64_t id, int n) {
  SpinConfig cfg;
  cfg.spins_.resize(std::size_t(n));
  for (int i = 0; i < n; ++i) cfg.spins_[i] = (id >> i) & 1 ? std::int8_t{1} : std::int8_t{-1};
  return cfg;
}

QuadraticModel::QuadraticModel(double beta, std::vector<double> field,
                               std::vector<WeightedEdge> edges)
    : beta_(beta), field_(std::move(field)) {
  const int n = int(field_.size());
  if (n == 0) throw std::invalid_argument("QuadraticModel: empty field vector");
  if (!(beta > 0.0) && beta != 0.0) throw std::invalid_argument("QuadraticModel: beta must be >= 0");

  // Canonicalize: i < j, sorted, duplicates merged, exact zeros dropped.
  for (auto& e : edges) {
    if (e.i == e.j) throw std::invalid_argument("QuadraticModel: self-coupling (nonzero diagonal)");
    if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n)
      throw std::invalid_argument("QuadraticModel: edge index out of range");
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges.begin(), edges.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) {
              return a.i != b.i ? a.i < b.i : a.j < b.j;
            });
  edges_.reserve(edges.size());
  for (const auto& e : edges) {
    if (!edges_.empty() && edges_.back().i == e.i && edges_.back().j == e.j) {
      edges_.back().w += e.w;
    } else {
      edges_.push_back(e);
    }
  }
  std::erase_if(edges_, [](const WeightedEdge& e) { return e.w == 0.0; });

  // CSR adjacency for local-field evaluation.
  adj_offset_.assign(std::size_t(n) + 1, 0);
  for (const auto& e : edges_) {
    ++adj_offset_[std::size_t(e.i) + 1];
    ++adj_offset_[std::size_t(e.j) + 1];
  }
  for (int i = 0; i < n; ++i) adj_offset_[std::size_t(i) + 1] += adj_offset_[std::size_t(i)];
  adj_index_.resize(std::size_t(adj_offset_[std::size_t(n)]));
  adj_weight_.resize(adj_index_.size());
  std::vector<int> cursor(adj_offset_.begin(), adj_offset_.end() - 1);
  for (const auto& e : edges_) {
    adj_index_[std::size_t(cursor[std::size_t(e.i)])] = e.j;
    adj_weight_[std::size_t(cursor[std::size_t(e.i)]++)] = e.w;
    adj_index_[std::size_t(cursor[std::size_t(e.j)])] = e.i;
    adj_weight_[std::size_t(cursor[std::size_t(e.j)]++)] = e.w;
  }
}

double QuadraticModel::log_density(const SpinConfig& s) const {
  if (s.size() != size()) throw std::invalid_argument("log_density: dimension mismatch");
  double bond = 0.0;
  for (const auto& e : edges_) bond += e.w * double(s[e.i] * s[e.j]);
  double field = 0.0;
  for (int i = 0; i < size(); ++i) field += field_[std::size_t(i)] * double(s[i]);
  return beta_ * (bond + field);
}

double QuadraticModel::local_field(const SpinConfig& s, int i) const {
  if (s.size() != size()) throw std::invalid_argument("local_field: dimension mismatch");
  if (i < 0 || i >= size()) throw std::out_of_range("local_field: node index out of range");
  double acc = field_[std::size_t(i)];
  const int begin = adj_offset_[std::size_t(i)];
  const int end = adj_offset_[std::size_t(i) + 1];
  for (int k = begin; k < end; ++k) {
    acc += adj_weight_[std::size_t(k)] * double(s[adj_index_[std::size_t(k)]]);
  }
  return beta_ * acc;
}

std::span<const int> QuadraticModel::neighbors(int i) const {
  const int begin = adj_offset_[std::size_t(i)];
  const int end = adj_offset_[std::size_t(i) + 1];
  return {adj_index_.data() + begin, std::size_t(end - begin)};
}

std::span<const double> QuadraticModel::neighbor_weights(int i) const {
  const int begin = adj_offset_[std::size_t(i)];
  const int end = adj_offset_[std::size_t(i) + 1];
  return {adj_weight_.data() + begin, std::size_t(end - begin)};
}

int QuadraticModel::max_degree() const {
  int d = 0;
  for (int i = 0; i < size(); ++i) {
    d = std::max(d, adj_offset_[std::size_t(i) + 1] - adj_offset_[std::size_t(i)]);
  }
  return d;
}

namespace {

std::vector<WeightedEdge> unit_bond_edges(const Lattice& lat) {
  std::vector<WeightedEdge> edges;
  edges.reserve(lat.bonds().size());
  for (const auto& [i, j] : lat.bonds()) edges.push_back({i, j, 1.0});
  return edges;
}

enum class Side { left_right, top_bottom, corner, interior };

Side side_of(const Lattice& lat, int i) {
  const int r = lat.row_of(i);
  const int c = lat.col_of(i);
  const bool lr = (c == 0 || c == lat.n2() - 1);
  const bool tb = (r == 0 || r == lat.n1() - 1);
  if (lr && tb) return Side::corner;
  if (lr) return Side::left_right;
  if (tb) return Side::top_bottom;
  return Side::interior;
}

}  // namespace

QuadraticModel build_example1(int n, double beta, double noise_scale, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("build_example1: n must be >= 3");
  const Lattice lat(n, n);
  // Dedicated forcing stream: the field realization depends on `seed` only,
  // so AIS and TT runs can share one model by sharing the seed.
  RngStream forcing(seed, 0xF0C1);
  std::vector<double> h(std::size_t(lat.node_count()), 0.0);
  for (int i = 0; i < lat.node_count(); ++i) {
    switch (side_of(lat, i)) {
      case Side::left_right:
        h[std::size_t(i)] = -1.0 + noise_scale * forcing.gaussian();
        break;
      case Side::top_bottom:
        h[std::size_t(i)] = 1.0 + noise_scale * forcing.gaussian();
        break;
      case Side::corner:
        // Corners are fixed points (or swap partners) of the double-flip, so
        // any +/-1 assignment would break the noise-free exact symmetry.
        h[std::size_t(i)] = 0.0;
        break;
      case Side::interior:
        break;
    }
  }
  return QuadraticModel(beta, std::move(h), unit_bond_edges(lat));
}

QuadraticModel build_example2(int n1, int n2, double beta) {
  if (n1 < 3 || n2 < 3) throw std::invalid_argument("build_example2: sizes must be >= 3");
  const Lattice lat(n1, n2);
  // Corners carry no field, as in build_example1: on a square lattice they sit
  // on the transposition axes, where any +/-1 value would break the exact
  // symmetry. The shift c rebalances the remaining side nodes to zero mean.
  const long n_lr = 2L * (n1 - 2);
  const long n_tb = 2L * (n2 - 2);
  const double c = double(n_lr - n_tb) / double(n_lr + n_tb);
  std::vector<double> h(std::size_t(lat.node_count()), 0.0);
  for (int i = 0; i < lat.node_count(); ++i) {
    switch (side_of(lat, i)) {
      case Side::left_right:
        h[std::size_t(i)] = -1.0 + c;
        break;
      case Side::top_bottom:
        h[std::size_t(i)] = 1.0 + c;
        break;
      case Side::corner:
      case Side::interior:
        break;
    }
  }
  return QuadraticModel(beta, std::move(h), unit_bond_edges(lat));
}

void save_model(const QuadraticModel& model, int n1, int n2, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_model: cannot open " + path);
  out << "# symsample model file\n";
  out << "version = 1\n";
  out << "n1 = " << n1 << "\n";
  out << "n2 = " << n2 << "\n";
  out << "beta = " << format_g17(model.beta()) << "\n";
  out << "nodes = " << model.size() << "\n";
  out << "# node lines: <index> <field> <degree> [<neighbor> <weight>]...\n";
  for (int i = 0; i < model.size(); ++i) {
    const auto nbrs = model.neighbors(i);
    const auto ws = model.neighbor_weights(i);
    out << i << " " << format_g17(model.field()[std::size_t(i)]) << " " << nbrs.size();
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      out << " " << nbrs[k] << " " << format_g17(ws[k]);
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("save_model: write failed for " + path);
}

namespace {

void parse_header_line(const std::string& line, std::map<std::string, std::string>& kv) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) throw std::runtime_error("model file: malformed header line: " + line);
  auto trim = [](std::string v) {
    const auto a = v.find_first_not_of(" \t");
    const auto b = v.find_last_not_of(" \t");
    return a == std::string::npos ? std::string{} : v.substr(a, b - a + 1);
  };
  kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
}

}  // namespace

LoadedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_model: cannot open " + path);

  std::map<std::string, std::string> header;
  std::string line;
  std::vector<std::string> node_lines;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.find('=') != std::string::npos && node_lines.empty()) {
      parse_header_line(line, header);
    } else {
      node_lines.push_back(line);
    }
  }
  for (const char* key : {"version", "n1", "n2", "beta", "nodes"}) {
    if (!header.count(key)) throw std::runtime_error(std::string("model file: missing header key: ") + key);
  }
  if (header["version"] != "1") throw std::runtime_error("model file: unsupported version " + header["version"]);
  const int n1 = std::stoi(header["n1"]);
  const int n2 = std::stoi(header["n2"]);
  const double beta = std::stod(header["beta"]);
  const int nodes = std::stoi(header["nodes"]);
  if (int(node_lines.size()) != nodes)
    throw std::runtime_error("model file: expected " + std::to_string(nodes) + " node lines, got " +
                             std::to_string(node_lines.size()));

  std::vector<double> h(std::size_t(nodes), 0.0);
  // (i, j) -> weight as stated on i's line; verified symmetric below.
  std::map<std::pair<int, int>, double> half_edges;
  std::vector<bool> seen(std::size_t(nodes), false);
  for (const auto& nl : node_lines) {
    std::istringstream ss(nl);
    int idx = -1, degree = -1;
    double field = 0.0;
    if (!(ss >> idx >> field >> degree)) throw std::runtime_error("model file: malformed node line: " + nl);
    if (idx < 0 || idx >= nodes) throw std::runtime_error("model file: node index out of range: " + nl);
    if (seen[std::size_t(idx)]) throw std::runtime_error("model file: duplicate node line for index " + std::to_string(idx));
    seen[std::size_t(idx)] = true;
    h[std::size_t(idx)] = field;
    for (int k = 0; k < degree; ++k) {
      int j = -1;
      double w = 0.0;
      if (!(ss >> j >> w)) throw std::runtime_error("model file: truncated neighbor list: " + nl);
      if (j < 0 || j >= nodes || j == idx) throw std::runtime_error("model file: bad neighbor index: " + nl);
      half_edges[{idx, j}] = w;
    }
  }

  std::vector<WeightedEdge> edges;
  for (const auto& [key, w] : half_edges) {
    const auto [i, j] = key;
    const auto mirror = half_edges.find({j, i});
    if (mirror == half_edges.end() || mirror->second != w)
      throw std::runtime_error("model file: coupling not symmetric at (" + std::to_string(i) + ", " +
                               std::to_string(j) + ")");
    if (i < j) edges.push_back({i, j, w});
  }
  return LoadedModel{QuadraticModel(beta, std::move(h), std::move(edges)), n1, n2};
}

}  // namespace symsample
