#ifndef SYMSAMPLE_SYMMETRY_HPP
#define SYMSAMPLE_SYMMETRY_HPP

#include <string>
#include <vector>

#include "symsample/lattice.hpp"
#include "symsample/spin_model.hpp"

namespace symsample {

// Group element g of G = {e, g}: a node permutation combined with global spin
// negation, acting on configurations by (gs)_{perm(i)} = -s_i. The permutation
// is an involution (g^2 = e), fixed points allowed.
class SignedInvolution {
 public:
  SignedInvolution(std::vector<int> perm, bool negate_spins = true);

  int size() const { return int(perm_.size()); }
  int map(int i) const { return perm_[std::size_t(i)]; }
  bool negates() const { return negate_spins_; }
  const std::vector<int>& perm() const { return perm_; }

 private:
  std::vector<int> perm_;
  bool negate_spins_;
};

SpinConfig apply(const SignedInvolution& action, const SpinConfig& s);

// Transpose double-flip on a square lattice: (row, col) -> (col, row), spins negated.
SignedInvolution build_double_flip(const Lattice& lat);

enum class PairingNorm { linf, l2 };

// Geometric pairing heuristic for rectangular lattices: embed nodes in
// [-1,1]^2, scan in decreasing distance to the origin, greedily match each
// unpaired node j with the unpaired i whose swapped coordinates lie nearest
// to j. Always yields a full involution; equals the transpose when n1 == n2.
SignedInvolution build_paired_flip(const Lattice& lat, PairingNorm norm = PairingNorm::linf);

// Embedding used by the pairing heuristic (exposed for exports and tests).
struct EmbeddedPoint {
  double x;
  double y;
};
EmbeddedPoint embed_node(const Lattice& lat, int i);

// max_i and mean_i of ||ybar_i - xbar_{g(i)}|| under the given norm; the
// pairing quality metric (0 for an exact transpose).
struct PairingQuality {
  double max = 0.0;
  double mean = 0.0;
};
PairingQuality pairing_quality(const Lattice& lat, const SignedInvolution& action, PairingNorm norm);

struct DefectStats {
  double max = 0.0;
  double mean = 0.0;
  int probes = 0;
};

// max/mean of |E(gs) - E(s)| over the probe configs; quantifies how
// approximate the symmetry is (zero for an exact one).
DefectStats symmetry_defect(const QuadraticModel& model, const SignedInvolution& action,
                            const std::vector<SpinConfig>& probes);

// Orbit-averaged reference: E_R(s) = (E(s) + E(gs)) / 2, which is exactly
// invariant under the action. Realized as coupling (J + P^T J P)/2 and field
// (h - P h)/2 at the same beta.
struct OrbitAveragedModel {
  QuadraticModel reference;
  SignedInvolution action;
  DefectStats defect_stats;  // defect of the *target* model under the action
};

OrbitAveragedModel build_reference(const QuadraticModel& model, const SignedInvolution& action,
                                   int probe_count = 256, std::uint64_t probe_seed = 0x0bb17);

// Plain-text (i, g(i)) pairs, one line per node, with the node's embedding
// coordinates appended for plotting.
void save_pairing(const Lattice& lat, const SignedInvolution& action, const std::string& path);

}  // namespace symsample

#endif
