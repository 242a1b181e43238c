#include "symsample/lattice.hpp"

#include <stdexcept>

namespace symsample {

Lattice::Lattice(int n1, int n2) : n1_(n1), n2_(n2) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("Lattice: sizes must be positive");
  bonds_.reserve(std::size_t(n1) * (n2 - 1) + std::size_t(n2) * (n1 - 1));
  for (int r = 0; r < n1; ++r) {
    for (int c = 0; c + 1 < n2; ++c) bonds_.emplace_back(node(r, c), node(r, c + 1));
  }
  for (int r = 0; r + 1 < n1; ++r) {
    for (int c = 0; c < n2; ++c) bonds_.emplace_back(node(r, c), node(r + 1, c));
  }
}

}  // namespace symsample
