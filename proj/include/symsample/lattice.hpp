#ifndef SYMSAMPLE_LATTICE_HPP
#define SYMSAMPLE_LATTICE_HPP

#include <utility>
#include <vector>

namespace symsample {

// Rectangular nearest-neighbor lattice with open boundary, in matrix order:
// n1 = number of rows (height), n2 = number of columns (width).
// Node (row, col) has index row * n2 + col.
class Lattice {
 public:
  Lattice(int n1, int n2);

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int node_count() const { return n1_ * n2_; }
  bool is_square() const { return n1_ == n2_; }

  int node(int row, int col) const { return row * n2_ + col; }
  int row_of(int i) const { return i / n2_; }
  int col_of(int i) const { return i % n2_; }

  // Unordered nearest-neighbor pairs (i < j), horizontal then vertical.
  const std::vector<std::pair<int, int>>& bonds() const { return bonds_; }

 private:
  int n1_;
  int n2_;
  std::vector<std::pair<int, int>> bonds_;
};

}  // namespace symsample

#endif
