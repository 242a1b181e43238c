#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <vector>

#include "symsample/rng.hpp"
#include "symsample/symmetry.hpp"

using namespace symsample;

TEST_CASE("transpose action on small configs") {
  const Lattice lat(2, 2);
  const SignedInvolution flip = build_double_flip(lat);

  // Uniform config: permutation invisible, negation flips everything.
  SpinConfig all_up = SpinConfig::all_up(4);
  const SpinConfig flipped = apply(flip, all_up);
  for (int i = 0; i < 4; ++i) CHECK(flipped[i] == -1);

  // (0,1) <-> (1,0); diagonal nodes are fixed points whose spins negate.
  CHECK(flip.map(0) == 0);
  CHECK(flip.map(3) == 3);
  CHECK(flip.map(1) == 2);
  CHECK(flip.map(2) == 1);

  RngStream rng(21, 0);
  for (int t = 0; t < 100; ++t) {
    const SpinConfig s = SpinConfig::uniform_random(4, rng);
    CHECK(apply(flip, apply(flip, s)) == s);
  }
}

TEST_CASE("diagonal of the transpose is fixed and negated") {
  const Lattice lat(5, 5);
  const SignedInvolution flip = build_double_flip(lat);
  RngStream rng(22, 0);
  const SpinConfig s = SpinConfig::uniform_random(25, rng);
  const SpinConfig t = apply(flip, s);
  for (int d = 0; d < 5; ++d) {
    const int i = lat.node(d, d);
    CHECK(flip.map(i) == i);
    CHECK(t[i] == -s[i]);
  }
  CHECK_THROWS_AS(build_double_flip(Lattice(3, 4)), std::invalid_argument);
}

TEST_CASE("involution validation") {
  CHECK_THROWS_AS(SignedInvolution({1, 2, 0}), std::invalid_argument);  // 3-cycle
  CHECK_THROWS_AS(SignedInvolution({0, 5}), std::invalid_argument);     // out of range
  CHECK_NOTHROW(SignedInvolution({1, 0, 2}));
}

TEST_CASE("transpose is a graph automorphism of the square lattice") {
  const Lattice lat(32, 32);
  const SignedInvolution flip = build_double_flip(lat);
  std::set<std::pair<int, int>> bonds;
  for (const auto& [i, j] : lat.bonds()) bonds.insert({i, j});
  for (const auto& [i, j] : lat.bonds()) {
    int a = flip.map(i);
    int b = flip.map(j);
    if (a > b) std::swap(a, b);
    CHECK(bonds.count({a, b}) == 1);
  }
}

TEST_CASE("paired flip equals the transpose on squares") {
  for (const int n : {3, 5, 8}) {
    const Lattice lat(n, n);
    const SignedInvolution exact = build_double_flip(lat);
    for (const PairingNorm norm : {PairingNorm::linf, PairingNorm::l2}) {
      const SignedInvolution paired = build_paired_flip(lat, norm);
      CHECK(paired.perm() == exact.perm());
      const PairingQuality q = pairing_quality(lat, paired, norm);
      CHECK(q.max == 0.0);
    }
  }
}

TEST_CASE("paired flip on the 30x32 lattice") {
  const Lattice lat(30, 32);
  const SignedInvolution paired = build_paired_flip(lat, PairingNorm::linf);
  // Full involution over all nodes (also enforced by the constructor).
  for (int i = 0; i < lat.node_count(); ++i) CHECK(paired.map(paired.map(i)) == i);
  // Imperfect but tight pairing: nonzero quality, within a couple of lattice
  // steps (the grid steps are 2/29 and 2/31 on the [-1,1]^2 embedding).
  const PairingQuality q = pairing_quality(lat, paired, PairingNorm::linf);
  CHECK(q.max > 0.0);
  CHECK(q.max < 2.0 * (2.0 / 29.0));
  CHECK(q.mean <= q.max);
  CHECK(q.mean < 2.0 / 29.0);
}

TEST_CASE("orbit-averaged reference: exact symmetry and two-call identity") {
  RngStream rng(23, 0);

  const auto check_model = [&](const QuadraticModel& model, const SignedInvolution& action) {
    const OrbitAveragedModel ref = build_reference(model, action);
    for (int t = 0; t < 200; ++t) {
      const SpinConfig s = SpinConfig::uniform_random(model.size(), rng);
      const SpinConfig gs = apply(action, s);
      const double er = ref.reference.log_density(s);
      // Exact invariance under the action.
      CHECK(std::abs(ref.reference.log_density(gs) - er) <= 1e-10 * (1.0 + std::abs(er)));
      // Orbit average identity against two direct evaluations.
      const double avg = 0.5 * (model.log_density(s) + model.log_density(gs));
      CHECK(er == doctest::Approx(avg).epsilon(1e-12));
    }
  };

  const QuadraticModel noisy = build_example1(8, 0.8, 0.5, 31);
  check_model(noisy, build_double_flip(Lattice(8, 8)));
  const QuadraticModel rect = build_example2(6, 8, 0.8);
  check_model(rect, build_paired_flip(Lattice(6, 8), PairingNorm::linf));
}

TEST_CASE("noise-free target is already its own reference") {
  const QuadraticModel model = build_example1(8, 0.8, 0.0, 1);
  const OrbitAveragedModel ref = build_reference(model, build_double_flip(Lattice(8, 8)));
  CHECK(ref.reference == model);  // bit-exact: automorphism coupling, antisymmetric field
  CHECK(ref.defect_stats.max == 0.0);
}

TEST_CASE("reference of an automorphism-symmetric graph keeps the coupling") {
  const QuadraticModel model = build_example1(8, 0.8, 0.5, 9);
  const OrbitAveragedModel ref = build_reference(model, build_double_flip(Lattice(8, 8)));
  CHECK(ref.reference.edges() == model.edges());
  // Field becomes the antisymmetrized forcing (h - Ph)/2.
  const SignedInvolution& g = ref.action;
  for (int i = 0; i < model.size(); ++i) {
    const double expected =
        0.5 * (model.field()[std::size_t(i)] - model.field()[std::size_t(g.map(i))]);
    CHECK(ref.reference.field()[std::size_t(i)] == expected);
  }
}

TEST_CASE("example 2 reference has a few extra edges") {
  const QuadraticModel model = build_example2(6, 8, 0.8);
  const SignedInvolution action = build_paired_flip(Lattice(6, 8), PairingNorm::linf);
  const OrbitAveragedModel ref = build_reference(model, action);
  CHECK(ref.reference.edges().size() > model.edges().size());
  CHECK(ref.defect_stats.max > 0.0);
}

TEST_CASE("symmetry defect statistics") {
  RngStream rng(24, 0);
  const SignedInvolution action = build_double_flip(Lattice(8, 8));

  std::vector<SpinConfig> probes;
  for (int k = 0; k < 1000; ++k) probes.push_back(SpinConfig::uniform_random(64, rng));

  const QuadraticModel exact = build_example1(8, 0.8, 0.0, 1);
  const DefectStats none = symmetry_defect(exact, action, probes);
  CHECK(none.max < 1e-10);

  const QuadraticModel noisy = build_example1(8, 0.8, 0.5, 1);
  const DefectStats some = symmetry_defect(noisy, action, probes);
  CHECK(some.max > 0.0);
  CHECK(some.mean > 0.0);
  CHECK(some.mean <= some.max);
  CHECK(some.probes == 1000);

  // The reference built from the noisy model has (numerically) no defect.
  const OrbitAveragedModel ref = build_reference(noisy, action);
  const DefectStats healed = symmetry_defect(ref.reference, action, probes);
  CHECK(healed.max < 1e-10);

  CHECK_THROWS_AS(symmetry_defect(noisy, action, {}), std::invalid_argument);
}

TEST_CASE("pairing export lists every node with its partner") {
  const Lattice lat(4, 3);
  const SignedInvolution action = build_paired_flip(lat, PairingNorm::l2);
  const std::string path = "symsample_pairing_test.txt";
  save_pairing(lat, action, path);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  int lines = 0;
  int i = 0, g = 0;
  double ax = 0, ay = 0, bx = 0, by = 0;
  while (in >> i >> g >> ax >> ay >> bx >> by) {
    CHECK(i == lines);
    CHECK(action.map(i) == g);
    ++lines;
  }
  CHECK(lines == lat.node_count());
  std::remove(path.c_str());
}
