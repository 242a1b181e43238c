#include "symsample/rng.hpp"

#include <cmath>

namespace symsample {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& x, const std::array<std::uint32_t, 2>& k) {
  const std::uint64_t p0 = std::uint64_t(kPhiloxM0) * x[0];
  const std::uint64_t p1 = std::uint64_t(kPhiloxM1) * x[2];
  const std::uint32_t y0 = std::uint32_t(p1 >> 32) ^ x[1] ^ k[0];
  const std::uint32_t y1 = std::uint32_t(p1);
  const std::uint32_t y2 = std::uint32_t(p0 >> 32) ^ x[3] ^ k[1];
  const std::uint32_t y3 = std::uint32_t(p0);
  x = {y0, y1, y2, y3};
}

// Domain tags keep the counter spaces of the different draw kinds disjoint.
constexpr std::uint64_t kDomainSequential = ~std::uint64_t{0};
constexpr std::uint64_t kDomainSequential2 = ~std::uint64_t{1};

inline std::array<std::uint32_t, 4> split64(std::uint64_t a, std::uint64_t b) {
  return {std::uint32_t(a), std::uint32_t(a >> 32), std::uint32_t(b), std::uint32_t(b >> 32)};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(const std::array<std::uint32_t, 4>& counter,
                                           const std::array<std::uint32_t, 2>& key) {
  std::array<std::uint32_t, 4> x = counter;
  std::array<std::uint32_t, 2> k = key;
  for (int round = 0; round < 10; ++round) {
    philox_round(x, k);
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return x;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id) {
  const auto out = philox4x32_10(split64(stream_id, 0x73796d73616d7031ull),
                                 {std::uint32_t(master_seed), std::uint32_t(master_seed >> 32)});
  key_ = {out[0], out[1]};
}

std::uint64_t RngStream::raw(std::uint64_t a, std::uint64_t b) const {
  const auto out = philox4x32_10(split64(a, b), key_);
  return std::uint64_t(out[0]) | (std::uint64_t(out[1]) << 32);
}

std::uint64_t RngStream::next_u64() { return raw(seq_++, kDomainSequential); }

double RngStream::uniform() {
  return double(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::uniform_below(std::uint64_t n) {
  // Multiply-shift; bias is O(2^-64), far below anything observable here.
  const unsigned __int128 wide = (unsigned __int128)next_u64() * n;
  return std::uint64_t(wide >> 64);
}

double RngStream::gaussian() {
  // Box-Muller; one value per call keeps the draw sequence simple to reason about.
  double u1 = uniform();
  const double u2 = uniform();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

std::uint64_t RngStream::begin_epoch() { return ++epoch_; }

double RngStream::uniform_indexed(std::uint64_t epoch, std::uint64_t slot) const {
  return double(raw(epoch, slot) >> 11) * 0x1.0p-53;
}

RngStream RngStream::substream(std::uint64_t id) const {
  const auto out = philox4x32_10(split64(id, kDomainSequential2), key_);
  RngStream child;
  child.key_ = {out[0], out[1]};
  return child;
}

}  // namespace symsample
