#ifndef SYMSAMPLE_RNG_HPP
#define SYMSAMPLE_RNG_HPP

#include <array>
#include <cstdint>

namespace symsample {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
// 128-bit counter, 64-bit key, 10 rounds. Every draw is a pure function of
// (key, counter), which is what makes sweep updates replayable: a draw can be
// addressed by (epoch, slot) instead of by execution order.
std::array<std::uint32_t, 4> philox4x32_10(const std::array<std::uint32_t, 4>& counter,
                                           const std::array<std::uint32_t, 2>& key);

// One random stream. Streams constructed with distinct (master_seed, stream_id)
// pairs are statistically independent; identical pairs give identical draws.
//
// Two kinds of draws share one stream without colliding:
//   - sequential draws (uniform/next_u64), backed by an internal call counter;
//   - indexed draws, addressed by (epoch, slot) where epoch comes from
//     begin_epoch() and slot is typically a node id.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  // Sequential interface.
  std::uint64_t next_u64();
  double uniform();                       // [0, 1), 53-bit mantissa
  std::uint64_t uniform_below(std::uint64_t n);  // {0, ..., n-1}
  double gaussian();                      // standard normal (Box-Muller)

  // Indexed interface. Draws depend only on (stream identity, epoch, slot),
  // never on the order in which they are requested.
  std::uint64_t begin_epoch();  // returns a fresh epoch id
  double uniform_indexed(std::uint64_t epoch, std::uint64_t slot) const;

  // Derive an independent child stream (e.g. one per sample index).
  RngStream substream(std::uint64_t id) const;

 private:
  RngStream() = default;
  std::uint64_t raw(std::uint64_t a, std::uint64_t b) const;

  std::array<std::uint32_t, 2> key_{};
  std::uint64_t seq_ = 0;
  std::uint64_t epoch_ = 0;
};

}  // namespace symsample

#endif
