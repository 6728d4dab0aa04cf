#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace seprate {

/// Identifies one reproducible random stream: a master seed plus a replicate index.
struct Seed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

/// Derives an independent master seed from `master` and a tag (splitmix64 finaliser).
std::uint64_t derive_master(std::uint64_t master, std::uint64_t tag);

/// Philox4x32-10 block function. Pure: equal (counter, key) give equal output.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based generator bound to one Seed.
///
/// The key is the master seed, the upper half of the counter is the stream
/// index, and the lower half is a block index that advances as draws are
/// consumed. Draws therefore depend only on (master, stream, position), which
/// is what lets replicate loops run on any number of threads and still agree
/// bit-for-bit with a serial run.
class CounterRng {
 public:
  explicit CounterRng(Seed seed);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller; pairs are cached.
  double normal();
  void fill_normal(std::span<double> out);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace seprate
