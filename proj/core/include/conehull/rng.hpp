#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace conehull {

using PhiloxBlock = std::array<std::uint64_t, 4>;
using PhiloxKey = std::array<std::uint64_t, 2>;

// Philox4x64-10 bijection (Salmon et al.), bit-compatible with Random123 and
// numpy's Philox for the same counter/key.
PhiloxBlock philox4x64(PhiloxBlock counter, PhiloxKey key);

// Counter-based stream. The key is (seed, stream); block k is philox4x64 of the
// counter {k, 0, 0, 0}, k = 1, 2, ... Nothing depends on platform entropy or on
// which thread draws from the stream.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return key_[0]; }
  std::uint64_t stream_id() const { return key_[1]; }

  std::uint64_t next_u64();
  result_type operator()() { return next_u64(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  double uniform();       // [0, 1)
  double uniform_open();  // (0, 1)
  double normal();
  double exponential();
  std::uint64_t uniform_int(std::uint64_t n);  // [0, n)
  std::uint64_t poisson(double mean);

  // Independent child stream, deterministic in (this stream's key, tag).
  RngStream split(std::uint64_t tag) const;

 private:
  PhiloxKey key_;
  std::uint64_t counter_ = 0;
  PhiloxBlock block_{};
  int pos_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// 64-bit FNV-1a, used to derive stream ids from experiment tags.
std::uint64_t fnv1a64(const char* s);

}  // namespace conehull
