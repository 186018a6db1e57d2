#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>

namespace feuilletage {

/// Campaign-level seed. Every stream of a campaign is derived from it.
struct MasterSeed {
  std::uint64_t value = 0;
};

/// Provenance of a stream, kept for diagnostics.
struct StreamProvenance {
  std::uint64_t seed = 0;
  std::uint64_t realization = 0;
  std::uint64_t role = 0;  // hash of the role tag
};

/// xoshiro256** keyed by (seed, realization, role). Period 2^256 - 1.
///
/// A stream is a value type; copying it duplicates the sequence. Campaign code
/// derives one stream per (realization, role) and never shares it across
/// workers.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t key, StreamProvenance provenance = {});

  std::uint64_t next();
  result_type operator()() { return next(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  const StreamProvenance& provenance() const { return provenance_; }

 private:
  std::uint64_t state_[4];
  StreamProvenance provenance_;
};

std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t mix64(std::uint64_t x);

/// FNV-1a, used to turn role tags into key material.
constexpr std::uint64_t role_hash(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

RngStream derive_stream(MasterSeed seed, std::uint64_t realization, std::string_view role);

/// Seed for a sub-campaign (e.g. one system size) derived from the master seed.
MasterSeed derive_seed(MasterSeed seed, std::uint64_t salt);

/// Unbiased integer in [0, m). m == 0 throws std::invalid_argument.
std::uint64_t uniform_int(RngStream& stream, std::uint64_t m);

/// Fisher-Yates.
template <class T>
void shuffle(RngStream& stream, std::span<T> seq) {
  for (std::size_t i = seq.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_int(stream, i));
    using std::swap;
    swap(seq[i - 1], seq[j]);
  }
}

}  // namespace feuilletage
