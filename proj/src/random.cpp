#include "feuilletage/random.hpp"

#include <stdexcept>

namespace feuilletage {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  return mix64(state);
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t key, StreamProvenance provenance) : provenance_(provenance) {
  std::uint64_t sm = key;
  for (auto& s : state_) s = splitmix64(sm);
  // all-zero state is the one fixed point of xoshiro
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

std::uint64_t RngStream::next() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

RngStream derive_stream(MasterSeed seed, std::uint64_t realization, std::string_view role) {
  const std::uint64_t tag = role_hash(role);
  std::uint64_t key = mix64(seed.value ^ 0x6a09e667f3bcc909ull);
  key = mix64(key ^ mix64(realization + 0xbb67ae8584caa73bull));
  key = mix64(key ^ mix64(tag + 0x3c6ef372fe94f82bull));
  return RngStream(key, StreamProvenance{seed.value, realization, tag});
}

MasterSeed derive_seed(MasterSeed seed, std::uint64_t salt) {
  return MasterSeed{mix64(mix64(seed.value ^ 0xa54ff53a5f1d36f1ull) ^ mix64(salt + 0x510e527fade682d1ull))};
}

std::uint64_t uniform_int(RngStream& stream, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("uniform_int: empty range");
  // Lemire's multiply-shift with rejection
  unsigned __int128 product = static_cast<unsigned __int128>(stream.next()) * m;
  auto low = static_cast<std::uint64_t>(product);
  if (low < m) {
    const std::uint64_t threshold = (0 - m) % m;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(stream.next()) * m;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

}  // namespace feuilletage
