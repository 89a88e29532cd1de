#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

#include "fedo/core/tensor.hpp"

namespace fedo {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Mixes a key path (seed, stream ids, counters) into one 64-bit seed, so
/// that every random draw is addressed by its key rather than by call order.
inline std::uint64_t derive_seed(std::span<const std::uint64_t> keys) {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  for (auto k : keys) h = splitmix64(h ^ splitmix64(k));
  return h;
}
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> keys) {
  return derive_seed(std::span<const std::uint64_t>(keys.begin(), keys.size()));
}

inline Rng make_rng(std::initializer_list<std::uint64_t> keys) { return Rng(derive_seed(keys)); }

inline long uniform_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// Tensor with independent uniform integer entries in [lo, hi].
template <class S>
Tensor<S> random_integer_tensor(int dim, int order, Rng& rng, long lo = -9, long hi = 9) {
  Tensor<S> t(dim, order);
  for (auto& v : t.data()) v = S(uniform_int(rng, lo, hi));
  return t;
}

/// Tensor with independent uniform residues (prime fields only).
template <class F>
Tensor<F> random_field_tensor(int dim, int order, Rng& rng) {
  Tensor<F> t(dim, order);
  std::uniform_int_distribution<std::uint64_t> dist(0, F::modulus - 1);
  for (auto& v : t.data()) v = F::from_raw(dist(rng));
  return t;
}

}  // namespace fedo
