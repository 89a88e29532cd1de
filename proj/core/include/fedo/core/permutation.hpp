#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

namespace fedo {

/// A permutation of {0..k-1} in one-line notation: p[i] is the image of i.
using Permutation = std::vector<int>;

inline Permutation identity_permutation(int k) {
  Permutation p(static_cast<size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline int permutation_sign(std::span<const int> p) {
  std::vector<char> seen(p.size(), 0);
  int sign = 1;
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    size_t len = 0;
    for (size_t j = i; !seen[j]; j = static_cast<size_t>(p[j])) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

inline int cycle_count(std::span<const int> p) {
  std::vector<char> seen(p.size(), 0);
  int cycles = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (size_t j = i; !seen[j]; j = static_cast<size_t>(p[j])) seen[j] = 1;
  }
  return cycles;
}

/// (a*b)(i) = a(b(i)).
inline Permutation compose(std::span<const int> a, std::span<const int> b) {
  Permutation r(b.size());
  for (size_t i = 0; i < b.size(); ++i) r[i] = a[static_cast<size_t>(b[i])];
  return r;
}

inline Permutation inverse(std::span<const int> p) {
  Permutation r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[static_cast<size_t>(p[i])] = static_cast<int>(i);
  return r;
}

/// All k! permutations in lexicographic order.
inline std::vector<Permutation> all_permutations(int k) {
  std::vector<Permutation> out;
  Permutation p = identity_permutation(k);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Lexicographic rank of a permutation of {0..k-1} (Lehmer code).
inline std::size_t permutation_rank(std::span<const int> p) {
  const size_t k = p.size();
  std::size_t rank = 0;
  std::uint32_t used = 0;
  std::size_t fact = 1;
  for (size_t i = 2; i < k; ++i) fact *= i;
  for (size_t i = 0; i < k; ++i) {
    const auto v = static_cast<std::uint32_t>(p[i]);
    const auto smaller_unused =
        static_cast<std::size_t>(std::popcount((~used) & ((std::uint32_t{1} << v) - 1)));
    rank += smaller_unused * fact;
    used |= std::uint32_t{1} << v;
    if (k - 1 - i > 0) fact /= (k - 1 - i);
  }
  return rank;
}

inline std::size_t factorial(int k) {
  std::size_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::size_t>(i);
  return f;
}

/// Calls f(combination) for every strictly increasing k-subset of {0..n-1}.
template <class F>
void for_each_combination(int n, int k, F&& f) {
  if (k > n || k < 0) return;
  std::vector<int> c(static_cast<size_t>(k));
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    f(std::span<const int>(c));
    int i = k - 1;
    while (i >= 0 && c[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++c[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j) c[static_cast<size_t>(j)] = c[static_cast<size_t>(j - 1)] + 1;
  }
}

}  // namespace fedo
