#include "fedo/core/linalg.hpp"

#include <cmath>

namespace fedo {

std::optional<Rational> rational_reconstruct(std::uint64_t residue, std::uint64_t prime) {
  // Extended Euclid on (prime, residue), stopped once the remainder drops
  // below sqrt(prime/2).
  using i128 = __int128;
  const auto bound = static_cast<i128>(std::sqrt(static_cast<long double>(prime) / 2.0L));
  i128 r0 = prime, r1 = residue % prime;
  i128 t0 = 0, t1 = 1;
  while (r1 > bound) {
    const i128 q = r0 / r1;
    const i128 r2 = r0 - q * r1;
    const i128 t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  i128 num = r1, den = t1;
  if (den == 0) return std::nullopt;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (den > bound) return std::nullopt;
  auto to_mpz = [](i128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    mpz_class z = static_cast<unsigned long>(u >> 64);
    z <<= 64;
    z += static_cast<unsigned long>(u & ~std::uint64_t{0});
    return neg ? mpz_class(-z) : z;
  };
  const mpq_class q(to_mpz(num), to_mpz(den));
  Rational result(q);
  // Reject lifts that do not reduce back to the residue (non-coprime case).
  if (mpz_class(gcd(to_mpz(den), mpz_class(static_cast<unsigned long>(prime)))) != 1) return std::nullopt;
  return result;
}

}  // namespace fedo
