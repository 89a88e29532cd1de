#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fedo/jets/polynomial.hpp"
#include "fedo/symplectic/symplectic.hpp"

namespace fedo {

/// Raised when a computed curvature violates the curvature symmetries; this
/// points at an index or sign convention error, not at bad input.
class ConventionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr int kMaxJetDegree = 3;

/// Symplectic connection on R^{2n} with constant form s·ω_std and
/// polynomial lowered Christoffel symbols Γ_{c,ab}, totally symmetric.
/// Raised symbols are Γ^d_{ab} = ω^{dc} Γ_{c,ab}; total symmetry of the
/// lowered symbols is equivalent to torsion-freeness together with ∇ω = 0.
class PolyFedosov {
 public:
  PolyFedosov(int n, int degree, Rational form_scale = Rational(1));
  static PolyFedosov flat(int n) { return PolyFedosov(n, 0); }

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  int degree() const { return degree_; }
  const Rational& form_scale() const { return scale_; }
  const SymplecticForm& form() const { return form_; }
  const std::shared_ptr<const PolySpace>& space() const { return space_; }

  const Poly& gamma(int c, int a, int b) const { return gamma_[flat_index(c, a, b)]; }
  /// Sets Γ_{c,ab} and all its index permutations.
  void set_gamma(int c, int a, int b, const Poly& p);
  bool is_flat() const;

  /// Same Γ^k_{ij} with form λ²ω, so lowered symbols scale by λ².
  PolyFedosov scaled(const Rational& lambda) const;
  /// Pullback along x -> A x for symplectic A.
  PolyFedosov pullback(const Matrix<Rational>& a) const;
  /// Product with the flat symplectic plane, coordinates
  /// (x_1..x_n, x_{n+1}, y_1..y_n, y_{n+1}).
  PolyFedosov product_with_flat() const;

  /// Header "n degree", optional "scale q", then "c a b : e_1 .. e_2n : q"
  /// lines for c <= a <= b (1-based indices).
  std::string serialize() const;
  static PolyFedosov parse(const std::string& text);

  friend bool operator==(const PolyFedosov& a, const PolyFedosov& b) {
    return a.n_ == b.n_ && a.degree_ == b.degree_ && a.scale_ == b.scale_ && a.gamma_ == b.gamma_;
  }

 private:
  std::size_t flat_index(int c, int a, int b) const {
    const auto d = static_cast<std::size_t>(dim());
    return (static_cast<std::size_t>(c) * d + static_cast<std::size_t>(a)) * d + static_cast<std::size_t>(b);
  }

  int n_;
  int degree_;
  Rational scale_;
  SymplecticForm form_;
  std::shared_ptr<const PolySpace> space_;
  std::vector<Poly> gamma_;
};

/// Uniform integer coefficients in [-3, 3] on every monomial of degree
/// <= `degree`, symmetrized over (c, a, b).
PolyFedosov random_fedosov(int n, int degree, std::uint64_t seed);

/// R_{ijkl} = ω_{im} R^m_{jkl} at the origin, with
/// R^i_{jkl} = ∂_k Γ^i_{lj} - ∂_l Γ^i_{kj} + Γ^i_{km} Γ^m_{lj} - Γ^i_{lm} Γ^m_{kj}.
/// Throws ConventionError if the result is not a curvature tensor.
Tensor<Rational> curvature(const PolyFedosov& f);

/// ∇^k R at the origin for k = 0..r; level k has order 4+k with the
/// derivative slots first (outermost derivative in slot 0).
struct JetTensor {
  std::vector<Tensor<Rational>> levels;
  const Tensor<Rational>& operator[](int k) const { return levels.at(static_cast<size_t>(k)); }
  int order() const { return static_cast<int>(levels.size()) - 1; }
};
JetTensor curvature_derivatives(const PolyFedosov& f, int r);

/// K_{ij} = R^k_{ikj} = ω^{km} R_{mikj}.
template <class S>
Tensor<S> ricci(const Tensor<S>& r, const SymplecticForm& w) {
  if (r.order() != 4 || r.dim() != w.dim()) throw ShapeError("ricci expects an order-4 tensor of matching dim");
  const int d = r.dim();
  const auto up = w.upper_as<S>();
  Tensor<S> k(d, 2);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      S acc(0L);
      for (int a = 0; a < d; ++a)
        for (int m = 0; m < d; ++m) {
          const S& u = up.at({a, m});
          if (is_zero(u)) continue;
          acc += u * r.at({m, i, a, j});
        }
      k.at({i, j}) = std::move(acc);
    }
  return k;
}

/// Index map of the product embedding R^{2n} -> R^{2n+2}.
std::vector<int> product_index_map(int n);

/// Restriction of a tensor on the product structure to the original
/// indices (pullback along the embedding at the origin).
template <class S>
Tensor<S> reduce(const Tensor<S>& high, int n) {
  if (high.order() > 0 && high.dim() != 2 * n + 2) throw ShapeError("reduce: tensor is not in dimension 2n+2");
  const auto map = product_index_map(n);
  Tensor<S> low(2 * n, high.order());
  std::vector<int> src(static_cast<size_t>(high.order()));
  for_each_index(2 * n, high.order(), [&](std::span<const int> idx, std::size_t flat) {
    for (size_t s = 0; s < idx.size(); ++s) src[s] = map[static_cast<size_t>(idx[s])];
    low[flat] = high(src);
  });
  return low;
}

}  // namespace fedo
