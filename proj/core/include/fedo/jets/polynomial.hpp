#pragma once

#include <map>
#include <memory>
#include <span>
#include <vector>

#include "fedo/core/linalg.hpp"
#include "fedo/core/scalar.hpp"

namespace fedo {

/// Monomials in `vars` variables of total degree <= `degree`, graded order
/// (all degree-0 monomials, then degree 1, ...), with derivative and
/// product tables.
class PolySpace {
 public:
  PolySpace(int vars, int degree);
  static std::shared_ptr<const PolySpace> get(int vars, int degree);

  int vars() const { return vars_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(exps_.size()); }
  /// Number of monomials of degree <= k.
  int count(int k) const { return k < 0 ? 0 : (k >= degree_ ? size() : starts_[static_cast<size_t>(k + 1)]); }
  int monomial_degree(int m) const { return degs_[static_cast<size_t>(m)]; }
  const std::vector<int>& exponents(int m) const { return exps_[static_cast<size_t>(m)]; }
  /// Index of an exponent vector, or -1 if its degree exceeds the cap.
  int index(std::span<const int> exps) const;
  /// ∂_v of monomial m = factor · monomial target (factor 0 if none).
  int deriv_target(int v, int m) const { return dtarget_[static_cast<size_t>(v)][static_cast<size_t>(m)]; }
  int deriv_factor(int v, int m) const { return dfactor_[static_cast<size_t>(v)][static_cast<size_t>(m)]; }
  /// Index of the product monomial, or -1 beyond the cap.
  int product(int a, int b) const { return mult_[static_cast<size_t>(a) * exps_.size() + static_cast<size_t>(b)]; }

 private:
  int vars_, degree_;
  std::vector<std::vector<int>> exps_;
  std::vector<int> degs_;
  std::vector<int> starts_;
  std::map<std::vector<int>, int> lookup_;
  std::vector<std::vector<int>> dtarget_, dfactor_;
  std::vector<int> mult_;
};

/// Truncated polynomial with rational coefficients over a PolySpace.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::shared_ptr<const PolySpace> sp) : sp_(std::move(sp)), c_(static_cast<size_t>(sp_->size())) {}

  const PolySpace& space() const { return *sp_; }
  const std::shared_ptr<const PolySpace>& space_ptr() const { return sp_; }
  Rational& operator[](int m) { return c_[static_cast<size_t>(m)]; }
  const Rational& operator[](int m) const { return c_[static_cast<size_t>(m)]; }
  const Rational& constant() const { return c_[0]; }
  bool is_zero() const;
  /// Largest degree carrying a nonzero coefficient, -1 for zero.
  int actual_degree() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// acc += s · a · b keeping only monomials of degree <= keep.
  static void fma(Poly& acc, const Rational& s, const Poly& a, const Poly& b, int keep);
  /// ∂_v, result keeps degree <= keep.
  Poly derivative(int v, int keep) const;
  /// Zero out monomials of degree > keep.
  Poly truncated(int keep) const;
  /// p(M x): substitutes x_i -> Σ_j M(i, j) x_j.
  Poly linear_substitution(const Matrix<Rational>& m) const;
  /// Moves variables into a larger space: variable i becomes var_map[i].
  Poly embedded(std::shared_ptr<const PolySpace> target, std::span<const int> var_map) const;

 private:
  std::shared_ptr<const PolySpace> sp_;
  std::vector<Rational> c_;
};

}  // namespace fedo
