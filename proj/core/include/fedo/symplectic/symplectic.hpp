#pragma once

#include <cstdint>

#include "fedo/core/contract.hpp"
#include "fedo/core/forms.hpp"
#include "fedo/core/linalg.hpp"
#include "fedo/core/tensor.hpp"

namespace fedo {

/// Nondegenerate antisymmetric bilinear form ω_{ab} with cached inverse
/// ω^{ab}, normalized so that ω^{ab} ω_{bc} = δ^a_c.
class SymplecticForm {
 public:
  /// Throws ShapeError if `omega` is not an antisymmetric nonsingular matrix.
  explicit SymplecticForm(Tensor<Rational> omega);

  int dim() const { return omega_.dim(); }
  int half_dim() const { return omega_.dim() / 2; }
  const Tensor<Rational>& lower() const { return omega_; }
  const Tensor<Rational>& upper() const { return inverse_; }
  Matrix<Rational> matrix() const;

  template <class S>
  Tensor<S> lower_as() const {
    return tensor_cast<S>(omega_);
  }
  template <class S>
  Tensor<S> upper_as() const {
    return tensor_cast<S>(inverse_);
  }

  /// The scalar multiple c·ω.
  SymplecticForm scaled(const Rational& c) const;

  friend bool operator==(const SymplecticForm& a, const SymplecticForm& b) { return a.omega_ == b.omega_; }

 private:
  Tensor<Rational> omega_;
  Tensor<Rational> inverse_;
};

/// Standard model on coordinates (x_1..x_n, y_1..y_n): ω(e_i, e_{n+i}) = +1.
SymplecticForm standard_form(int n);

/// ω^{ab} as an order-2 tensor.
inline const Tensor<Rational>& inverse_form(const SymplecticForm& w) { return w.upper(); }

/// result(..a..) = Σ_d M(a, d) · T(..d..) on the given slot.
template <class S>
Tensor<S> contract_slot(const Tensor<S>& t, int slot, const Tensor<S>& m) {
  if (slot < 0 || slot >= t.order()) throw ShapeError("slot out of range");
  if (m.order() != 2 || m.dim() != t.dim()) throw ShapeError("slot transform dimension mismatch");
  const int dim = t.dim();
  const std::size_t stride = t.stride(slot);
  const std::size_t block = stride * static_cast<std::size_t>(dim);
  Tensor<S> r(dim, t.order());
  for (std::size_t base = 0; base < t.size(); base += block)
    for (std::size_t inner = 0; inner < stride; ++inner)
      for (int a = 0; a < dim; ++a) {
        S acc(0L);
        for (int d = 0; d < dim; ++d) {
          const S& c = m[static_cast<std::size_t>(a) * static_cast<std::size_t>(dim) + static_cast<std::size_t>(d)];
          if (is_zero(c)) continue;
          acc += c * t[base + static_cast<std::size_t>(d) * stride + inner];
        }
        r[base + static_cast<std::size_t>(a) * stride + inner] = std::move(acc);
      }
  return r;
}

/// (raise T)^{..a..} = ω^{ad} T_{..d..} on one slot.
template <class S>
Tensor<S> raise_slot(const Tensor<S>& t, int slot, const SymplecticForm& w) {
  if (t.dim() != w.dim()) throw ShapeError("raise: dimension mismatch");
  return contract_slot(t, slot, w.upper_as<S>());
}

/// (lower T)_{..a..} = T^{..d..} ω_{da} on one slot.
template <class S>
Tensor<S> lower_slot(const Tensor<S>& t, int slot, const SymplecticForm& w) {
  if (t.dim() != w.dim()) throw ShapeError("lower: dimension mismatch");
  const Tensor<S> om = w.lower_as<S>();
  return contract_slot(t, slot, swap_slots(om, 0, 1));
}

template <class S>
Tensor<S> raise_first(const Tensor<S>& t, const SymplecticForm& w) {
  return raise_slot(t, 0, w);
}

/// Raises each listed slot in turn, left to right.
template <class S>
Tensor<S> raise_slots(Tensor<S> t, std::span<const int> slots, const SymplecticForm& w) {
  for (int s : slots) t = raise_slot(t, s, w);
  return t;
}

/// ⟨big, small⟩: raise every slot of `small` and contract into the leading
/// slots of `big`. Orders must be 2k+p and 2k.
template <class S>
Tensor<S> pair_forms(const Tensor<S>& big, const Tensor<S>& small, const SymplecticForm& w) {
  if (small.order() > big.order()) throw ShapeError("pair_forms: small form has larger order");
  if (small.order() % 2 != 0) throw ShapeError("pair_forms: small form must have even order");
  const auto all = identity_permutation(small.order());
  const Tensor<S> up = raise_slots(small, all, w);
  ContractionPlan plan;
  plan.inputs.push_back(all);
  std::vector<Label> big_labels = all;
  for (int s = small.order(); s < big.order(); ++s) {
    big_labels.push_back(s);
    plan.output.push_back(s);
  }
  plan.inputs.push_back(big_labels);
  const std::vector<Tensor<S>> factors{up, big};
  return contract<S>(plan, factors);
}

/// Sparse variant of pair_forms for forms whose dense expansion is large.
template <class S>
Form<S> pair_forms(const Form<S>& big, const Form<S>& small, const SymplecticForm& w) {
  if (small.degree() > big.degree()) throw ShapeError("pair_forms: small form has larger degree");
  const auto all = identity_permutation(small.degree());
  const Form<S> up = Form<S>::from_tensor(raise_slots(small.to_tensor(), all, w));
  Form<S> r(big.dim(), big.degree() - small.degree());
  const S fact(static_cast<long>(factorial(small.degree())));
  for (const auto& [mb, vb] : big.coefficients())
    for (const auto& [ms, vs] : up.coefficients()) {
      if ((mb & ms) != ms) continue;
      const auto rest = mb & ~ms;
      // big_{A J} with A = ms, J = rest: sign of the shuffle (A, J).
      const S prod = vb * vs * fact;
      r.add_to(rest, Form<S>::shuffle_sign(ms, rest) > 0 ? prod : -prod);
    }
  return r;
}

/// Pullback by a linear map: (A^*T)_{i..} = Σ T_{j..} Π A(j, i).
template <class S>
Tensor<S> pullback(const Matrix<Rational>& a, const Tensor<S>& t) {
  if (a.rows() != t.dim() || a.cols() != t.dim()) throw ShapeError("pullback: dimension mismatch");
  Tensor<S> at(t.dim(), 2);
  for (int i = 0; i < t.dim(); ++i)
    for (int j = 0; j < t.dim(); ++j) at.at({i, j}) = from_rational<S>(a(j, i));
  Tensor<S> r = t;
  for (int s = 0; s < t.order(); ++s) r = contract_slot(r, s, at);
  return r;
}

/// Aᵀ ω A == ω.
bool is_symplectic(const Matrix<Rational>& a, const SymplecticForm& w);

/// Cayley transform (I - M)^{-1}(I + M); nullopt when I - M is singular.
std::optional<Matrix<Rational>> cayley(const Matrix<Rational>& m);

/// Random element of Sp(2n, Q): Cayley transform of M = ω^{-1} S with S
/// symmetric, entries of S uniform in {-3..3}/2.
Matrix<Rational> random_symplectic(int n, std::uint64_t seed);

}  // namespace fedo
