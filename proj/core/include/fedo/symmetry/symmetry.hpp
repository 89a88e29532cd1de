#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fedo/core/random.hpp"
#include "fedo/core/tensor.hpp"

namespace fedo {

/// permute_slots(T, perm) == sign · T.
struct SlotSymmetry {
  Permutation perm;
  int sign = 1;
};

/// Σ coeff · permute_slots(T, perm) == 0.
struct SlotRelation {
  std::vector<std::pair<Rational, Permutation>> terms;
};

/// A space of order-N tensors cut out by slot symmetries and linear slot
/// relations. Because all constraints act on slots, the space is a
/// GL(V)-submodule of V^{⊗N} for every dimension of V.
class SymmetryClass {
 public:
  SymmetryClass(std::string name, int order, std::vector<SlotSymmetry> symmetries,
                std::vector<SlotRelation> relations);

  /// ℛ: symmetric in (0,1), antisymmetric in (2,3), first Bianchi identity.
  static SymmetryClass curvature();
  /// N_m, order m+3.
  static SymmetryClass normal(int m);

  const std::string& name() const { return name_; }
  int order() const { return order_; }
  const std::vector<SlotSymmetry>& symmetries() const { return symmetries_; }
  const std::vector<SlotRelation>& relations() const { return relations_; }

  /// Exact membership test for exact fields.
  template <class S>
  bool contains(const Tensor<S>& t) const {
    return residual(t) == 0.0;
  }
  /// Largest violation of any constraint, relative to max |component| for
  /// floating point input, or 0/1 for exact fields.
  template <class S>
  double residual(const Tensor<S>& t) const;

 private:
  std::string name_;
  int order_;
  std::vector<SlotSymmetry> symmetries_;
  std::vector<SlotRelation> relations_;
};

/// GL-equivariant idempotent onto a symmetry class:
///   P(T) = Σ_σ e(σ) · permute_slots(T, σ),
/// with e in the rational group algebra of S_N. The same e serves every
/// dimension; the projector is bound to one dimension for shape checks.
class SubspaceProjector {
 public:
  SubspaceProjector(std::shared_ptr<const SymmetryClass> cls, int dim);

  int dim() const { return dim_; }
  int order() const { return cls_->order(); }
  const SymmetryClass& symmetry_class() const { return *cls_; }
  /// Nonzero group-algebra coefficients (σ, e(σ)).
  const std::vector<std::pair<Permutation, Rational>>& element() const { return *element_; }

  /// Dimension of the image: Σ_σ e(σ) · dim^{cycles(σ)}.
  long rank() const;

  template <class S>
  Tensor<S> apply(const Tensor<S>& t) const;

  /// P applied to a tensor of uniform integer entries in [lo, hi].
  template <class S>
  Tensor<S> random_element(std::uint64_t seed, long lo = -9, long hi = 9) const {
    Rng rng = make_rng({seed, 0x524eULL, static_cast<std::uint64_t>(order()), static_cast<std::uint64_t>(dim_)});
    return apply(random_integer_tensor<S>(dim_, order(), rng, lo, hi));
  }
  /// P applied to a tensor of uniform residues (prime fields only).
  template <class F>
  Tensor<F> random_field_element(Rng& rng) const {
    return apply(random_field_tensor<F>(dim_, order(), rng));
  }

 private:
  std::shared_ptr<const SymmetryClass> cls_;
  int dim_;
  std::shared_ptr<const std::vector<std::pair<Permutation, Rational>>> element_;
};

/// Group-algebra idempotent of a symmetry class; memoized by class name.
std::shared_ptr<const std::vector<std::pair<Permutation, Rational>>> projector_element(const SymmetryClass& cls);

/// Largest m accepted by normal_projector and 2n bound.
inline constexpr int kMaxNormalOrder = 3;
inline constexpr int kMaxProjectorDim = 8;

SubspaceProjector curvature_projector(int n);
SubspaceProjector normal_projector(int m, int n);

/// R_{ijkl} = T_{ijlk} - T_{ijkl}; throws if T is not in N_1.
template <class S>
Tensor<S> normal_to_curvature(const Tensor<S>& t) {
  if (t.order() != 4) throw ShapeError("normal_to_curvature expects an order-4 tensor");
  static const SymmetryClass n1 = SymmetryClass::normal(1);
  if (n1.residual(t) > (ScalarTraits<S>::exact ? 0.0 : 1e-9))
    throw std::domain_error("normal_to_curvature: input is not a normal tensor of order 1");
  const Permutation swap_last{0, 1, 3, 2};
  return permute_slots(t, swap_last) - t;
}

// ---------------------------------------------------------------------------

template <class S>
double SymmetryClass::residual(const Tensor<S>& t) const {
  if (t.order() != order_) throw ShapeError("membership test: order mismatch");
  double worst = 0;
  double scale = 0;
  if constexpr (!ScalarTraits<S>::exact) {
    for (const auto& v : t.data()) scale = std::max(scale, std::abs(static_cast<double>(v)));
    if (scale == 0) return 0;
  }
  auto note = [&](const Tensor<S>& r) {
    if constexpr (ScalarTraits<S>::exact) {
      if (!r.is_zero()) worst = 1;
    } else {
      for (const auto& v : r.data()) worst = std::max(worst, std::abs(static_cast<double>(v)) / scale);
    }
  };
  for (const auto& s : symmetries_) {
    Tensor<S> r = permute_slots(t, s.perm);
    if (s.sign > 0)
      r -= t;
    else
      r += t;
    note(r);
  }
  for (const auto& rel : relations_) {
    Tensor<S> acc(t.dim(), t.order());
    for (const auto& [c, p] : rel.terms) acc += permute_slots(t, p) * from_rational<S>(c);
    note(acc);
  }
  return worst;
}

template <class S>
Tensor<S> SubspaceProjector::apply(const Tensor<S>& t) const {
  if (t.order() != order() || t.dim() != dim_) throw ShapeError("projector applied to tensor of wrong shape");
  Tensor<S> r(dim_, order());
  const auto& elem = *element_;
  if (elem.empty()) return r;
  // Offsets of each permuted slot layout, shared across all σ.
  const int n = order();
  std::vector<std::size_t> strides(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s) strides[static_cast<size_t>(s)] = t.stride(s);
  std::vector<S> coeffs;
  std::vector<std::vector<std::size_t>> perm_strides;
  for (const auto& [p, c] : elem) {
    coeffs.push_back(from_rational<S>(c));
    // permute_slots(T, p)(i) = T(i_{p[0]}, ..): slot k of T reads i_{p[k]}.
    std::vector<std::size_t> ps(static_cast<size_t>(n), 0);
    for (int k = 0; k < n; ++k) ps[static_cast<size_t>(p[static_cast<size_t>(k)])] += strides[static_cast<size_t>(k)];
    perm_strides.push_back(std::move(ps));
  }
  std::vector<std::size_t> src(coeffs.size(), 0);
  for_each_index(dim_, n, [&](std::span<const int> idx, std::size_t flat) {
    S acc(0L);
    for (size_t e = 0; e < coeffs.size(); ++e) {
      std::size_t off = 0;
      const auto& ps = perm_strides[e];
      for (int k = 0; k < n; ++k) off += static_cast<std::size_t>(idx[static_cast<size_t>(k)]) * ps[static_cast<size_t>(k)];
      acc += coeffs[e] * t[off];
    }
    r[flat] = std::move(acc);
  });
  return r;
}

}  // namespace fedo
