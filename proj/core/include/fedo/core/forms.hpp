#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "fedo/core/tensor.hpp"

namespace fedo {

namespace detail {

inline void check_slots(int order, std::span<const int> slots) {
  std::vector<char> seen(static_cast<size_t>(order), 0);
  for (int s : slots) {
    if (s < 0 || s >= order) throw ShapeError("slot " + std::to_string(s) + " out of range");
    if (seen[static_cast<size_t>(s)]) throw ShapeError("slot listed twice");
    seen[static_cast<size_t>(s)] = 1;
  }
}

/// Sorts `v` in place; returns the sign of the sorting permutation, or 0 if
/// two entries coincide.
inline int sort_with_sign(std::span<int> v) {
  int sign = 1;
  for (size_t i = 1; i < v.size(); ++i)
    for (size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
      if (v[j - 1] == v[j]) return 0;
      std::swap(v[j - 1], v[j]);
      sign = -sign;
    }
  return sign;
}

/// Shared driver for alternate/symmetrize: the sum over all permutations of
/// `slots` is computed once per orbit representative (values on `slots`
/// non-decreasing) and copied to the rest of the orbit.
template <class S>
Tensor<S> orbit_sum(const Tensor<S>& t, std::span<const int> slot_list, bool signed_sum) {
  check_slots(t.order(), slot_list);
  // The sum runs over all permutations, so slot order is irrelevant; sorting
  // makes every representative precede its orbit in row-major order.
  std::vector<int> slots(slot_list.begin(), slot_list.end());
  std::sort(slots.begin(), slots.end());
  const int k = static_cast<int>(slots.size());
  const auto perms = all_permutations(k);
  std::vector<int> signs;
  for (const auto& p : perms) signs.push_back(signed_sum ? permutation_sign(p) : 1);

  Tensor<S> r(t.dim(), t.order());
  std::vector<int> src(static_cast<size_t>(t.order()));
  std::vector<int> vals(static_cast<size_t>(k));
  std::vector<int> sorted(static_cast<size_t>(k));
  for_each_index(t.dim(), t.order(), [&](std::span<const int> idx, std::size_t flat) {
    for (int a = 0; a < k; ++a) vals[static_cast<size_t>(a)] = idx[static_cast<size_t>(slots[static_cast<size_t>(a)])];
    sorted = vals;
    if (!std::is_sorted(vals.begin(), vals.end())) {
      // Non-representative: copy from the sorted representative.
      int sign = 1;
      if (signed_sum) {
        sign = sort_with_sign(sorted);
        if (sign == 0) return;
      } else {
        std::sort(sorted.begin(), sorted.end());
      }
      std::copy(idx.begin(), idx.end(), src.begin());
      for (int a = 0; a < k; ++a) src[static_cast<size_t>(slots[static_cast<size_t>(a)])] = sorted[static_cast<size_t>(a)];
      const S& v = r(src);
      r[flat] = sign > 0 ? v : -v;
      return;
    }
    if (signed_sum && std::adjacent_find(vals.begin(), vals.end()) != vals.end()) return;
    S acc(0L);
    std::copy(idx.begin(), idx.end(), src.begin());
    for (size_t p = 0; p < perms.size(); ++p) {
      for (int a = 0; a < k; ++a)
        src[static_cast<size_t>(slots[static_cast<size_t>(a)])] = vals[static_cast<size_t>(perms[p][static_cast<size_t>(a)])];
      if (signs[p] > 0)
        acc += t(src);
      else
        acc -= t(src);
    }
    r[flat] = std::move(acc);
  });
  return r;
}

}  // namespace detail

/// Σ_σ sgn(σ) · T with the listed slots permuted by σ. No 1/k! factor.
template <class S>
Tensor<S> alternate(const Tensor<S>& t, std::span<const int> slots) {
  return detail::orbit_sum(t, slots, true);
}

/// Σ_σ T with the listed slots permuted by σ. No 1/k! factor.
template <class S>
Tensor<S> symmetrize(const Tensor<S>& t, std::span<const int> slots) {
  return detail::orbit_sum(t, slots, false);
}

template <class S>
Tensor<S> alternate_all(const Tensor<S>& t) {
  const auto all = identity_permutation(t.order());
  return alternate(t, all);
}

/// Exterior form stored sparsely by strictly increasing index tuple,
/// encoded as a bitmask over {0..dim-1}.
template <class S>
class Form {
 public:
  using Mask = std::uint32_t;

  Form() = default;
  Form(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 0 || dim > 31 || degree < 0) throw ShapeError("form shape out of range");
  }

  /// Throws ShapeError if `t` is not antisymmetric in all slots.
  static Form from_tensor(const Tensor<S>& t) {
    Form f(t.dim(), t.order());
    std::vector<int> sorted(static_cast<size_t>(t.order()));
    for_each_index(t.dim(), t.order(), [&](std::span<const int> idx, std::size_t flat) {
      std::copy(idx.begin(), idx.end(), sorted.begin());
      const int sign = detail::sort_with_sign(sorted);
      const S& v = t[flat];
      if (sign == 0) {
        if (!fedo::is_zero(v)) throw ShapeError("tensor is not antisymmetric");
        return;
      }
      const S& rep = t(sorted);
      if (!(sign > 0 ? v == rep : v == -rep)) throw ShapeError("tensor is not antisymmetric");
      if (sign > 0 && std::is_sorted(idx.begin(), idx.end()) && !fedo::is_zero(v)) f.coeffs_[mask_of(idx)] = v;
    });
    return f;
  }

  Tensor<S> to_tensor() const {
    Tensor<S> t(dim_, degree_);
    std::vector<int> sorted(static_cast<size_t>(degree_));
    for_each_index(dim_, degree_, [&](std::span<const int> idx, std::size_t flat) {
      std::copy(idx.begin(), idx.end(), sorted.begin());
      const int sign = detail::sort_with_sign(sorted);
      if (sign == 0) return;
      auto it = coeffs_.find(mask_of(sorted));
      if (it == coeffs_.end()) return;
      t[flat] = sign > 0 ? it->second : -it->second;
    });
    return t;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const std::map<Mask, S>& coefficients() const { return coeffs_; }

  /// Component at an arbitrary index tuple.
  S at(std::span<const int> idx) const {
    std::vector<int> sorted(idx.begin(), idx.end());
    const int sign = detail::sort_with_sign(sorted);
    if (sign == 0) return S(0L);
    auto it = coeffs_.find(mask_of(sorted));
    if (it == coeffs_.end()) return S(0L);
    return sign > 0 ? it->second : -it->second;
  }
  S at_mask(Mask m) const {
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? S(0L) : it->second;
  }
  void add_to(Mask m, const S& v) {
    if (std::popcount(m) != degree_) throw ShapeError("mask has wrong degree");
    auto [it, inserted] = coeffs_.try_emplace(m, v);
    if (!inserted) {
      it->second += v;
      if (fedo::is_zero(it->second)) coeffs_.erase(it);
    } else if (fedo::is_zero(v)) {
      coeffs_.erase(it);
    }
  }

  bool is_zero() const { return coeffs_.empty(); }

  Form& operator*=(const S& c) {
    if (fedo::is_zero(c)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [m, v] : coeffs_) v *= c;
    return *this;
  }
  Form& operator+=(const Form& o) {
    check_same(o);
    for (const auto& [m, v] : o.coeffs_) add_to(m, v);
    return *this;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator*(Form a, const S& c) { return a *= c; }
  friend bool operator==(const Form& a, const Form& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

  /// Shuffle-sum wedge product.
  friend Form wedge(const Form& a, const Form& b) {
    if (a.dim_ != b.dim_) throw ShapeError("wedge of forms of different dims");
    Form r(a.dim_, a.degree_ + b.degree_);
    if (r.degree_ > r.dim_) return r;
    for (const auto& [ma, va] : a.coeffs_)
      for (const auto& [mb, vb] : b.coeffs_) {
        if (ma & mb) continue;
        const S prod = va * vb;
        r.add_to(ma | mb, shuffle_sign(ma, mb) > 0 ? prod : -prod);
      }
    return r;
  }

  /// (-1)^{#{(x in a, y in b) : x > y}}.
  static int shuffle_sign(Mask a, Mask b) {
    int inv = 0;
    for (Mask rest = a; rest; rest &= rest - 1) {
      const int x = std::countr_zero(rest);
      inv += std::popcount(b & ((Mask{1} << x) - 1));
    }
    return (inv & 1) ? -1 : 1;
  }

  static Mask mask_of(std::span<const int> sorted) {
    Mask m = 0;
    for (int v : sorted) m |= Mask{1} << v;
    return m;
  }

 private:
  void check_same(const Form& o) const {
    if (dim_ != o.dim_ || degree_ != o.degree_) throw ShapeError("forms of different shape");
  }

  int dim_ = 0;
  int degree_ = 0;
  std::map<Mask, S> coeffs_;
};

/// α ∧ β for dense antisymmetric tensors; throws on non-antisymmetric input.
template <class S>
Tensor<S> wedge(const Tensor<S>& a, const Tensor<S>& b) {
  if (a.order() > 0 && b.order() > 0 && a.dim() != b.dim()) throw ShapeError("wedge of tensors of different dims");
  const int dim = a.order() > 0 ? a.dim() : b.dim();
  auto as_form = [dim](const Tensor<S>& t) {
    if (t.order() > 0) return Form<S>::from_tensor(t);
    Form<S> f(dim, 0);
    f.add_to(0, t.value());
    return f;
  };
  return wedge(as_form(a), as_form(b)).to_tensor();
}

/// form^{∧m}; m = 0 gives the constant 1.
template <class S>
Form<S> wedge_power(const Form<S>& f, int m) {
  Form<S> r(f.dim(), 0);
  r.add_to(0, S(1L));
  for (int i = 0; i < m; ++i) r = wedge(r, f);
  return r;
}

}  // namespace fedo
