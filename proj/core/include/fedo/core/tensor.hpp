#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fedo/core/permutation.hpp"
#include "fedo/core/scalar.hpp"

namespace fedo {

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::size_t ipow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

/// Upper bound on the number of components of a dense tensor.
inline constexpr std::size_t kDenseCap = 100'000'000;

/// Dense multi-index array over a vector space of dimension `dim`, stored
/// row-major by slot (slot 0 is the most significant index).
template <class S>
class Tensor {
 public:
  using value_type = S;

  Tensor() : dim_(0), order_(0), data_(1, S(0L)) {}
  Tensor(int dim, int order) : dim_(dim), order_(order) {
    if (dim < 0 || order < 0) throw ShapeError("negative tensor shape");
    const std::size_t n = ipow(dim, order);
    if (n > kDenseCap) throw ShapeError("dense tensor exceeds the component cap");
    data_.assign(n, S(0L));
  }
  Tensor(int dim, int order, std::vector<S> data) : dim_(dim), order_(order), data_(std::move(data)) {
    if (data_.size() != ipow(dim, order)) throw ShapeError("component count does not match shape");
  }

  static Tensor scalar(S value, int dim = 0) {
    Tensor t(dim, 0);
    t.data_[0] = std::move(value);
    return t;
  }

  int dim() const { return dim_; }
  int order() const { return order_; }
  std::size_t size() const { return data_.size(); }

  std::size_t stride(int slot) const { return ipow(dim_, order_ - 1 - slot); }

  std::size_t flat(std::span<const int> idx) const {
    std::size_t f = 0;
    for (int v : idx) f = f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(v);
    return f;
  }
  void unflat(std::size_t f, std::span<int> idx) const {
    for (int s = order_ - 1; s >= 0; --s) {
      idx[static_cast<size_t>(s)] = static_cast<int>(f % static_cast<std::size_t>(dim_));
      f /= static_cast<std::size_t>(dim_);
    }
  }

  S& operator()(std::span<const int> idx) { return data_[flat(idx)]; }
  const S& operator()(std::span<const int> idx) const { return data_[flat(idx)]; }
  S& at(std::initializer_list<int> idx) { return data_[flat(std::span<const int>(idx.begin(), idx.size()))]; }
  const S& at(std::initializer_list<int> idx) const {
    return data_[flat(std::span<const int>(idx.begin(), idx.size()))];
  }
  S& operator[](std::size_t f) { return data_[f]; }
  const S& operator[](std::size_t f) const { return data_[f]; }

  const S& value() const {
    if (order_ != 0) throw ShapeError("value() on a tensor of positive order");
    return data_[0];
  }

  std::vector<S>& data() { return data_; }
  const std::vector<S>& data() const { return data_; }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!fedo::is_zero(v)) return false;
    return true;
  }

  Tensor& operator+=(const Tensor& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Tensor& operator*=(const S& c) {
    for (auto& v : data_) v *= c;
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, const S& c) { return a *= c; }
  friend Tensor operator*(const S& c, Tensor a) { return a *= c; }
  Tensor operator-() const {
    Tensor r = *this;
    for (auto& v : r.data_) v = -v;
    return r;
  }
  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.dim_ == b.dim_ && a.order_ == b.order_ && a.data_ == b.data_;
  }

  template <class T, class F>
  Tensor<T> map(F&& f) const {
    std::vector<T> out;
    out.reserve(data_.size());
    for (const auto& v : data_) out.push_back(f(v));
    return Tensor<T>(dim_, order_, std::move(out));
  }

  void check_same_shape(const Tensor& o) const {
    if (dim_ != o.dim_ || order_ != o.order_) throw ShapeError("tensor shapes differ");
  }

 private:
  int dim_;
  int order_;
  std::vector<S> data_;
};

/// Calls f(index_span, flat) for every multi-index in row-major order.
template <class F>
void for_each_index(int dim, int order, F&& f) {
  std::vector<int> idx(static_cast<size_t>(order), 0);
  const std::size_t total = ipow(dim, order);
  for (std::size_t flat = 0; flat < total; ++flat) {
    f(std::span<const int>(idx), flat);
    for (int s = order - 1; s >= 0; --s) {
      if (++idx[static_cast<size_t>(s)] < dim) break;
      idx[static_cast<size_t>(s)] = 0;
    }
  }
}

/// result(i_0..i_{N-1}) = t(i_{perm[0]}, ..., i_{perm[N-1]}).
template <class S>
Tensor<S> permute_slots(const Tensor<S>& t, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != t.order()) throw ShapeError("permutation length differs from order");
  Tensor<S> r(t.dim(), t.order());
  std::vector<int> src(perm.size());
  for_each_index(t.dim(), t.order(), [&](std::span<const int> idx, std::size_t flat) {
    for (size_t k = 0; k < perm.size(); ++k) src[k] = idx[static_cast<size_t>(perm[k])];
    r[flat] = t(src);
  });
  return r;
}

/// Exchanges slots a and b.
template <class S>
Tensor<S> swap_slots(const Tensor<S>& t, int a, int b) {
  Permutation p = identity_permutation(t.order());
  std::swap(p[static_cast<size_t>(a)], p[static_cast<size_t>(b)]);
  return permute_slots(t, p);
}

template <class S>
Tensor<S> outer(const Tensor<S>& a, const Tensor<S>& b) {
  if (a.dim() != b.dim() && a.order() > 0 && b.order() > 0) throw ShapeError("outer product of different dims");
  const int dim = a.order() > 0 ? a.dim() : b.dim();
  Tensor<S> r(dim, a.order() + b.order());
  std::size_t f = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[f++] = a[i] * b[j];
  return r;
}

template <class T, class S>
Tensor<T> tensor_cast(const Tensor<S>& t) {
  if constexpr (std::is_same_v<S, Rational>) {
    return t.template map<T>([](const Rational& q) { return from_rational<T>(q); });
  } else {
    return t.template map<T>([](const S& v) { return T(v); });
  }
}

/// Identity matrix δ^a_b as an order-2 tensor.
template <class S>
Tensor<S> kronecker(int dim) {
  Tensor<S> r(dim, 2);
  for (int i = 0; i < dim; ++i) r.at({i, i}) = S(1L);
  return r;
}

/// A tensor kept as a list of smaller factors; the slot list is the
/// concatenation of the factors' slots and the value is their product.
template <class S>
class FactoredTensor {
 public:
  FactoredTensor() = default;
  explicit FactoredTensor(std::vector<Tensor<S>> factors) : factors_(std::move(factors)) { validate(); }

  const std::vector<Tensor<S>>& factors() const { return factors_; }
  void push_back(Tensor<S> t) {
    factors_.push_back(std::move(t));
    validate();
  }
  int order() const {
    int n = 0;
    for (const auto& f : factors_) n += f.order();
    return n;
  }
  int dim() const {
    for (const auto& f : factors_)
      if (f.order() > 0) return f.dim();
    return 0;
  }
  Tensor<S> densify() const {
    Tensor<S> r = Tensor<S>::scalar(S(1L), dim());
    for (const auto& f : factors_) r = outer(r, f);
    return r;
  }

 private:
  void validate() const {
    int d = -1;
    for (const auto& f : factors_) {
      if (f.order() == 0) continue;
      if (d >= 0 && f.dim() != d) throw ShapeError("factors of different dimensions");
      d = f.dim();
    }
  }
  std::vector<Tensor<S>> factors_;
};

}  // namespace fedo
