#include "fedo/jets/polynomial.hpp"

#include <functional>
#include <mutex>
#include <stdexcept>

namespace fedo {

PolySpace::PolySpace(int vars, int degree) : vars_(vars), degree_(degree) {
  if (vars < 0 || degree < 0) throw std::invalid_argument("PolySpace: negative shape");
  std::vector<int> e(static_cast<size_t>(vars), 0);
  for (int d = 0; d <= degree; ++d) {
    starts_.push_back(static_cast<int>(exps_.size()));
    // Exponent vectors of total degree d, lexicographically descending.
    std::function<void(int, int)> rec = [&](int v, int left) {
      if (v == vars_) {
        if (left == 0) {
          lookup_[e] = static_cast<int>(exps_.size());
          exps_.push_back(e);
          degs_.push_back(d);
        }
        return;
      }
      for (int k = left; k >= 0; --k) {
        e[static_cast<size_t>(v)] = k;
        rec(v + 1, left - k);
      }
      e[static_cast<size_t>(v)] = 0;
    };
    if (vars_ == 0) {
      if (d == 0) {
        lookup_[e] = 0;
        exps_.push_back(e);
        degs_.push_back(0);
      }
    } else {
      rec(0, d);
    }
  }
  starts_.push_back(static_cast<int>(exps_.size()));

  const size_t n = exps_.size();
  dtarget_.assign(static_cast<size_t>(vars_), std::vector<int>(n, -1));
  dfactor_.assign(static_cast<size_t>(vars_), std::vector<int>(n, 0));
  for (int v = 0; v < vars_; ++v)
    for (size_t m = 0; m < n; ++m) {
      const int k = exps_[m][static_cast<size_t>(v)];
      if (k == 0) continue;
      auto t = exps_[m];
      --t[static_cast<size_t>(v)];
      dtarget_[static_cast<size_t>(v)][m] = lookup_.at(t);
      dfactor_[static_cast<size_t>(v)][m] = k;
    }
  mult_.assign(n * n, -1);
  std::vector<int> sum(static_cast<size_t>(vars_));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      if (degs_[a] + degs_[b] > degree_) continue;
      for (int v = 0; v < vars_; ++v) sum[static_cast<size_t>(v)] = exps_[a][static_cast<size_t>(v)] + exps_[b][static_cast<size_t>(v)];
      mult_[a * n + b] = lookup_.at(sum);
    }
}

std::shared_ptr<const PolySpace> PolySpace::get(int vars, int degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const PolySpace>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{vars, degree}];
  if (!slot) slot = std::make_shared<const PolySpace>(vars, degree);
  return slot;
}

int PolySpace::index(std::span<const int> exps) const {
  int d = 0;
  for (int x : exps) d += x;
  if (d > degree_) return -1;
  auto it = lookup_.find(std::vector<int>(exps.begin(), exps.end()));
  if (it == lookup_.end()) throw std::invalid_argument("PolySpace: exponent vector has wrong length");
  return it->second;
}

bool Poly::is_zero() const {
  for (const auto& v : c_)
    if (!v.is_zero()) return false;
  return true;
}

int Poly::actual_degree() const {
  for (int m = static_cast<int>(c_.size()) - 1; m >= 0; --m)
    if (!c_[static_cast<size_t>(m)].is_zero()) return sp_->monomial_degree(m);
  return -1;
}

Poly& Poly::operator+=(const Poly& o) {
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Poly& Poly::operator*=(const Rational& s) {
  for (auto& v : c_) v *= s;
  return *this;
}

void Poly::fma(Poly& acc, const Rational& s, const Poly& a, const Poly& b, int keep) {
  const PolySpace& sp = *acc.sp_;
  keep = std::min(keep, sp.degree());
  const int na = sp.count(keep);
  for (int i = 0; i < na; ++i) {
    const Rational& ai = a.c_[static_cast<size_t>(i)];
    if (ai.is_zero()) continue;
    const int nb = sp.count(keep - sp.monomial_degree(i));
    for (int j = 0; j < nb; ++j) {
      const Rational& bj = b.c_[static_cast<size_t>(j)];
      if (bj.is_zero()) continue;
      acc.c_[static_cast<size_t>(sp.product(i, j))] += s * ai * bj;
    }
  }
}

Poly Poly::derivative(int v, int keep) const {
  Poly r(sp_);
  const int limit = sp_->count(keep + 1);
  for (int m = 0; m < limit; ++m) {
    const int f = sp_->deriv_factor(v, m);
    if (f == 0 || c_[static_cast<size_t>(m)].is_zero()) continue;
    r.c_[static_cast<size_t>(sp_->deriv_target(v, m))] += c_[static_cast<size_t>(m)] * Rational(f);
  }
  return r;
}

Poly Poly::truncated(int keep) const {
  Poly r = *this;
  for (int m = sp_->count(keep); m < sp_->size(); ++m) r.c_[static_cast<size_t>(m)] = Rational();
  return r;
}

Poly Poly::linear_substitution(const Matrix<Rational>& m) const {
  const int n = sp_->vars();
  if (m.rows() != n || m.cols() != n) throw std::invalid_argument("linear_substitution: matrix shape mismatch");
  std::vector<Poly> lin;
  for (int i = 0; i < n; ++i) {
    Poly l(sp_);
    std::vector<int> e(static_cast<size_t>(n), 0);
    for (int j = 0; j < n; ++j) {
      if (m(i, j).is_zero() || sp_->degree() < 1) continue;
      e[static_cast<size_t>(j)] = 1;
      l[sp_->index(e)] = m(i, j);
      e[static_cast<size_t>(j)] = 0;
    }
    lin.push_back(std::move(l));
  }
  Poly one(sp_);
  one[0] = Rational(1);
  Poly r(sp_);
  for (int k = 0; k < sp_->size(); ++k) {
    if (c_[static_cast<size_t>(k)].is_zero()) continue;
    Poly term = one;
    const auto& e = sp_->exponents(k);
    for (int v = 0; v < n; ++v)
      for (int p = 0; p < e[static_cast<size_t>(v)]; ++p) {
        Poly next(sp_);
        fma(next, Rational(1), term, lin[static_cast<size_t>(v)], sp_->degree());
        term = std::move(next);
      }
    term *= c_[static_cast<size_t>(k)];
    r += term;
  }
  return r;
}

Poly Poly::embedded(std::shared_ptr<const PolySpace> target, std::span<const int> var_map) const {
  if (static_cast<int>(var_map.size()) != sp_->vars()) throw std::invalid_argument("embedded: variable map size mismatch");
  Poly r(target);
  std::vector<int> e(static_cast<size_t>(target->vars()), 0);
  for (int k = 0; k < sp_->size(); ++k) {
    if (c_[static_cast<size_t>(k)].is_zero()) continue;
    std::fill(e.begin(), e.end(), 0);
    const auto& src = sp_->exponents(k);
    for (size_t v = 0; v < src.size(); ++v) e[static_cast<size_t>(var_map[v])] = src[v];
    const int idx = target->index(e);
    if (idx < 0) throw std::invalid_argument("embedded: target degree too small");
    r[idx] = c_[static_cast<size_t>(k)];
  }
  return r;
}

}  // namespace fedo
