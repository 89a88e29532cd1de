#include "fedo/jets/fedosov.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "fedo/core/permutation.hpp"
#include "fedo/core/random.hpp"
#include "fedo/symmetry/symmetry.hpp"

namespace fedo {

namespace {

/// Copies the coefficients that fit into `sp`; graded spaces over the same
/// variables share their low-degree prefix.
Poly recast(const Poly& p, const std::shared_ptr<const PolySpace>& sp) {
  Poly r(sp);
  const int n = std::min(sp->size(), p.space().size());
  for (int m = 0; m < n; ++m) r[m] = p[m];
  return r;
}

struct PolyTensor {
  int dim = 0;
  int order = 0;
  std::vector<Poly> c;

  PolyTensor(int d, int o, const std::shared_ptr<const PolySpace>& sp)
      : dim(d), order(o), c(ipow(static_cast<std::size_t>(d), o), Poly(sp)) {}

  Tensor<Rational> at_origin() const {
    Tensor<Rational> t(dim, order);
    for (std::size_t i = 0; i < c.size(); ++i) t[i] = c[i].constant();
    return t;
  }
};

/// Raised symbols Γ^d_{ab} = ω^{dc} Γ_{c,ab}, recast into `sp`.
std::vector<Poly> raised_gamma(const PolyFedosov& f, const std::shared_ptr<const PolySpace>& sp) {
  const int d = f.dim();
  const auto& up = f.form().upper();
  std::vector<Poly> g(static_cast<std::size_t>(d * d * d), Poly(sp));
  for (int i = 0; i < d; ++i)
    for (int c = 0; c < d; ++c) {
      const Rational& w = up.at({i, c});
      if (w.is_zero()) continue;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) g[static_cast<std::size_t>((i * d + a) * d + b)] += recast(f.gamma(c, a, b), sp) * w;
    }
  return g;
}

/// Lowered R_{ijkl} as polynomials of degree <= keep.
PolyTensor curvature_field(const PolyFedosov& f, int keep) {
  const int d = f.dim();
  const auto sp = PolySpace::get(d, keep);
  const auto g = raised_gamma(f, sp);
  auto G = [&](int i, int a, int b) -> const Poly& { return g[static_cast<std::size_t>((i * d + a) * d + b)]; };

  // ∂_v Γ^i_{ab}, computed in the stored space so that degree keep+1 terms feed in.
  const auto g_full = raised_gamma(f, f.space());
  std::vector<Poly> dg(static_cast<std::size_t>(d * d * d * d), Poly(sp));
  for (int v = 0; v < d; ++v)
    for (std::size_t k = 0; k < g_full.size(); ++k)
      dg[static_cast<std::size_t>(v) * g_full.size() + k] = recast(g_full[k].derivative(v, keep), sp);
  auto dG = [&](int v, int i, int a, int b) -> const Poly& {
    return dg[static_cast<std::size_t>(((v * d + i) * d + a) * d + b)];
  };

  PolyTensor up(d, 4, sp);
  const Rational one(1), minus_one(-1);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          Poly& r = up.c[static_cast<std::size_t>(((i * d + j) * d + k) * d + l)];
          r += dG(k, i, l, j);
          r -= dG(l, i, k, j);
          for (int m = 0; m < d; ++m) {
            Poly::fma(r, one, G(i, k, m), G(m, l, j), keep);
            Poly::fma(r, minus_one, G(i, l, m), G(m, k, j), keep);
          }
        }

  const auto& low = f.form().lower();
  PolyTensor r(d, 4, sp);
  const std::size_t block = ipow(static_cast<std::size_t>(d), 3);
  for (int i = 0; i < d; ++i)
    for (int m = 0; m < d; ++m) {
      const Rational& w = low.at({i, m});
      if (w.is_zero()) continue;
      for (std::size_t rest = 0; rest < block; ++rest)
        r.c[static_cast<std::size_t>(i) * block + rest] += up.c[static_cast<std::size_t>(m) * block + rest] * w;
    }
  return r;
}

/// (∇T)_{m a_1..a_k} = ∂_m T_{a..} - Σ_s Γ^d_{m a_s} T_{..d..}, degree <= keep.
PolyTensor covariant_derivative(const PolyFedosov& f, const PolyTensor& t, int keep) {
  const int d = t.dim;
  const auto sp = PolySpace::get(d, keep);
  const auto g = raised_gamma(f, sp);
  std::vector<Poly> low(t.c.size(), Poly(sp));
  for (std::size_t i = 0; i < t.c.size(); ++i) low[i] = recast(t.c[i], sp);

  PolyTensor r(d, t.order + 1, sp);
  const std::size_t block = t.c.size();
  std::vector<int> idx(static_cast<std::size_t>(t.order));
  const Rational minus_one(-1);
  for (int m = 0; m < d; ++m)
    for (std::size_t flat = 0; flat < block; ++flat) {
      Poly& out = r.c[static_cast<std::size_t>(m) * block + flat];
      out = recast(t.c[flat].derivative(m, keep), sp);
      std::size_t rem = flat;
      for (int s = t.order - 1; s >= 0; --s) {
        idx[static_cast<std::size_t>(s)] = static_cast<int>(rem % static_cast<std::size_t>(d));
        rem /= static_cast<std::size_t>(d);
      }
      std::size_t stride = 1;
      for (int s = t.order - 1; s >= 0; --s) {
        const int a = idx[static_cast<std::size_t>(s)];
        const std::size_t base = flat - static_cast<std::size_t>(a) * stride;
        for (int e = 0; e < d; ++e) {
          const Poly& ge = g[static_cast<std::size_t>((e * d + m) * d + a)];
          if (ge.is_zero()) continue;
          Poly::fma(out, minus_one, ge, low[base + static_cast<std::size_t>(e) * stride], keep);
        }
        stride *= static_cast<std::size_t>(d);
      }
    }
  return r;
}

}  // namespace

PolyFedosov::PolyFedosov(int n, int degree, Rational form_scale)
    : n_(n), degree_(degree), scale_(std::move(form_scale)), form_(standard_form(n)) {
  if (n < 1) throw std::invalid_argument("PolyFedosov: n must be >= 1");
  if (degree < 0 || degree > kMaxJetDegree)
    throw std::invalid_argument("PolyFedosov: degree must be in [0, " + std::to_string(kMaxJetDegree) + "]");
  if (scale_.sign() <= 0) throw std::invalid_argument("PolyFedosov: form scale must be positive");
  if (!(scale_ == Rational(1))) form_ = form_.scaled(scale_);
  space_ = PolySpace::get(dim(), degree);
  gamma_.assign(ipow(static_cast<std::size_t>(dim()), 3), Poly(space_));
}

void PolyFedosov::set_gamma(int c, int a, int b, const Poly& p) {
  if (p.space_ptr() != space_) throw std::invalid_argument("set_gamma: polynomial from a different space");
  const int idx[3] = {c, a, b};
  for (const auto& perm : all_permutations(3))
    gamma_[flat_index(idx[perm[0]], idx[perm[1]], idx[perm[2]])] = p;
}

bool PolyFedosov::is_flat() const {
  for (const auto& p : gamma_)
    if (!p.is_zero()) return false;
  return true;
}

PolyFedosov PolyFedosov::scaled(const Rational& lambda) const {
  const Rational l2 = lambda * lambda;
  PolyFedosov r(n_, degree_, scale_ * l2);
  for (std::size_t i = 0; i < gamma_.size(); ++i) r.gamma_[i] = gamma_[i] * l2;
  return r;
}

PolyFedosov PolyFedosov::pullback(const Matrix<Rational>& a) const {
  const int d = dim();
  if (a.rows() != d || a.cols() != d) throw std::invalid_argument("pullback: matrix shape mismatch");
  if (!is_symplectic(a, form_)) throw std::invalid_argument("pullback: matrix is not symplectic");
  std::vector<Poly> moved;
  moved.reserve(gamma_.size());
  for (const auto& p : gamma_) moved.push_back(p.linear_substitution(a));
  PolyFedosov r(n_, degree_, scale_);
  // Contract one slot at a time: Γ'_{c,ab} = Σ Γ_{e,mn}(Ax) A(e,c) A(m,a) A(n,b).
  const std::size_t d2 = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  for (int slot = 0; slot < 3; ++slot) {
    const std::size_t stride = slot == 0 ? d2 : (slot == 1 ? static_cast<std::size_t>(d) : 1);
    std::vector<Poly> next(moved.size(), Poly(space_));
    for (std::size_t flat = 0; flat < moved.size(); ++flat) {
      const int target = static_cast<int>((flat / stride) % static_cast<std::size_t>(d));
      const std::size_t base = flat - static_cast<std::size_t>(target) * stride;
      for (int e = 0; e < d; ++e) {
        const Rational& w = a(e, target);
        if (w.is_zero()) continue;
        next[flat] += moved[base + static_cast<std::size_t>(e) * stride] * w;
      }
    }
    moved = std::move(next);
  }
  r.gamma_ = std::move(moved);
  return r;
}

std::vector<int> product_index_map(int n) {
  std::vector<int> map(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    map[static_cast<std::size_t>(i)] = i;
    map[static_cast<std::size_t>(n + i)] = n + 1 + i;
  }
  return map;
}

PolyFedosov PolyFedosov::product_with_flat() const {
  if (!(scale_ == Rational(1))) throw std::invalid_argument("product_with_flat: requires the unscaled standard form");
  PolyFedosov r(n_ + 1, degree_);
  const auto map = product_index_map(n_);
  const int d = dim();
  for (int c = 0; c < d; ++c)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        const Poly& p = gamma(c, a, b);
        if (p.is_zero()) continue;
        r.gamma_[r.flat_index(map[static_cast<std::size_t>(c)], map[static_cast<std::size_t>(a)],
                              map[static_cast<std::size_t>(b)])] = p.embedded(r.space_, map);
      }
  return r;
}

std::string PolyFedosov::serialize() const {
  std::ostringstream os;
  os << n_ << ' ' << degree_ << '\n';
  if (!(scale_ == Rational(1))) os << "scale " << scale_ << '\n';
  const int d = dim();
  for (int c = 0; c < d; ++c)
    for (int a = c; a < d; ++a)
      for (int b = a; b < d; ++b) {
        const Poly& p = gamma(c, a, b);
        for (int m = 0; m < space_->size(); ++m) {
          if (p[m].is_zero()) continue;
          os << c + 1 << ' ' << a + 1 << ' ' << b + 1 << " :";
          for (int e : space_->exponents(m)) os << ' ' << e;
          os << " : " << p[m] << '\n';
        }
      }
  return os.str();
}

PolyFedosov PolyFedosov::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("structure line " + std::to_string(line_no) + ": " + why);
  };
  auto next_line = [&]() {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line()) throw std::invalid_argument("structure text is empty");
  int n = 0, degree = 0;
  {
    std::istringstream hs(line);
    if (!(hs >> n >> degree)) fail("expected header 'n degree'");
  }
  Rational scale(1);
  std::vector<std::string> body;
  while (next_line()) {
    if (line.rfind("scale", 0) == 0) {
      if (!body.empty()) fail("scale must follow the header");
      scale = Rational::parse(line.substr(5 + line.substr(5).find_first_not_of(' ')));
      continue;
    }
    body.push_back(line);
  }
  PolyFedosov f(n, degree, scale);
  const int d = f.dim();
  std::vector<Poly> seen(f.gamma_.size(), Poly(f.space_));
  line_no -= static_cast<int>(body.size());
  for (const auto& l : body) {
    ++line_no;
    const auto c1 = l.find(':');
    const auto c2 = c1 == std::string::npos ? c1 : l.find(':', c1 + 1);
    if (c2 == std::string::npos) fail("expected 'c a b : exponents : coefficient'");
    std::istringstream is(l.substr(0, c1)), es(l.substr(c1 + 1, c2 - c1 - 1));
    int c, a, b;
    if (!(is >> c >> a >> b)) fail("bad index triple");
    if (c < 1 || a < 1 || b < 1 || c > d || a > d || b > d) fail("index out of range");
    std::vector<int> e;
    int x;
    while (es >> x) {
      if (x < 0) fail("negative exponent");
      e.push_back(x);
    }
    if (static_cast<int>(e.size()) != d) fail("exponent vector must have " + std::to_string(d) + " entries");
    const int m = f.space_->index(e);
    if (m < 0) fail("monomial exceeds the declared degree");
    const Rational q = Rational::parse(l.substr(c2 + 1 + l.substr(c2 + 1).find_first_not_of(' ')));
    Poly& slot = seen[f.flat_index(c - 1, a - 1, b - 1)];
    slot[m] += q;
  }
  for (int c = 0; c < d; ++c)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        Poly p = seen[f.flat_index(c, a, b)];
        if (p.is_zero()) continue;
        int s[3] = {c, a, b};
        std::sort(s, s + 3);
        if (s[0] != c || s[1] != a || s[2] != b) {
          line_no = 0;
          fail("index triples must be nondecreasing");
        }
        f.set_gamma(c, a, b, p);
      }
  return f;
}

PolyFedosov random_fedosov(int n, int degree, std::uint64_t seed) {
  PolyFedosov f(n, degree);
  auto rng = make_rng({seed, 0x4645444FULL, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(degree)});
  const int d = f.dim();
  for (int c = 0; c < d; ++c)
    for (int a = c; a < d; ++a)
      for (int b = a; b < d; ++b) {
        Poly p(f.space());
        for (int m = 0; m < f.space()->size(); ++m) p[m] = Rational(uniform_int(rng, -3, 3));
        f.set_gamma(c, a, b, p);
      }
  return f;
}

JetTensor curvature_derivatives(const PolyFedosov& f, int r) {
  if (r < 0) throw std::invalid_argument("curvature_derivatives: negative order");
  if (r > f.degree())
    throw std::invalid_argument("curvature_derivatives: order " + std::to_string(r) + " exceeds stored degree " +
                                std::to_string(f.degree()));
  JetTensor jet;
  PolyTensor t = curvature_field(f, r);
  jet.levels.push_back(t.at_origin());
  for (int k = 1; k <= r; ++k) {
    t = covariant_derivative(f, t, r - k);
    jet.levels.push_back(t.at_origin());
  }
  if (!SymmetryClass::curvature().contains(jet.levels[0]))
    throw ConventionError("computed curvature violates the curvature tensor symmetries");
  return jet;
}

Tensor<Rational> curvature(const PolyFedosov& f) { return curvature_derivatives(f, 0).levels[0]; }

}  // namespace fedo
