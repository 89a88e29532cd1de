#include "fedo/identities/identities.hpp"

#include <stdexcept>

namespace fedo {

namespace {

template <class S>
Tensor<S> as_tensor(S v, int dim) {
  return Tensor<S>::scalar(std::move(v), dim);
}

std::vector<NaturalExpression> make_builtins() {
  std::vector<NaturalExpression> v;
  v.push_back(make_natural("omega", "the symplectic form", 2, 2, 2,
                           [](const auto& r, const SymplecticForm& w) {
                             using S = typename std::decay_t<decltype(r)>::value_type;
                             return w.template lower_as<S>();
                           }));
  v.push_back(make_natural("eq1", "expanded 2-form in R and K", -2, 2, 2,
                           [](const auto& r, const SymplecticForm& w) { return expr1(r, ricci(r, w), w); }));
  v.push_back(make_natural("eq2", "scalar R R (omega^omega)", -4, 0, 2, [](const auto& r, const SymplecticForm& w) {
    return as_tensor(scalar_identity(r, w), w.dim());
  }));
  v.push_back(make_natural("eq4", "2-form R R (omega^omega^omega)", -2, 2, 2,
                           [](const auto& r, const SymplecticForm& w) { return two_form_identity(r, w); }));
  v.push_back(make_natural("chern2", "second Chern generator", 0, 4, 2,
                           [](const auto& r, const SymplecticForm& w) { return chern_generator(r, w, 2); }));
  for (int p : {0, 2, 4}) {
    const int k = 2;
    v.push_back(make_natural("main-p" + std::to_string(p) + "-k2",
                             "<omega^(k+p/2), c_k> with p=" + std::to_string(p) + ", k=2", p - 2 * k, p,
                             2 * k + p - 2, [p](const auto& r, const SymplecticForm& w) {
                               return main_theorem_form(r, w, p, 2);
                             }));
  }
  return v;
}

}  // namespace

const std::vector<NaturalExpression>& builtin_expressions() {
  static const std::vector<NaturalExpression> all = make_builtins();
  return all;
}

const NaturalExpression& builtin(std::string_view name) {
  for (const auto& e : builtin_expressions())
    if (e.name == name) return e;
  std::string known;
  for (const auto& e : builtin_expressions()) known += (known.empty() ? "" : ", ") + e.name;
  throw std::invalid_argument("unknown built-in expression '" + std::string(name) + "' (known: " + known + ")");
}

const std::vector<FrozenConstant>& frozen_constants() {
  static const std::vector<FrozenConstant> table{
      {"eq4/eq1", "eq4", "eq1", Rational(12),
       "exact pointwise ratio on random curvature tensors in dims 6 and 8; the last term of eq1 uses the "
       "placement (j, ^i, b, ^k), the only one of the 24 slot orders that vanishes in dim 4 and is proportional "
       "to eq4"},
      {"main-p0-k2/eq2", "main-p0-k2", "eq2", Rational(24),
       "exact pointwise ratio on random curvature tensors in dims 4 and 6"},
      {"main-p2-k2/eq4", "main-p2-k2", "eq4", Rational(24),
       "exact pointwise ratio on random curvature tensors in dims 6 and 8"},
  };
  return table;
}

const Rational& frozen_constant(std::string_view name) {
  for (const auto& c : frozen_constants())
    if (c.name == name) return c.value;
  throw std::invalid_argument("unknown frozen constant '" + std::string(name) + "'");
}

std::optional<Rational> exact_ratio(const Tensor<Rational>& a, const Tensor<Rational>& b) {
  if (a.dim() != b.dim() || a.order() != b.order()) throw ShapeError("exact_ratio: shape mismatch");
  std::optional<Rational> c;
  for (std::size_t x = 0; x < b.size(); ++x) {
    if (b[x].is_zero()) continue;
    const Rational q = a[x] / b[x];
    if (!c)
      c = q;
    else if (!(*c == q))
      return std::nullopt;
  }
  if (!c) return std::nullopt;
  for (std::size_t x = 0; x < b.size(); ++x)
    if (!(a[x] == *c * b[x])) return std::nullopt;
  return c;
}

Tensor<Rational> divergence(const PolyFedosov& f, const NaturalExpression& e) {
  if (e.order < 1) throw std::invalid_argument("divergence: expression '" + e.name + "' has no covariant slot");
  if (f.degree() < 1) throw std::invalid_argument("divergence: structure needs degree >= 1 for the first jet");
  if (f.dim() < e.min_dim)
    throw std::invalid_argument("divergence: '" + e.name + "' needs dim >= " + std::to_string(e.min_dim));
  const JetTensor jet = curvature_derivatives(f, 1);
  const int d = f.dim();
  const Tensor<Rational>& r = jet[0];
  const Tensor<Rational>& dr = jet[1];
  // ∇_i E = eps-part of E(R + ε ∇_i R), since ∇ω = 0.
  Tensor<Rational> nabla_e(d, e.order + 1);
  const std::size_t block = r.size();
  const std::size_t out_block = nabla_e.size() / static_cast<std::size_t>(d);
  for (int i = 0; i < d; ++i) {
    Tensor<Dual<Rational>> rd(d, 4);
    for (std::size_t x = 0; x < block; ++x) rd[x] = Dual<Rational>(r[x], dr[static_cast<std::size_t>(i) * block + x]);
    const Tensor<Dual<Rational>> ev = e.jet(rd, f.form());
    for (std::size_t x = 0; x < out_block; ++x) nabla_e[static_cast<std::size_t>(i) * out_block + x] = ev[x].eps();
  }
  // div_{a..} = ω^{ki} (∇_i E)_{k a..}
  const auto& up = f.form().upper();
  Tensor<Rational> div(d, e.order - 1);
  const std::size_t inner = div.size();
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i) {
      const Rational& wki = up.at({k, i});
      if (wki.is_zero()) continue;
      const std::size_t base = (static_cast<std::size_t>(i) * static_cast<std::size_t>(d) + static_cast<std::size_t>(k)) * inner;
      for (std::size_t x = 0; x < inner; ++x) div[x] += wki * nabla_e[base + x];
    }
  return div;
}

HomogeneityResult homogeneity_check(const NaturalExpression& e, const PolyFedosov& f, const Rational& lambda) {
  if (lambda.sign() <= 0 || lambda == Rational(1)) throw std::invalid_argument("homogeneity_check: lambda must be > 0 and != 1");
  const PolyFedosov g = f.scaled(lambda);
  const Tensor<Rational> base = e(curvature(f), f.form());
  const Tensor<Rational> scaled = e(curvature(g), g.form());
  HomogeneityResult res;
  bool all_zero = true;
  for (const auto& v : base.data())
    if (!v.is_zero()) all_zero = false;
  if (all_zero) {
    res.degenerate = true;
    return res;
  }
  const auto ratio = exact_ratio(scaled, base);
  if (!ratio) return res;
  for (int delta = -16; delta <= 16; ++delta) {
    Rational p(1);
    for (int s = 0; s < std::abs(delta); ++s) p *= lambda;
    if (delta < 0) p = Rational(1) / p;
    if (p == *ratio) {
      res.measured = delta;
      break;
    }
  }
  res.pass = res.measured && *res.measured == e.weight;
  return res;
}

bool is_equivariant(const NaturalExpression& e, const Tensor<Rational>& r, const SymplecticForm& w,
                    const Matrix<Rational>& a) {
  if (!is_symplectic(a, w)) throw std::invalid_argument("is_equivariant: matrix is not symplectic");
  return e(pullback(a, r), w) == pullback(a, e(r, w));
}

}  // namespace fedo
