#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fedo/core/contract.hpp"
#include "fedo/core/forms.hpp"
#include "fedo/jets/fedosov.hpp"
#include "fedo/symplectic/symplectic.hpp"

namespace fedo {

namespace detail {

template <class S>
Form<S> omega_form(const SymplecticForm& w) {
  return Form<S>::from_tensor(w.lower_as<S>());
}

/// UU_{j1 k1 j2 k2} = R_{i1}^{i2 j1 k1} R_{i2}^{i1 j2 k2}.
template <class S>
Tensor<S> curvature_square(const Tensor<S>& r, const SymplecticForm& w) {
  const std::vector<int> up{1, 2, 3};
  const Tensor<S> u = raise_slots(r, up, w);
  ContractionPlan plan;
  plan.inputs = {{0, 1, 2, 3}, {1, 0, 4, 5}};
  plan.output = {2, 3, 4, 5};
  const std::vector<Tensor<S>> factors{u, u};
  return contract<S>(plan, factors);
}

/// Contracts all slots of `t` into the leading slots of `big`.
template <class S>
Tensor<S> contract_leading(const Tensor<S>& t, const Tensor<S>& big) {
  ContractionPlan plan;
  std::vector<Label> lead = identity_permutation(t.order());
  std::vector<Label> labels = lead;
  for (int s = t.order(); s < big.order(); ++s) {
    labels.push_back(s);
    plan.output.push_back(s);
  }
  plan.inputs = {lead, labels};
  const std::vector<Tensor<S>> factors{t, big};
  return contract<S>(plan, factors);
}

}  // namespace detail

/// 2 K_i^j K_j^i ω_ab - R^l_{ijk} R_l^{ijk} ω_ab + 4 K_i^j R^i_{jab} - 4 R^j_{iak} R_j^i_b^k,
/// every index raised through the first slot of ω^{..}. The last factor
/// carries its indices in slot order (j, ^i, b, ^k).
template <class S>
Tensor<S> expr1(const Tensor<S>& r, const Tensor<S>& k, const SymplecticForm& w) {
  if (r.order() != 4 || k.order() != 2 || r.dim() != w.dim() || k.dim() != w.dim())
    throw ShapeError("expr1: expects R of order 4 and K of order 2 in the form's dimension");
  const int d = w.dim();
  const Tensor<S> kr = raise_slot(k, 1, w);
  const Tensor<S> a = raise_slot(r, 0, w);
  const std::vector<int> s123{1, 2, 3}, s13{1, 3};
  const Tensor<S> b = raise_slots(r, s123, w);
  const Tensor<S> c = raise_slots(r, s13, w);

  S kk(0L), rr(0L);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) kk += kr.at({i, j}) * kr.at({j, i});
  for (std::size_t x = 0; x < a.size(); ++x) rr += a[x] * b[x];
  const S scalar_part = S(2L) * kk - rr;

  ContractionPlan p3;
  p3.inputs = {{0, 1}, {0, 1, 2, 3}};
  p3.output = {2, 3};
  const Tensor<S> t3 = contract<S>(p3, std::vector<Tensor<S>>{kr, a});
  // R^j_{iak} R_j^i_b^k with labels j=0, i=1, k=2, a=3, b=4.
  ContractionPlan p4;
  p4.inputs = {{0, 1, 3, 2}, {0, 1, 4, 2}};
  p4.output = {3, 4};
  const Tensor<S> t4 = contract<S>(p4, std::vector<Tensor<S>>{a, c});

  const Tensor<S> om = w.lower_as<S>();
  Tensor<S> out(d, 2);
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = scalar_part * om[x] + S(4L) * t3[x] - S(4L) * t4[x];
  return out;
}

/// R_{i1}^{i2 j1 k1} R_{i2}^{i1 j2 k2} (ω∧ω)_{j1 k1 j2 k2}.
template <class S>
S scalar_identity(const Tensor<S>& r, const SymplecticForm& w) {
  if (r.order() != 4 || r.dim() != w.dim()) throw ShapeError("scalar_identity: expects an order-4 tensor");
  if (w.dim() < 4) return S(0L);
  const Tensor<S> uu = detail::curvature_square(r, w);
  const Tensor<S> w2 = wedge_power(detail::omega_form<S>(w), 2).to_tensor();
  return detail::contract_leading(uu, w2)[0];
}

/// R_{i1}^{i2 j1 k1} R_{i2}^{i1 j2 k2} (ω∧ω∧ω)_{j1 k1 j2 k2 a b}.
template <class S>
Tensor<S> two_form_identity(const Tensor<S>& r, const SymplecticForm& w) {
  if (r.order() != 4 || r.dim() != w.dim()) throw ShapeError("two_form_identity: expects an order-4 tensor");
  if (w.dim() < 6) return Tensor<S>(w.dim(), 2);
  const Tensor<S> uu = detail::curvature_square(r, w);
  const Tensor<S> w3 = wedge_power(detail::omega_form<S>(w), 3).to_tensor();
  return detail::contract_leading(uu, w3);
}

/// Full alternation over (j_1, k_1, .., j_q, k_q) of
/// R^{i_q}_{i_1 j_1 k_1} R^{i_1}_{i_2 j_2 k_2} .. R^{i_{q-1}}_{i_q j_q k_q}, as a sparse form.
template <class S>
Form<S> chern_form(const Tensor<S>& r, const SymplecticForm& w, int q) {
  if (r.order() != 4 || r.dim() != w.dim()) throw ShapeError("chern_generator: expects an order-4 tensor");
  if (q < 1) throw std::invalid_argument("chern_generator: q must be >= 1");
  const int d = w.dim();
  Form<S> out(d, 2 * q);
  if (2 * q > d) return out;
  const Tensor<S> a = raise_slot(r, 0, w);
  // mats[j][k] is the endomorphism E(j, k)^x_y = R^x_{y j k}.
  std::vector<Matrix<S>> mats(static_cast<std::size_t>(d * d), Matrix<S>(d, d));
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) mats[static_cast<std::size_t>(j * d + k)](x, y) = a.at({x, y, j, k});
  // Each E(j, k) is antisymmetric in (j, k): keep orderings with j < k per
  // pair and weight by 2^q.
  std::vector<std::vector<int>> perms;
  for (auto& p : all_permutations(2 * q)) {
    bool ordered = true;
    for (int t = 0; t < q; ++t)
      if (p[static_cast<std::size_t>(2 * t)] > p[static_cast<std::size_t>(2 * t + 1)]) ordered = false;
    if (ordered) perms.push_back(std::move(p));
  }
  const S weight(static_cast<long>(1) << q);
  std::vector<int> slots(static_cast<std::size_t>(2 * q));
  for_each_combination(d, 2 * q, [&](std::span<const int> comb) {
    S total(0L);
    for (const auto& p : perms) {
      for (int s = 0; s < 2 * q; ++s) slots[static_cast<std::size_t>(s)] = comb[static_cast<std::size_t>(p[static_cast<std::size_t>(s)])];
      Matrix<S> prod = mats[static_cast<std::size_t>(slots[0] * d + slots[1])];
      for (int t = 1; t < q; ++t)
        prod = prod * mats[static_cast<std::size_t>(slots[static_cast<std::size_t>(2 * t)] * d + slots[static_cast<std::size_t>(2 * t + 1)])];
      S tr(0L);
      for (int x = 0; x < d; ++x) tr += prod(x, x);
      if (permutation_sign(p) > 0)
        total += tr;
      else
        total -= tr;
    }
    total *= weight;
    if (!is_zero(total)) out.add_to(Form<S>::mask_of(comb), total);
  });
  return out;
}

template <class S>
Tensor<S> chern_generator(const Tensor<S>& r, const SymplecticForm& w, int q) {
  return chern_form(r, w, q).to_tensor();
}

/// ⟨ω^{∧(k+p/2)}, c_k⟩ with c_k = chern_form(R, w, k). Zero when the wedge
/// power exceeds the dimension by at most 2; smaller dimensions are rejected.
template <class S>
Tensor<S> main_theorem_form(const Tensor<S>& r, const SymplecticForm& w, int p, int k) {
  if (p < 0 || p % 2 != 0) throw std::invalid_argument("main_theorem_form: p must be even and >= 0");
  if (k < 1) throw std::invalid_argument("main_theorem_form: k must be >= 1");
  const int d = w.dim();
  if (d < 2 * k + p - 2)
    throw std::invalid_argument("main_theorem_form: dimension " + std::to_string(d) + " is below 2k+p-2 = " +
                                std::to_string(2 * k + p - 2));
  if (d < 2 * k + p) return Tensor<S>(d, p);
  const Form<S> big = wedge_power(detail::omega_form<S>(w), k + p / 2);
  return pair_forms(big, chern_form(r, w, k), w).to_tensor();
}

/// A built-in natural tensor T(ω, ∇) evaluated from the curvature at a point.
struct NaturalExpression {
  using Exact = std::function<Tensor<Rational>(const Tensor<Rational>&, const SymplecticForm&)>;
  using Jet = std::function<Tensor<Dual<Rational>>(const Tensor<Dual<Rational>>&, const SymplecticForm&)>;

  std::string name;
  std::string description;
  int weight = 0;
  int order = 0;
  /// Smallest dimension where the evaluator is defined.
  int min_dim = 2;
  Exact exact;
  Jet jet;

  Tensor<Rational> operator()(const Tensor<Rational>& r, const SymplecticForm& w) const { return exact(r, w); }
};

/// Wraps a generic evaluator `f(R, w)` for both scalar types.
template <class F>
NaturalExpression make_natural(std::string name, std::string description, int weight, int order, int min_dim, F f) {
  NaturalExpression e;
  e.name = std::move(name);
  e.description = std::move(description);
  e.weight = weight;
  e.order = order;
  e.min_dim = min_dim;
  e.exact = [f](const Tensor<Rational>& r, const SymplecticForm& w) { return f(r, w); };
  e.jet = [f](const Tensor<Dual<Rational>>& r, const SymplecticForm& w) { return f(r, w); };
  return e;
}

/// omega, eq1, eq2, eq4, chern2, main-p0-k2, main-p2-k2, main-p4-k2.
const std::vector<NaturalExpression>& builtin_expressions();
/// Throws std::invalid_argument for unknown names.
const NaturalExpression& builtin(std::string_view name);

/// Relative constants between equivalent presentations, measured once
/// by exact pointwise ratios and frozen.
struct FrozenConstant {
  std::string name;
  std::string numerator;
  std::string denominator;
  Rational value;
  std::string note;
};
const std::vector<FrozenConstant>& frozen_constants();
const Rational& frozen_constant(std::string_view name);

/// If a == c·b componentwise for one rational c, returns c. Requires b != 0.
std::optional<Rational> exact_ratio(const Tensor<Rational>& a, const Tensor<Rational>& b);

/// (div T)_{a2..ap} = ω^{ki} (∇_i T)_{k a2..ap} at the origin, where T = E(R).
Tensor<Rational> divergence(const PolyFedosov& f, const NaturalExpression& e);

struct HomogeneityResult {
  bool pass = false;
  /// Weight δ with E(λ²ω) = λ^δ E(ω), when one exists in [-16, 16].
  std::optional<int> measured;
  bool degenerate = false;  // E vanished on the sample
};
/// Compares E on (λ²ω, same Γ^k_{ij}) against λ^δ E with δ = e.weight.
HomogeneityResult homogeneity_check(const NaturalExpression& e, const PolyFedosov& f, const Rational& lambda);

/// E(A·R) == A·E(R) for a symplectic A.
bool is_equivariant(const NaturalExpression& e, const Tensor<Rational>& r, const SymplecticForm& w,
                    const Matrix<Rational>& a);

}  // namespace fedo
