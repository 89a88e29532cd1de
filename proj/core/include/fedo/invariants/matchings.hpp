#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "fedo/core/contract.hpp"
#include "fedo/core/tensor.hpp"
#include "fedo/symplectic/symplectic.hpp"

namespace fedo {

/// Perfect matching of the slots {0..N-1}, encoding the invariant
///   ω_σ(T) = sign · Σ T(i_0..i_{N-1}) Π_{(a,b)} B(i_a, i_b)
/// for an antisymmetric pairing B. Canonical form: a < b in each pair,
/// pairs sorted by first slot; every endpoint swap flips `sign`.
class Matching {
 public:
  Matching() = default;
  /// Canonicalizes arbitrary ordered pairs, folding swaps into the sign.
  static Matching from_pairs(std::vector<std::pair<int, int>> pairs, int sign = 1);

  int order() const { return 2 * static_cast<int>(pairs_.size()); }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  int sign() const { return sign_; }
  /// Same matching with sign +1.
  Matching unsigned_form() const {
    Matching m = *this;
    m.sign_ = 1;
    return m;
  }
  /// Matching with slots relabeled i -> perm[i].
  Matching relabeled(std::span<const int> perm) const;

  /// "(1 2)(3 4)" with 1-based slots; sign not included.
  std::string str() const;
  static Matching parse(const std::string& text);

  friend bool operator==(const Matching& a, const Matching& b) {
    return a.pairs_ == b.pairs_ && a.sign_ == b.sign_;
  }
  friend bool operator<(const Matching& a, const Matching& b) {
    return std::tie(a.pairs_, a.sign_) < std::tie(b.pairs_, b.sign_);
  }

 private:
  std::vector<std::pair<int, int>> pairs_;
  int sign_ = 1;
};

/// All (N-1)!! canonical matchings of N slots; empty for odd N. N = 0 gives
/// the single empty matching.
std::vector<Matching> enumerate_matchings(int n);

/// Which bilinear form pairs two slots.
enum class Pairing {
  Vectors,    ///< slots hold vectors, paired by ω_{ab}
  Covectors,  ///< slots hold covectors, paired by ω^{ab}
};

/// Evaluates a fixed list of matchings on factored inputs with a fixed
/// layout. Each pair is realized by twisting one endpoint slot with the
/// pairing matrix, so the remaining network is a pure trace/contraction,
/// compiled once per matching.
template <class S>
class MatchingEvaluator {
 public:
  /// `factor_orders[f]` is the order of factor f; `factor_source[f]` names
  /// which distinct input tensor factor f is (repeated factors share one).
  MatchingEvaluator(std::vector<Matching> matchings, std::vector<int> factor_orders, std::vector<int> factor_source,
                    int dim, const SymplecticForm& w, Pairing pairing);

  const std::vector<Matching>& matchings() const { return matchings_; }
  int dim() const { return dim_; }

  /// Values of every matching on ⊗_f sources[factor_source[f]].
  std::vector<S> evaluate(const std::vector<Tensor<S>>& sources) const;
  /// Value of matching i only.
  S evaluate_one(std::size_t i, const std::vector<Tensor<S>>& sources) const;

 private:
  struct Compiled {
    int sign = 1;
    std::vector<std::uint32_t> masks;  // twisted slots per factor
    ContractionProgram program;
  };
  using TwistCache = std::map<std::pair<int, std::uint32_t>, Tensor<S>>;
  const Tensor<S>& twisted(int factor, std::uint32_t mask, const std::vector<Tensor<S>>& sources, TwistCache& cache) const;
  S run(const Compiled& c, const std::vector<Tensor<S>>& sources, TwistCache& cache) const;

  std::vector<Matching> matchings_;
  std::vector<int> factor_orders_;
  std::vector<int> factor_source_;
  int dim_;
  Tensor<S> pairing_;
  std::vector<Compiled> compiled_;
};

/// Single-matching evaluation on a factored tensor.
template <class S>
S eval_matching(const Matching& m, const FactoredTensor<S>& input, const SymplecticForm& w,
                Pairing pairing = Pairing::Vectors) {
  std::vector<int> orders, source;
  std::vector<Tensor<S>> sources;
  for (const auto& f : input.factors()) {
    if (f.order() == 0) continue;
    orders.push_back(f.order());
    source.push_back(static_cast<int>(sources.size()));
    sources.push_back(f);
  }
  S scale(1L);
  for (const auto& f : input.factors())
    if (f.order() == 0) scale *= f.value();
  if (input.order() != m.order()) throw ShapeError("eval_matching: order mismatch");
  if (input.order() > 0 && input.dim() != w.dim()) throw ShapeError("eval_matching: dimension mismatch");
  MatchingEvaluator<S> ev({m}, orders, source, w.dim(), w, pairing);
  return scale * ev.evaluate_one(0, sources);
}

template <class S>
S eval_matching(const Matching& m, const Tensor<S>& input, const SymplecticForm& w,
                Pairing pairing = Pairing::Vectors) {
  return eval_matching(m, FactoredTensor<S>({input}), w, pairing);
}

/// Formal Σ_{σ ∈ S_I} sgn(σ) ω_σ where σ permutes the listed slots of the
/// base matching (0 1)(2 3)..., collected over canonical matchings.
std::map<Matching, Rational> sft_alternation(int p, std::span<const int> slots);

/// Evaluates a formal combination of matchings on vectors v_0..v_{p-1}.
template <class S>
S eval_combination(const std::map<Matching, Rational>& combo, const std::vector<Tensor<S>>& vectors,
                   const SymplecticForm& w) {
  if (vectors.empty() && !combo.empty() && combo.begin()->first.order() != 0)
    throw ShapeError("eval_combination: no vectors given");
  std::vector<Matching> ms;
  for (const auto& [m, c] : combo) ms.push_back(m);
  std::vector<int> orders(vectors.size(), 1), source(vectors.size());
  for (size_t i = 0; i < vectors.size(); ++i) source[i] = static_cast<int>(i);
  MatchingEvaluator<S> ev(ms, orders, source, w.dim(), w, Pairing::Vectors);
  const auto vals = ev.evaluate(vectors);
  S acc(0L);
  size_t i = 0;
  for (const auto& [m, c] : combo) acc += from_rational<S>(c) * vals[i++];
  return acc;
}

// ---------------------------------------------------------------------------

template <class S>
MatchingEvaluator<S>::MatchingEvaluator(std::vector<Matching> matchings, std::vector<int> factor_orders,
                                        std::vector<int> factor_source, int dim, const SymplecticForm& w,
                                        Pairing pairing)
    : matchings_(std::move(matchings)),
      factor_orders_(std::move(factor_orders)),
      factor_source_(std::move(factor_source)),
      dim_(dim),
      pairing_(pairing == Pairing::Vectors ? w.lower_as<S>() : w.upper_as<S>()) {
  if (w.dim() != dim) throw ShapeError("matching evaluator: dimension mismatch");
  if (factor_orders_.size() != factor_source_.size()) throw ShapeError("matching evaluator: layout mismatch");
  int total = 0;
  std::vector<std::pair<int, int>> owner;  // slot -> (factor, local slot)
  for (size_t f = 0; f < factor_orders_.size(); ++f) {
    if (factor_orders_[f] > 31) throw ShapeError("matching evaluator: factor order too large");
    for (int s = 0; s < factor_orders_[f]; ++s) owner.emplace_back(static_cast<int>(f), s);
    total += factor_orders_[f];
  }
  for (const auto& m : matchings_) {
    if (m.order() != total) throw ShapeError("matching evaluator: matching order differs from input order");
    Compiled c;
    c.sign = m.sign();
    c.masks.assign(factor_orders_.size(), 0);
    ContractionPlan plan;
    for (int o : factor_orders_) plan.inputs.emplace_back(static_cast<size_t>(o), -1);
    Label next = 0;
    for (auto [a, b] : m.pairs()) {
      const auto [fa, sa] = owner[static_cast<size_t>(a)];
      const auto [fb, sb] = owner[static_cast<size_t>(b)];
      // Twist the endpoint in the smaller factor; twisting the first
      // endpoint uses Bᵀ = -B.
      const bool twist_a = factor_orders_[static_cast<size_t>(fa)] < factor_orders_[static_cast<size_t>(fb)];
      if (twist_a) {
        c.masks[static_cast<size_t>(fa)] |= std::uint32_t{1} << sa;
        c.sign = -c.sign;
      } else {
        c.masks[static_cast<size_t>(fb)] |= std::uint32_t{1} << sb;
      }
      plan.inputs[static_cast<size_t>(fa)][static_cast<size_t>(sa)] = next;
      plan.inputs[static_cast<size_t>(fb)][static_cast<size_t>(sb)] = next;
      ++next;
    }
    c.program = ContractionProgram::compile(plan, dim_);
    compiled_.push_back(std::move(c));
  }
}

template <class S>
const Tensor<S>& MatchingEvaluator<S>::twisted(int factor, std::uint32_t mask, const std::vector<Tensor<S>>& sources,
                                               TwistCache& cache) const {
  const int src = factor_source_[static_cast<size_t>(factor)];
  const auto key = std::make_pair(src, mask);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  // B(i, j) Y_j summed over j: contract_slot with B itself.
  Tensor<S> t = sources[static_cast<size_t>(src)];
  for (int s = 0; s < t.order(); ++s)
    if (mask & (std::uint32_t{1} << s)) t = contract_slot(t, s, pairing_);
  return cache.emplace(key, std::move(t)).first->second;
}

template <class S>
S MatchingEvaluator<S>::run(const Compiled& c, const std::vector<Tensor<S>>& sources, TwistCache& cache) const {
  std::vector<const Tensor<S>*> ptrs;
  for (size_t f = 0; f < factor_orders_.size(); ++f) {
    const auto& t = sources.at(static_cast<size_t>(factor_source_[f]));
    if (t.order() != factor_orders_[f] || t.dim() != dim_) throw ShapeError("matching evaluator: factor shape mismatch");
    ptrs.push_back(&twisted(static_cast<int>(f), c.masks[f], sources, cache));
  }
  S v = c.program.template run<S>(std::span<const Tensor<S>* const>(ptrs)).value();
  return c.sign > 0 ? v : -v;
}

template <class S>
std::vector<S> MatchingEvaluator<S>::evaluate(const std::vector<Tensor<S>>& sources) const {
  TwistCache cache;
  std::vector<S> out;
  out.reserve(compiled_.size());
  for (const auto& c : compiled_) out.push_back(run(c, sources, cache));
  return out;
}

template <class S>
S MatchingEvaluator<S>::evaluate_one(std::size_t i, const std::vector<Tensor<S>>& sources) const {
  TwistCache cache;
  return run(compiled_.at(i), sources, cache);
}

}  // namespace fedo
