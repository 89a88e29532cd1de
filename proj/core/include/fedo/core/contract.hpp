#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fedo/core/tensor.hpp"

namespace fedo {

using Label = int;

/// Einstein-summation description: one label list per factor plus the
/// output label order. A label occurs once (free, must be in the output) or
/// twice (summed, must not be in the output).
struct ContractionPlan {
  std::vector<std::vector<Label>> inputs;
  std::vector<Label> output;

  /// Throws ShapeError if a label occurs more than twice, a summed label is
  /// listed in the output, or a free label is missing from it.
  void validate() const;
};

enum class PlanOrder {
  Greedy,    ///< smallest intermediate first
  Shuffled,  ///< random valid order (used to check order independence)
};

namespace detail {

struct TraceStep {
  int src;
  std::vector<int> keep;                        // surviving slots in order
  std::vector<std::pair<int, int>> traced;      // slot pairs summed together
};

struct PairStep {
  int a, b;
  std::vector<int> free_a, free_b;    // result = free_a ++ free_b
  std::vector<int> sum_a, sum_b;      // matched summed slots
};

struct PermuteStep {
  int src;
  Permutation perm;
};

struct Step {
  enum class Kind { Trace, Pair, Permute } kind;
  TraceStep trace;
  PairStep pair;
  PermuteStep permute;
};

std::vector<std::size_t> slot_offsets(int dim, int order, std::span<const int> slots);

}  // namespace detail

/// A contraction plan compiled into a sequence of traces, pairwise
/// contractions and a final permutation. Reusable across inputs with the
/// same shapes.
class ContractionProgram {
 public:
  static ContractionProgram compile(const ContractionPlan& plan, int dim, PlanOrder order = PlanOrder::Greedy,
                                    std::uint64_t seed = 0);

  int input_count() const { return inputs_; }
  int output_order() const { return output_order_; }
  /// Largest order among intermediate and final results.
  int max_intermediate_order() const { return max_order_; }
  /// Sum over steps of (output size * summed size), in scalar multiplications.
  double estimated_cost() const { return cost_; }

  template <class S>
  Tensor<S> run(std::span<const Tensor<S>* const> factors) const;

 private:
  int dim_ = 0;
  int inputs_ = 0;
  int output_order_ = 0;
  int max_order_ = 0;
  double cost_ = 0;
  int result_ = -1;
  std::vector<int> input_orders_;
  std::vector<detail::Step> steps_;
};

template <class S>
Tensor<S> contract(const ContractionPlan& plan, std::span<const Tensor<S>* const> factors,
                   PlanOrder order = PlanOrder::Greedy, std::uint64_t seed = 0) {
  int dim = 0;
  for (const auto* f : factors)
    if (f->order() > 0) {
      if (dim && f->dim() != dim) throw ShapeError("contract: factors have different dims");
      dim = f->dim();
    }
  return ContractionProgram::compile(plan, dim, order, seed).run(factors);
}

template <class S>
Tensor<S> contract(const ContractionPlan& plan, const std::vector<Tensor<S>>& factors,
                   PlanOrder order = PlanOrder::Greedy, std::uint64_t seed = 0) {
  std::vector<const Tensor<S>*> ptrs;
  for (const auto& f : factors) ptrs.push_back(&f);
  return contract<S>(plan, std::span<const Tensor<S>* const>(ptrs), order, seed);
}

/// Contraction where some inputs are factored: each factored input's labels
/// are split across its factors, so the product is never formed densely.
template <class S>
Tensor<S> contract(const ContractionPlan& plan, const std::vector<FactoredTensor<S>>& inputs,
                   PlanOrder order = PlanOrder::Greedy) {
  if (plan.inputs.size() != inputs.size()) throw ShapeError("contract: plan/input count mismatch");
  ContractionPlan flat;
  flat.output = plan.output;
  std::vector<const Tensor<S>*> ptrs;
  for (size_t i = 0; i < inputs.size(); ++i) {
    if (static_cast<int>(plan.inputs[i].size()) != inputs[i].order())
      throw ShapeError("contract: label arity does not match factored order");
    size_t pos = 0;
    for (const auto& f : inputs[i].factors()) {
      flat.inputs.emplace_back(plan.inputs[i].begin() + static_cast<long>(pos),
                               plan.inputs[i].begin() + static_cast<long>(pos + static_cast<size_t>(f.order())));
      pos += static_cast<size_t>(f.order());
      ptrs.push_back(&f);
    }
  }
  return contract<S>(flat, std::span<const Tensor<S>* const>(ptrs), order);
}

// ---------------------------------------------------------------------------

template <class S>
Tensor<S> ContractionProgram::run(std::span<const Tensor<S>* const> factors) const {
  if (static_cast<int>(factors.size()) != inputs_) throw ShapeError("contract: wrong number of factors");
  for (int i = 0; i < inputs_; ++i) {
    const auto& f = *factors[static_cast<size_t>(i)];
    if (f.order() != input_orders_[static_cast<size_t>(i)])
      throw ShapeError("contract: label arity does not match factor order");
    if (f.order() > 0 && f.dim() != dim_) throw ShapeError("contract: dimension mismatch");
  }
  if (result_ < 0) return Tensor<S>::scalar(S(1L), dim_);
  std::vector<Tensor<S>> temps(steps_.size());
  auto operand = [&](int id) -> const Tensor<S>& {
    return id < inputs_ ? *factors[static_cast<size_t>(id)] : temps[static_cast<size_t>(id - inputs_)];
  };

  for (size_t si = 0; si < steps_.size(); ++si) {
    const auto& step = steps_[si];
    switch (step.kind) {
      case detail::Step::Kind::Trace: {
        const auto& st = step.trace;
        const auto& src = operand(st.src);
        const auto keep_off = detail::slot_offsets(dim_, src.order(), st.keep);
        std::vector<std::size_t> tr_off{0};
        for (auto [x, y] : st.traced) {
          const std::size_t s = src.stride(x) + src.stride(y);
          std::vector<std::size_t> next;
          next.reserve(tr_off.size() * static_cast<size_t>(dim_));
          for (auto o : tr_off)
            for (int v = 0; v < dim_; ++v) next.push_back(o + static_cast<std::size_t>(v) * s);
          tr_off.swap(next);
        }
        Tensor<S> out(dim_, static_cast<int>(st.keep.size()));
        for (std::size_t i = 0; i < keep_off.size(); ++i) {
          S acc(0L);
          for (auto o : tr_off) acc += src[keep_off[i] + o];
          out[i] = std::move(acc);
        }
        temps[si] = std::move(out);
        break;
      }
      case detail::Step::Kind::Pair: {
        const auto& st = step.pair;
        const auto& A = operand(st.a);
        const auto& B = operand(st.b);
        const auto fa = detail::slot_offsets(dim_, A.order(), st.free_a);
        const auto fb = detail::slot_offsets(dim_, B.order(), st.free_b);
        const auto ca = detail::slot_offsets(dim_, A.order(), st.sum_a);
        const auto cb = detail::slot_offsets(dim_, B.order(), st.sum_b);
        Tensor<S> out(dim_, static_cast<int>(st.free_a.size() + st.free_b.size()));
        std::size_t k = 0;
        const std::size_t nc = ca.size();
        for (std::size_t ia = 0; ia < fa.size(); ++ia) {
          const std::size_t oa = fa[ia];
          for (std::size_t ib = 0; ib < fb.size(); ++ib) {
            const std::size_t ob = fb[ib];
            S acc(0L);
            for (std::size_t t = 0; t < nc; ++t) acc += A[oa + ca[t]] * B[ob + cb[t]];
            out[k++] = std::move(acc);
          }
        }
        temps[si] = std::move(out);
        break;
      }
      case detail::Step::Kind::Permute: {
        temps[si] = permute_slots(operand(step.permute.src), step.permute.perm);
        break;
      }
    }
  }
  Tensor<S> out = result_ < inputs_ ? *factors[static_cast<size_t>(result_)] : std::move(temps[static_cast<size_t>(result_ - inputs_)]);
  if (out.order() == 0 && out.dim() != dim_) out = Tensor<S>::scalar(out.value(), dim_);
  return out;
}

}  // namespace fedo
