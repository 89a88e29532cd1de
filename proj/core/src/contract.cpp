#include "fedo/core/contract.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace fedo {

void ContractionPlan::validate() const {
  std::map<Label, int> count;
  for (const auto& in : inputs)
    for (Label l : in) ++count[l];
  std::map<Label, int> out_count;
  for (Label l : output) ++out_count[l];
  for (auto [l, c] : out_count) {
    if (c > 1) throw ShapeError("label " + std::to_string(l) + " repeated in output");
    auto it = count.find(l);
    if (it == count.end()) throw ShapeError("output label " + std::to_string(l) + " not present in inputs");
    if (it->second != 1) throw ShapeError("summed label " + std::to_string(l) + " listed in output");
  }
  for (auto [l, c] : count) {
    if (c > 2) throw ShapeError("label " + std::to_string(l) + " occurs more than twice");
    if (c == 1 && !out_count.count(l)) throw ShapeError("free label " + std::to_string(l) + " missing from output");
  }
}

namespace detail {

std::vector<std::size_t> slot_offsets(int dim, int order, std::span<const int> slots) {
  std::vector<std::size_t> offs{0};
  offs.reserve(ipow(dim, static_cast<int>(slots.size())));
  for (int s : slots) {
    const std::size_t stride = ipow(dim, order - 1 - s);
    std::vector<std::size_t> next;
    next.reserve(offs.size() * static_cast<size_t>(dim));
    for (auto o : offs)
      for (int v = 0; v < dim; ++v) next.push_back(o + static_cast<std::size_t>(v) * stride);
    offs.swap(next);
  }
  return offs;
}

}  // namespace detail

ContractionProgram ContractionProgram::compile(const ContractionPlan& plan, int dim, PlanOrder order,
                                               std::uint64_t seed) {
  plan.validate();
  ContractionProgram prog;
  prog.dim_ = dim;
  prog.inputs_ = static_cast<int>(plan.inputs.size());
  prog.output_order_ = static_cast<int>(plan.output.size());
  for (const auto& in : plan.inputs) prog.input_orders_.push_back(static_cast<int>(in.size()));

  struct Operand {
    int id;
    std::vector<Label> labels;
  };
  std::vector<Operand> live;
  int next_id = prog.inputs_;
  const double d = dim;

  auto emit = [&](detail::Step step, std::vector<Label> labels, double cost) {
    prog.steps_.push_back(std::move(step));
    prog.max_order_ = std::max(prog.max_order_, static_cast<int>(labels.size()));
    prog.cost_ += cost;
    return Operand{next_id++, std::move(labels)};
  };

  for (int i = 0; i < prog.inputs_; ++i) {
    Operand op{i, plan.inputs[static_cast<size_t>(i)]};
    // Labels repeated inside one factor are traced immediately.
    std::map<Label, std::vector<int>> where;
    for (int s = 0; s < static_cast<int>(op.labels.size()); ++s) where[op.labels[static_cast<size_t>(s)]].push_back(s);
    detail::TraceStep tr{op.id, {}, {}};
    std::vector<Label> kept;
    for (int s = 0; s < static_cast<int>(op.labels.size()); ++s) {
      const auto& w = where[op.labels[static_cast<size_t>(s)]];
      if (w.size() == 1) {
        tr.keep.push_back(s);
        kept.push_back(op.labels[static_cast<size_t>(s)]);
      } else if (w[0] == s) {
        tr.traced.emplace_back(w[0], w[1]);
      }
    }
    if (!tr.traced.empty()) {
      detail::Step st{detail::Step::Kind::Trace, std::move(tr), {}, {}};
      const double cost = std::pow(d, static_cast<double>(op.labels.size()) - static_cast<double>(st.trace.traced.size()));
      op = emit(std::move(st), std::move(kept), cost);
    }
    live.push_back(std::move(op));
  }

  std::mt19937_64 rng(seed);
  while (live.size() > 1) {
    struct Candidate {
      size_t i, j;
      int result_order;
      int shared;
    };
    std::vector<Candidate> cands;
    for (size_t i = 0; i < live.size(); ++i)
      for (size_t j = i + 1; j < live.size(); ++j) {
        int shared = 0;
        for (Label l : live[i].labels)
          if (std::find(live[j].labels.begin(), live[j].labels.end(), l) != live[j].labels.end()) ++shared;
        const int ro = static_cast<int>(live[i].labels.size() + live[j].labels.size()) - 2 * shared;
        cands.push_back({i, j, ro, shared});
      }
    const bool any_shared = std::any_of(cands.begin(), cands.end(), [](const Candidate& c) { return c.shared > 0; });
    if (any_shared)
      cands.erase(std::remove_if(cands.begin(), cands.end(), [](const Candidate& c) { return c.shared == 0; }),
                  cands.end());
    Candidate best = cands.front();
    if (order == PlanOrder::Shuffled) {
      best = cands[std::uniform_int_distribution<size_t>(0, cands.size() - 1)(rng)];
    } else {
      for (const auto& c : cands)
        if (c.result_order < best.result_order || (c.result_order == best.result_order && c.shared > best.shared))
          best = c;
    }

    const Operand& A = live[best.i];
    const Operand& B = live[best.j];
    detail::PairStep ps{A.id, B.id, {}, {}, {}, {}};
    std::vector<Label> result;
    for (int s = 0; s < static_cast<int>(A.labels.size()); ++s) {
      const Label l = A.labels[static_cast<size_t>(s)];
      auto it = std::find(B.labels.begin(), B.labels.end(), l);
      if (it == B.labels.end()) {
        ps.free_a.push_back(s);
        result.push_back(l);
      } else {
        ps.sum_a.push_back(s);
        ps.sum_b.push_back(static_cast<int>(it - B.labels.begin()));
      }
    }
    for (int s = 0; s < static_cast<int>(B.labels.size()); ++s) {
      const Label l = B.labels[static_cast<size_t>(s)];
      if (std::find(A.labels.begin(), A.labels.end(), l) == A.labels.end()) {
        ps.free_b.push_back(s);
        result.push_back(l);
      }
    }
    const double cost = std::pow(d, static_cast<double>(result.size() + ps.sum_a.size()));
    detail::Step st{detail::Step::Kind::Pair, {}, std::move(ps), {}};
    Operand merged = emit(std::move(st), std::move(result), cost);
    live.erase(live.begin() + static_cast<long>(best.j));
    live.erase(live.begin() + static_cast<long>(best.i));
    live.push_back(std::move(merged));
  }

  if (live.empty()) {
    prog.result_ = -1;
    return prog;
  }
  Operand& last = live.front();
  if (last.labels != plan.output) {
    Permutation perm;
    for (Label l : plan.output)
      perm.push_back(static_cast<int>(std::find(last.labels.begin(), last.labels.end(), l) - last.labels.begin()));
    detail::Step st{detail::Step::Kind::Permute, {}, {}, {last.id, std::move(perm)}};
    last = emit(std::move(st), plan.output, std::pow(d, static_cast<double>(plan.output.size())));
  }
  prog.result_ = last.id;
  return prog;
}

}  // namespace fedo
