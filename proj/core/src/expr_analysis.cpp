#include <algorithm>
#include <cmath>
#include <map>

#include "fedo/core/forms.hpp"
#include "fedo/core/random.hpp"
#include "fedo/expr/expr.hpp"

namespace fedo::expr {

namespace {

struct Slot {
  std::string name;
  bool upper;
  SourcePos pos;
};

struct TermInfo {
  std::vector<std::vector<Slot>> slots;  // per factor
  std::vector<FreeIndex> free;           // first-appearance order
  std::vector<WeightReport> bodies;      // per factor, alt only
  int weight = 0;
};

TermInfo analyze_term(const Term& t) {
  TermInfo info;
  for (const Factor& f : t.factors) {
    std::vector<Slot> slots;
    WeightReport body;
    if (f.is_alt) {
      body = infer(*f.body);
      info.weight += body.delta;
      if (f.indices.size() < 2) throw ExprError(ExprError::Kind::Syntax, "alt needs at least two indices", f.pos);
      for (std::size_t i = 0; i < f.indices.size(); ++i) {
        const Index& ix = f.indices[i];
        for (std::size_t j = 0; j < i; ++j)
          if (f.indices[j].name == ix.name)
            throw ExprError(ExprError::Kind::Variance, "index '" + ix.name + "' listed twice in alt", ix.pos);
        auto it = std::find_if(body.free.begin(), body.free.end(), [&](const FreeIndex& fi) { return fi.name == ix.name; });
        if (it == body.free.end())
          throw ExprError(ExprError::Kind::Variance, "alt index '" + ix.name + "' is not a free index of its body", ix.pos);
        if (ix.marked && ix.upper != it->upper)
          throw ExprError(ExprError::Kind::Variance, "alt index '" + ix.name + "' has the wrong variance", ix.pos);
      }
      for (const auto& fi : body.free) slots.push_back({fi.name, fi.upper, f.pos});
    } else {
      for (std::size_t s = 0; s < f.indices.size(); ++s) {
        const Index& ix = f.indices[s];
        slots.push_back({ix.name, ix.upper, ix.pos});
        const bool natural = symbol_natural_upper(f.symbol, static_cast<int>(s));
        if (ix.upper != natural) info.weight += ix.upper ? -2 : 2;
      }
      info.weight += symbol_weight(f.symbol);
    }
    info.slots.push_back(std::move(slots));
    info.bodies.push_back(std::move(body));
  }

  struct Use {
    int count = 0;
    bool upper = false;
    int order = 0;
  };
  std::map<std::string, Use> uses;
  int seen = 0;
  for (const auto& fs : info.slots)
    for (const Slot& s : fs) {
      Use& u = uses[s.name];
      if (u.count == 0) {
        u.upper = s.upper;
        u.order = seen++;
      } else if (u.count == 1) {
        if (u.upper == s.upper)
          throw ExprError(ExprError::Kind::Variance,
                          "index '" + s.name + "' repeated with the same variance; insert omegaInv or omega explicitly",
                          s.pos);
      } else {
        throw ExprError(ExprError::Kind::Variance, "index '" + s.name + "' used more than twice", s.pos);
      }
      ++u.count;
    }
  std::vector<std::pair<int, FreeIndex>> free;
  for (const auto& [name, u] : uses)
    if (u.count == 1) free.push_back({u.order, FreeIndex{name, u.upper}});
  std::sort(free.begin(), free.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& f : free) info.free.push_back(std::move(f.second));
  return info;
}

bool same_free_set(const std::vector<FreeIndex>& a, const std::vector<FreeIndex>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a)
    if (std::find(b.begin(), b.end(), x) == b.end()) return false;
  return true;
}

template <class S>
Tensor<S> factor_tensor(const CompiledFactor& f, const Bindings<S>& b, PlanOrder order, std::uint64_t seed) {
  if (f.is_alt) {
    const Tensor<S> body = evaluate<S>(*f.body, b, order, seed);
    return alternate(body, f.alt_slots);
  }
  const int dim = b.w.dim();
  Tensor<S> t;
  switch (f.symbol) {
    case Symbol::Omega:
      t = b.w.template lower_as<S>();
      break;
    case Symbol::OmegaInv:
      t = b.w.template upper_as<S>();
      break;
    case Symbol::Delta:
      t = kronecker<S>(dim);
      break;
    case Symbol::R:
      if (!b.r) throw ExprError(ExprError::Kind::Binding, "no binding for R");
      if (b.r->order() != 4 || b.r->dim() != dim)
        throw ExprError(ExprError::Kind::Binding, "R binding must be an order-4 tensor in dim " + std::to_string(dim));
      t = *b.r;
      break;
    case Symbol::K:
      if (!b.k) throw ExprError(ExprError::Kind::Binding, "no binding for K");
      if (b.k->order() != 2 || b.k->dim() != dim)
        throw ExprError(ExprError::Kind::Binding, "K binding must be an order-2 tensor in dim " + std::to_string(dim));
      t = *b.k;
      break;
  }
  for (int s = 0; s < static_cast<int>(f.upper.size()); ++s) {
    const bool natural = symbol_natural_upper(f.symbol, s);
    if (f.upper[static_cast<std::size_t>(s)] == natural) continue;
    t = natural ? lower_slot(t, s, b.w) : raise_slot(t, s, b.w);
  }
  return t;
}

template <class S>
Tensor<S> evaluate_term(const CompiledTerm& term, const Bindings<S>& b, PlanOrder order, std::uint64_t seed) {
  std::vector<Tensor<S>> tensors;
  tensors.reserve(term.factors.size());
  for (std::size_t i = 0; i < term.factors.size(); ++i)
    tensors.push_back(factor_tensor(term.factors[i], b, order, derive_seed({seed, i})));
  std::vector<const Tensor<S>*> ptrs;
  for (const auto& t : tensors) ptrs.push_back(&t);
  const auto program = ContractionProgram::compile(term.plan, b.w.dim(), order, seed);
  Tensor<S> r = program.run(std::span<const Tensor<S>* const>(ptrs));
  if (!(term.coef == Rational(1))) {
    const S c = from_rational<S>(term.coef);
    for (auto& v : r.data()) v *= c;
  }
  return r;
}

}  // namespace

WeightReport infer(const Expr& e) {
  if (e.terms.empty()) throw ExprError(ExprError::Kind::Syntax, "empty expression");
  WeightReport rep;
  for (std::size_t t = 0; t < e.terms.size(); ++t) {
    const TermInfo info = analyze_term(e.terms[t]);
    if (t == 0) {
      rep.delta = info.weight;
      rep.free = info.free;
      continue;
    }
    if (!same_free_set(info.free, rep.free))
      throw ExprError(ExprError::Kind::Consistency, "term " + std::to_string(t + 1) + " has different free indices",
                      e.terms[t].pos);
    if (info.weight != rep.delta)
      throw ExprError(ExprError::Kind::Consistency,
                      "term " + std::to_string(t + 1) + " has weight " + std::to_string(info.weight) + ", expected " +
                          std::to_string(rep.delta),
                      e.terms[t].pos);
  }
  rep.p = static_cast<int>(std::count_if(rep.free.begin(), rep.free.end(), [](const FreeIndex& f) { return !f.upper; }));
  return rep;
}

CompiledExpr compile(const Expr& e) {
  const WeightReport rep = infer(e);
  CompiledExpr c;
  c.free = rep.free;
  c.weight = rep.delta;
  for (const Term& t : e.terms) {
    const TermInfo info = analyze_term(t);
    CompiledTerm ct;
    ct.coef = t.coef;
    std::map<std::string, Label> labels;
    auto label_of = [&](const std::string& name) {
      auto [it, inserted] = labels.try_emplace(name, static_cast<Label>(labels.size()));
      return it->second;
    };
    for (std::size_t f = 0; f < t.factors.size(); ++f) {
      const Factor& fac = t.factors[f];
      CompiledFactor cf;
      cf.is_alt = fac.is_alt;
      cf.symbol = fac.symbol;
      std::vector<Label> in;
      for (const Slot& s : info.slots[f]) {
        cf.upper.push_back(s.upper);
        in.push_back(label_of(s.name));
      }
      if (fac.is_alt) {
        auto body = std::make_shared<CompiledExpr>(compile(*fac.body));
        for (const Index& ix : fac.indices)
          for (std::size_t k = 0; k < body->free.size(); ++k)
            if (body->free[k].name == ix.name) cf.alt_slots.push_back(static_cast<int>(k));
        cf.body = std::move(body);
      }
      ct.plan.inputs.push_back(std::move(in));
      ct.factors.push_back(std::move(cf));
    }
    for (const auto& fi : c.free) ct.plan.output.push_back(labels.at(fi.name));
    ct.plan.validate();
    c.terms.push_back(std::move(ct));
  }
  return c;
}

int CompiledExpr::max_intermediate_order() const {
  int best = 0;
  for (const auto& t : terms) {
    best = std::max(best, ContractionProgram::compile(t.plan, 2).max_intermediate_order());
    for (const auto& f : t.factors) {
      best = std::max(best, static_cast<int>(f.upper.size()));
      if (f.body) best = std::max(best, f.body->max_intermediate_order());
    }
  }
  return best;
}

template <class S>
Tensor<S> evaluate(const CompiledExpr& c, const Bindings<S>& b, PlanOrder order, std::uint64_t seed) {
  Tensor<S> sum(b.w.dim(), c.order());
  for (std::size_t t = 0; t < c.terms.size(); ++t) {
    const Tensor<S> v = evaluate_term(c.terms[t], b, order, derive_seed({seed, 0x7465726dULL, t}));
    for (std::size_t x = 0; x < sum.size(); ++x) sum[x] += v[x];
  }
  return sum;
}

template Tensor<Rational> evaluate<Rational>(const CompiledExpr&, const Bindings<Rational>&, PlanOrder, std::uint64_t);
template Tensor<double> evaluate<double>(const CompiledExpr&, const Bindings<double>&, PlanOrder, std::uint64_t);
template Tensor<Dual<Rational>> evaluate<Dual<Rational>>(const CompiledExpr&, const Bindings<Dual<Rational>>&,
                                                         PlanOrder, std::uint64_t);

FloatZeroTest float_zero_test(const CompiledExpr& c, const Bindings<double>& b) {
  Tensor<double> sum(b.w.dim(), c.order());
  Tensor<double> mag(b.w.dim(), c.order());
  for (std::size_t t = 0; t < c.terms.size(); ++t) {
    const Tensor<double> v = evaluate_term(c.terms[t], b, PlanOrder::Greedy, 0);
    for (std::size_t x = 0; x < sum.size(); ++x) {
      sum[x] += v[x];
      mag[x] += std::abs(v[x]);
    }
  }
  FloatZeroTest res;
  for (std::size_t x = 0; x < sum.size(); ++x) {
    res.max_value = std::max(res.max_value, std::abs(sum[x]));
    res.max_term_sum = std::max(res.max_term_sum, mag[x]);
    if (std::abs(sum[x]) > 1e-9 * mag[x]) res.vanishes = false;
  }
  return res;
}

}  // namespace fedo::expr
