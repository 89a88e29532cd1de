#include "fedo/invariants/space_dim.hpp"

#include <functional>
#include <sstream>
#include <type_traits>

#include "fedo/core/linalg.hpp"
#include "fedo/core/parallel.hpp"
#include "fedo/core/random.hpp"
#include "fedo/symmetry/symmetry.hpp"

namespace fedo {

std::string SpaceSpec::str() const {
  std::ostringstream os;
  os << "p=" << p << " weight=" << delta << " dim=" << dim();
  return os.str();
}

int tuple_order(const SolutionTuple& d, int p) {
  int n = p;
  for (size_t i = 0; i < d.size(); ++i) n += (4 + static_cast<int>(i)) * d[i];
  return n;
}

std::string tuple_str(const SolutionTuple& d) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << ')';
  return os.str();
}

std::vector<SolutionTuple> weight_solutions(int p, int delta, int r_max) {
  const int target = p - delta;
  if (target < 0) return {};
  if (r_max < 0) r_max = target;
  std::vector<SolutionTuple> out;
  SolutionTuple cur(static_cast<size_t>(r_max), 0);
  std::function<void(int, int)> rec = [&](int i, int remaining) {
    if (i == r_max) {
      if (remaining != 0) return;
      SolutionTuple t = cur;
      while (!t.empty() && t.back() == 0) t.pop_back();
      out.push_back(std::move(t));
      return;
    }
    const int w = i + 2;
    for (int di = 0; di * w <= remaining; ++di) {
      cur[static_cast<size_t>(i)] = di;
      rec(i + 1, remaining - di * w);
    }
    cur[static_cast<size_t>(i)] = 0;
  };
  rec(0, target);
  std::sort(out.begin(), out.end());
  return out;
}

void validate_spec(const SpaceSpec& spec) {
  if (spec.delta % 2 != 0) throw std::invalid_argument("weight must be even, got " + std::to_string(spec.delta));
  if (spec.p < 0) throw std::invalid_argument("p must be non-negative");
  if (spec.n < 1) throw std::invalid_argument("dimension must be at least 2");
  if (spec.dim() > kMaxSpaceDim) throw CapError("dimension " + std::to_string(spec.dim()) + " exceeds cap " + std::to_string(kMaxSpaceDim));
  for (const auto& t : weight_solutions(spec.p, spec.delta)) {
    const int order = tuple_order(t, spec.p);
    if (order % 2 != 0) continue;
    if (order > kMaxMatchingOrder)
      throw CapError("tuple " + tuple_str(t) + " has order " + std::to_string(order) + " above cap " +
                     std::to_string(kMaxMatchingOrder));
    for (size_t i = 0; i < t.size(); ++i)
      if (t[i] > 0 && static_cast<int>(i) + 1 > kMaxNormalOrder)
        throw CapError("tuple " + tuple_str(t) + " needs normal tensors of order above cap");
  }
}

SampleLayout sample_layout(const SolutionTuple& d, int p) {
  SampleLayout l;
  int src = 0;
  for (size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0) continue;
    for (int c = 0; c < d[i]; ++c) {
      l.orders.push_back(static_cast<int>(i) + 4);
      l.source.push_back(src);
    }
    l.source_kind.push_back(static_cast<int>(i) + 1);
    ++src;
  }
  for (int k = 0; k < p; ++k) {
    l.orders.push_back(1);
    l.source.push_back(src++);
    l.source_kind.push_back(0);
  }
  return l;
}

namespace {

struct TupleContext {
  SolutionTuple tuple;
  int p = 0;
  int dim = 0;
  int order = 0;
  SampleLayout layout;
  std::vector<SubspaceProjector> projectors;  // per source, unused for covectors
  std::uint64_t key = 0;

  TupleContext(const SolutionTuple& t, int p_, int n) : tuple(t), p(p_), dim(2 * n), order(tuple_order(t, p_)) {
    layout = sample_layout(t, p);
    for (int kind : layout.source_kind) projectors.push_back(kind > 0 ? normal_projector(kind, n) : curvature_projector(1));
    std::vector<std::uint64_t> keys{static_cast<std::uint64_t>(p)};
    for (int x : t) keys.push_back(static_cast<std::uint64_t>(x));
    key = derive_seed(keys);
  }

  template <class F>
  std::vector<Tensor<F>> field_sources(std::uint64_t seed, std::uint64_t batch, std::uint64_t index) const {
    Rng rng = make_rng({seed, key, batch, index, static_cast<std::uint64_t>(dim)});
    std::vector<Tensor<F>> out;
    for (size_t s = 0; s < layout.source_kind.size(); ++s)
      out.push_back(layout.source_kind[s] > 0 ? projectors[s].template random_field_element<F>(rng)
                                              : random_field_tensor<F>(dim, 1, rng));
    return out;
  }

  std::vector<Tensor<Rational>> rational_sources(std::uint64_t seed) const {
    std::vector<Tensor<Rational>> out;
    for (size_t s = 0; s < layout.source_kind.size(); ++s) {
      const std::uint64_t sub = derive_seed({seed, key, s, static_cast<std::uint64_t>(dim)});
      if (layout.source_kind[s] > 0) {
        out.push_back(projectors[s].random_element<Rational>(sub));
      } else {
        Rng rng(sub);
        out.push_back(random_integer_tensor<Rational>(dim, 1, rng));
      }
    }
    return out;
  }
};

template <class F>
struct RankRun {
  long rank = 0;
  int used = 0;
  std::vector<int> pivots;
  std::vector<std::vector<F>> rows;
};

template <class F>
RankRun<F> run_rank(const TupleContext& ctx, const MatchingEvaluator<F>& ev, std::uint64_t batch,
                    const RankOptions& opts, bool keep_rows) {
  const int cols = static_cast<int>(ev.matchings().size());
  RankRun<F> out;
  IncrementalRank<F> rk(cols);
  const int chunk = std::max(1, opts.threads);
  int stale = 0;
  std::uint64_t next = 0;
  bool done = cols == 0;
  while (!done) {
    std::vector<std::vector<F>> rows(static_cast<size_t>(chunk));
    parallel_for(rows.size(), opts.threads, [&](std::size_t i) {
      if constexpr (std::is_same_v<F, Rational>)
        rows[i] = ev.evaluate(ctx.rational_sources(derive_seed({opts.seed, batch, next + i})));
      else
        rows[i] = ev.evaluate(ctx.field_sources<F>(opts.seed, batch, next + i));
    });
    next += static_cast<std::uint64_t>(chunk);
    for (auto& row : rows) {
      if (keep_rows) out.rows.push_back(row);
      const bool grew = rk.add(std::move(row));
      ++out.used;
      stale = grew ? 0 : stale + 1;
      if (opts.samples > 0 ? out.used >= opts.samples : (rk.full() || stale >= opts.patience)) {
        done = true;
        break;
      }
    }
  }
  out.rank = rk.rank();
  out.pivots = rk.pivots();
  std::sort(out.pivots.begin(), out.pivots.end());
  return out;
}

}  // namespace

SpaceDimResult space_dim(const SpaceSpec& spec, const RankOptions& opts) {
  validate_spec(spec);
  SpaceDimResult res;
  res.spec = spec;
  const auto w = standard_form(spec.n);
  for (const auto& t : weight_solutions(spec.p, spec.delta)) {
    TupleRank tr;
    tr.tuple = t;
    tr.order = tuple_order(t, spec.p);
    if (tr.order % 2 == 0) {
      TupleContext ctx(t, spec.p, spec.n);
      const auto ms = enumerate_matchings(tr.order);
      tr.matchings = static_cast<long>(ms.size());
      if (opts.exact) {
        MatchingEvaluator<Rational> ev(ms, ctx.layout.orders, ctx.layout.source, ctx.dim, w, Pairing::Covectors);
        const auto a = run_rank(ctx, ev, 4, opts, false);
        tr.rank = a.rank;
        tr.samples_used = a.used;
      } else {
        MatchingEvaluator<FieldA> ev_a(ms, ctx.layout.orders, ctx.layout.source, ctx.dim, w, Pairing::Covectors);
        MatchingEvaluator<FieldB> ev_b(ms, ctx.layout.orders, ctx.layout.source, ctx.dim, w, Pairing::Covectors);
        const auto a = run_rank(ctx, ev_a, 0, opts, false);
        const auto b = run_rank(ctx, ev_b, 1, opts, false);
        if (a.rank != b.rank)
          throw RankDisagreement("rank disagreement for tuple " + tuple_str(t) + " at " + spec.str() + ": " +
                                 std::to_string(a.rank) + " vs " + std::to_string(b.rank));
        tr.rank = a.rank;
        tr.samples_used = std::max(a.used, b.used);
      }
    }
    res.total += tr.rank;
    res.tuples.push_back(std::move(tr));
  }
  return res;
}

IdentityDimResult identity_space_dim(const SpaceSpec& spec, const RankOptions& opts) {
  validate_spec(spec.with_n(spec.n + 1));
  IdentityDimResult r;
  r.low = space_dim(spec, opts);
  r.high = space_dim(spec.with_n(spec.n + 1), opts);
  r.dim = r.high.total - r.low.total;
  if (r.dim < 0)
    throw RankDisagreement("dimension decreased from " + std::to_string(r.low.total) + " to " +
                           std::to_string(r.high.total) + " at " + spec.str());
  return r;
}

namespace {

Rational evaluate_exact(const MatchingEvaluator<Rational>& ev, const std::vector<Rational>& coeffs,
                        const std::vector<Tensor<Rational>>& sources) {
  const auto vals = ev.evaluate(sources);
  Rational acc;
  for (size_t i = 0; i < vals.size(); ++i) acc += coeffs[i] * vals[i];
  return acc;
}

}  // namespace

std::vector<IdentityCertificate> find_identity(const SpaceSpec& spec, const RankOptions& opts) {
  validate_spec(spec.with_n(spec.n + 1));
  constexpr int kVerifySamples = 4;
  constexpr int kWitnessRetries = 20;
  std::vector<IdentityCertificate> certs;
  const auto w_low = standard_form(spec.n);
  const auto w_high = standard_form(spec.n + 1);
  for (const auto& t : weight_solutions(spec.p, spec.delta)) {
    const int order = tuple_order(t, spec.p);
    if (order % 2 != 0) continue;
    const auto ms = enumerate_matchings(order);
    TupleContext high(t, spec.p, spec.n + 1);
    TupleContext low(t, spec.p, spec.n);

    MatchingEvaluator<FieldWide> ev_high(ms, high.layout.orders, high.layout.source, high.dim, w_high,
                                         Pairing::Covectors);
    const auto hr = run_rank(high, ev_high, 2, opts, false);
    // Independent columns in the higher dimension represent every class.
    std::vector<Matching> basis_ms;
    for (int c : hr.pivots) basis_ms.push_back(ms[static_cast<size_t>(c)]);
    MatchingEvaluator<FieldWide> ev_low(basis_ms, low.layout.orders, low.layout.source, low.dim, w_low,
                                        Pairing::Covectors);
    const auto lr = run_rank(low, ev_low, 3, opts, true);
    if (lr.rank == hr.rank) continue;

    Matrix<FieldWide> m(static_cast<int>(lr.rows.size()), static_cast<int>(basis_ms.size()));
    for (size_t i = 0; i < lr.rows.size(); ++i)
      for (size_t j = 0; j < basis_ms.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = lr.rows[i][j];
    const auto kernel = nullspace(std::move(m));

    for (const auto& vec : kernel) {
      IdentityCertificate cert;
      cert.spec = spec;
      cert.tuple = t;
      std::vector<Matching> used;
      std::vector<Rational> coeffs;
      for (size_t j = 0; j < vec.size(); ++j) {
        if (vec[j].is_zero()) continue;
        const auto q = rational_reconstruct(vec[j]);
        if (!q) throw std::runtime_error("find_identity: rational reconstruction failed for tuple " + tuple_str(t));
        used.push_back(basis_ms[j]);
        coeffs.push_back(*q);
        cert.terms.emplace_back(basis_ms[j], *q);
      }
      MatchingEvaluator<Rational> ex_low(used, low.layout.orders, low.layout.source, low.dim, w_low,
                                         Pairing::Covectors);
      for (int s = 0; s < kVerifySamples; ++s) {
        const auto v = evaluate_exact(ex_low, coeffs, low.rational_sources(derive_seed({opts.seed, 0x7631ULL, static_cast<std::uint64_t>(s)})));
        if (!v.is_zero())
          throw std::runtime_error("find_identity: lifted combination does not vanish in dimension " +
                                   std::to_string(low.dim));
      }
      MatchingEvaluator<Rational> ex_high(used, high.layout.orders, high.layout.source, high.dim, w_high,
                                          Pairing::Covectors);
      bool witnessed = false;
      for (int s = 0; s < kWitnessRetries && !witnessed; ++s) {
        const std::uint64_t ws = derive_seed({opts.seed, 0x7769ULL, static_cast<std::uint64_t>(s)});
        const auto v = evaluate_exact(ex_high, coeffs, high.rational_sources(ws));
        if (!v.is_zero()) {
          cert.witness_seed = ws;
          cert.witness_value = v;
          witnessed = true;
        }
      }
      if (!witnessed)
        throw std::runtime_error("find_identity: no nonzero witness in dimension " + std::to_string(high.dim) +
                                 " after " + std::to_string(kWitnessRetries) + " tries");
      certs.push_back(std::move(cert));
    }
  }
  return certs;
}

Tensor<Rational> certificate_tensor(const IdentityCertificate& cert, const std::vector<Tensor<Rational>>& normals) {
  const auto layout = sample_layout(cert.tuple, cert.spec.p);
  const size_t n_normals = layout.source_kind.size() - static_cast<size_t>(cert.spec.p);
  if (normals.size() != n_normals) throw ShapeError("certificate_tensor: wrong number of normal tensors");
  if (normals.empty() && cert.spec.p == 0) throw ShapeError("certificate_tensor: no inputs");
  const int dim = normals.empty() ? 0 : normals.front().dim();
  if (dim % 2 != 0 || dim == 0) throw ShapeError("certificate_tensor: odd or zero dimension");
  const auto w = standard_form(dim / 2);
  std::vector<Matching> ms;
  std::vector<Rational> coeffs;
  for (const auto& [m, c] : cert.terms) {
    ms.push_back(m);
    coeffs.push_back(c);
  }
  MatchingEvaluator<Rational> ev(ms, layout.orders, layout.source, dim, w, Pairing::Covectors);
  Tensor<Rational> out(dim, cert.spec.p);
  std::vector<Tensor<Rational>> sources = normals;
  sources.resize(layout.source_kind.size());
  for_each_index(dim, cert.spec.p, [&](std::span<const int> idx, std::size_t flat) {
    for (int k = 0; k < cert.spec.p; ++k) {
      // ω(e_a, ·) as a covector.
      Tensor<Rational> xi(dim, 1);
      for (int c = 0; c < dim; ++c) xi.at({c}) = w.lower().at({idx[static_cast<size_t>(k)], c});
      sources[n_normals + static_cast<size_t>(k)] = std::move(xi);
    }
    out[flat] = evaluate_exact(ev, coeffs, sources);
  });
  return out;
}

}  // namespace fedo
