// Acceptance run: one line per criterion, exit code 0 iff every criterion passes.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "fedo/cli/commands.hpp"
#include "fedo/core/random.hpp"
#include "fedo/expr/expr.hpp"
#include "fedo/identities/identities.hpp"
#include "fedo/invariants/matchings.hpp"
#include "fedo/invariants/space_dim.hpp"
#include "fedo/jets/fedosov.hpp"
#include "fedo/symmetry/symmetry.hpp"

namespace {

using namespace fedo;
using Q = Rational;
using Clock = std::chrono::steady_clock;

// Pinned tolerances and budgets. Every comparison below is exact.
constexpr double kCriterion1BudgetSeconds = 120;
constexpr double kCriterion2BudgetSeconds = 600;
constexpr double kTotalBudgetSeconds = 1800;
constexpr std::uint64_t kSeedA = 20240229;
constexpr std::uint64_t kSeedB = 977;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "FAILED: " << what << "; ";
    }
  }
};

bool zero(const Tensor<Q>& t) { return t.is_zero(); }

std::string corpus_dir() {
  if (const char* env = std::getenv("FEDO_CORPUS_DIR")) return env;
  return FEDO_CORPUS_DIR;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Tensor<Q> random_r(int n, std::uint64_t seed) { return curvature_projector(n).random_element<Q>(seed); }

/// dim T_{p,δ}[2n] at kSeedA, shared by criteria 3 and 11.
long space_total(int p, int delta, int n) {
  static std::map<std::tuple<int, int, int>, long> memo;
  const auto key = std::make_tuple(p, delta, n);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  RankOptions opts;
  opts.seed = kSeedA;
  return memo[key] = space_dim({p, delta, n}, opts).total;
}

long identity_dim(int p, int delta, int n, std::uint64_t seed) {
  RankOptions opts;
  opts.seed = seed;
  return identity_space_dim({p, delta, n}, opts).dim;
}

const std::vector<std::pair<int, int>> kMainPairs{{0, -4}, {2, -2}, {2, 0}, {1, -2}};

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  const std::map<int, long> expected{{1, 1}, {2, 0}, {3, 0}};
  for (const auto& [n, want] : expected)
    for (std::uint64_t seed : {kSeedA, kSeedB}) {
      long got = -1;
      try {
        got = identity_dim(0, -4, n, seed);
      } catch (const RankDisagreement& e) {
        o.require(false, std::string("prime fields disagree: ") + e.what());
        continue;
      }
      o.detail << "2n=" << 2 * n << " seed " << seed << ": " << got << "; ";
      o.require(got == want, "dim K_{0,-4}[" + std::to_string(2 * n) + "] = " + std::to_string(want));
    }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(secs <= kCriterion1BudgetSeconds, "runtime within budget");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto t0 = Clock::now();
  const long d4 = identity_dim(2, -2, 2, kSeedA);
  const long d6 = identity_dim(2, -2, 3, kSeedA);
  o.detail << "2n=4: " << d4 << "; 2n=6: " << d6 << "; ";
  o.require(d4 == 1, "dim K_{2,-2}[4] = 1");
  o.require(d6 == 0, "dim K_{2,-2}[6] = 0");
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(secs <= kCriterion2BudgetSeconds, "runtime within budget");
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (const auto& [p, delta] : kMainPairs) {
    const int bound = 2 * p - delta;
    for (int n = 1; 2 * n + 2 <= kMaxSpaceDim; ++n) {
      const long k = space_total(p, delta, n + 1) - space_total(p, delta, n);
      const bool odd_case = ((p - delta) / 2) % 2 == 1 || p % 2 == 1;
      if (2 * n >= bound) {
        o.require(k == 0, "K_{" + std::to_string(p) + "," + std::to_string(delta) + "}[" + std::to_string(2 * n) + "] = 0");
      } else if (2 * n == bound - 2 && odd_case) {
        o.require(k == 0, "K_{" + std::to_string(p) + "," + std::to_string(delta) + "}[" + std::to_string(2 * n) +
                              "] = 0 (odd case)");
      } else {
        continue;
      }
      o.detail << "(" << p << "," << delta << ")@" << 2 * n << "=" << k << " ";
    }
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  RankOptions opts;
  opts.seed = kSeedA;
  const auto certs = find_identity({2, -2, 2}, opts);
  o.require(certs.size() == 1, "one certificate for (2,-2) in dim 4");
  if (certs.empty()) return o;
  const auto proj = normal_projector(1, 3);
  const auto w = standard_form(3);
  std::optional<Q> c;
  for (int s = 0; s < 10; ++s) {
    const auto t = proj.random_element<Q>(derive_seed({kSeedA, 4, static_cast<std::uint64_t>(s)}));
    const auto ct = certificate_tensor(certs[0], {t});
    const auto e4 = builtin("eq4")(normal_to_curvature(t), w);
    const auto r = exact_ratio(ct, e4);
    o.require(r.has_value(), "certificate proportional to eq4 on sample " + std::to_string(s));
    if (!r) continue;
    if (!c) c = r;
    o.require(*c == *r, "single constant");
  }
  if (c) o.detail << "certificate = (" << *c << ") * eq4; terms " << certs[0].terms.size();
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::optional<Q> c;
  int idx = 0;
  for (int n : {2, 3, 4})
    for (int s = 0; s < (n == 4 ? 6 : 7); ++s, ++idx) {
      const auto w = standard_form(n);
      const auto r = random_r(n, derive_seed({kSeedA, 5, static_cast<std::uint64_t>(idx)}));
      const auto e1 = expr1(r, ricci(r, w), w);
      const auto e4 = two_form_identity(r, w);
      if (n == 2) {
        o.require(zero(e1) && zero(e4), "both vanish in dim 4");
        continue;
      }
      const auto q = exact_ratio(e4, e1);
      o.require(q.has_value(), "eq4 proportional to eq1 in dim " + std::to_string(2 * n));
      if (!q) continue;
      if (!c) c = q;
      o.require(*c == *q, "single constant across samples");
    }
  o.require(idx == 20, "20 samples");
  if (c) {
    o.require(*c == frozen_constant("eq4/eq1"), "constant equals the frozen value");
    o.detail << "eq4 = (" << *c << ") * eq1 on " << idx << " samples; ";
  }
  const auto w4 = standard_form(2), w6 = standard_form(3);
  int zero4 = 0, nonzero6 = 0;
  for (int s = 0; s < 10; ++s) {
    const auto r4 = random_r(2, derive_seed({kSeedA, 51, static_cast<std::uint64_t>(s)}));
    zero4 += zero(expr1(r4, ricci(r4, w4), w4));
    const auto r6 = random_r(3, derive_seed({kSeedA, 52, static_cast<std::uint64_t>(s)}));
    nonzero6 += !zero(expr1(r6, ricci(r6, w6), w6));
  }
  o.require(zero4 == 10, "eq1 = 0 in dim 4 for 10 samples");
  o.require(nonzero6 >= 1, "eq1 != 0 in dim 6 for some sample");
  o.detail << "dim 4 zero " << zero4 << "/10, dim 6 nonzero " << nonzero6 << "/10";
  return o;
}

Outcome criterion6() {
  Outcome o;
  int c2_nonzero = 0;
  for (int n : {2, 3}) {
    const auto w = standard_form(n);
    for (int s = 0; s < 10; ++s) {
      const auto r = random_r(n, derive_seed({kSeedA, 6, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s)}));
      o.require(chern_form(r, w, 1).is_zero(), "c_1 = 0 in dim " + std::to_string(2 * n));
      o.require(chern_form(r, w, 3).is_zero(), "c_3 = 0 in dim " + std::to_string(2 * n));
      if (n == 2) c2_nonzero += !chern_form(r, w, 2).is_zero();
    }
  }
  o.require(c2_nonzero >= 1, "c_2 != 0 in dim 4 for some sample");
  o.detail << "c_1 = c_3 = 0 on 20 samples; c_2 nonzero " << c2_nonzero << "/10 in dim 4";
  return o;
}

Outcome criterion7() {
  Outcome o;
  int zeros = 0;
  for (int s = 0; s < 10; ++s) {
    const auto f = random_fedosov(3, 3, derive_seed({kSeedA, 7, static_cast<std::uint64_t>(s)}));
    zeros += zero(divergence(f, builtin("eq1")));
  }
  o.require(zeros == 10, "div eq1 = 0 on 10 degree-3 structures in dim 6");
  const auto f8 = random_fedosov(4, 3, derive_seed({kSeedA, 71}));
  const auto d = divergence(f8, builtin("main-p4-k2"));
  std::size_t nz = 0;
  for (const auto& v : d.data()) nz += !v.is_zero();
  o.detail << "div eq1 zero " << zeros << "/10; probe: div <omega^4, c_2> in dim 8 has " << nz
           << " nonzero components (measured)";
  return o;
}

Outcome criterion8() {
  Outcome o;
  const std::vector<std::pair<std::string, int>> cases{{"omega", 4},      {"eq2", 4},        {"eq4", 6},
                                                       {"main-p0-k2", 4}, {"main-p2-k2", 6}, {"main-p4-k2", 8}};
  for (const auto& [name, dim] : cases) {
    const auto& e = builtin(name);
    const auto f = random_fedosov(dim / 2, 1, derive_seed({kSeedA, 8, static_cast<std::uint64_t>(dim)}));
    for (int lambda : {2, 3}) {
      const auto h = homogeneity_check(e, f, Q(lambda));
      o.require(!h.degenerate, name + " nonzero on the sample");
      o.require(h.pass && h.measured && *h.measured == e.weight,
                name + " weight " + std::to_string(e.weight) + " at lambda " + std::to_string(lambda));
      if (lambda == 2) o.detail << name << ":" << (h.measured ? std::to_string(*h.measured) : "?") << " ";
    }
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  int checks = 0;
  for (int n : {1, 2, 3}) {
    const auto w = standard_form(n);
    for (int s = 0; s < 10; ++s) {
      const std::uint64_t seed = derive_seed({kSeedA, 9, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s)});
      const auto a = random_symplectic(n, seed);
      const auto r = random_r(n, seed);
      for (const auto& e : builtin_expressions()) {
        if (2 * n < e.min_dim) continue;
        ++checks;
        o.require(is_equivariant(e, r, w, a), e.name + " in dim " + std::to_string(2 * n));
      }
    }
  }
  o.detail << checks << " equivariance checks";
  return o;
}

Outcome criterion10() {
  Outcome o;
  for (const auto& [name, n] : std::vector<std::pair<std::string, int>>{{"eq2", 1}, {"eq4", 2}}) {
    const auto& e = builtin(name);
    for (int s = 0; s < 5; ++s) {
      const auto f = random_fedosov(n, 2, derive_seed({kSeedA, 10, static_cast<std::uint64_t>(s)}));
      const auto g = f.product_with_flat();
      const auto restricted = reduce(e(curvature(g), g.form()), n);
      const auto direct = e(curvature(f), f.form());
      o.require(restricted == direct, name + " two-path agreement");
      o.require(zero(restricted), name + " restriction vanishes");
    }
    o.detail << name << " " << 2 * n + 2 << "->" << 2 * n << " ok; ";
  }
  return o;
}

Outcome criterion11() {
  Outcome o;
  for (const auto& [p, delta] : kMainPairs) {
    long prev = -1;
    long stable = -1;
    o.detail << "(" << p << "," << delta << "):";
    for (int n = 1; 2 * n <= kMaxSpaceDim; ++n) {
      const long t = space_total(p, delta, n);
      o.detail << " " << t;
      o.require(t >= prev, "non-decreasing at 2n=" + std::to_string(2 * n));
      prev = t;
      if (2 * n >= 2 * p - delta) {
        if (stable < 0) stable = t;
        o.require(t == stable, "constant for 2n >= 2p - weight");
      }
    }
    o.detail << "; ";
  }
  return o;
}

Outcome criterion12() {
  Outcome o;
  for (int n : {1, 2}) {
    const auto w = standard_form(n);
    int first_vanishing = 0;
    for (int p = 2; p <= 6; p += 2)
      for (int m = 2; m <= p; ++m) {
        const auto slots = identity_permutation(m);
        const auto combo = sft_alternation(p, slots);
        bool vanish = true;
        for (int t = 0; t < 3; ++t) {
          Rng rng = make_rng({kSeedA, 12, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(p),
                              static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(t)});
          std::vector<Tensor<Q>> vs;
          for (int i = 0; i < p; ++i) vs.push_back(random_integer_tensor<Q>(2 * n, 1, rng));
          if (!eval_combination(combo, vs, w).is_zero()) vanish = false;
        }
        if (m >= 2 * n + 1) o.require(vanish, "vanishes at |I|=" + std::to_string(m) + ", n=" + std::to_string(n));
        if (m == 2 * n) o.require(!vanish, "nonzero at |I|=2n, n=" + std::to_string(n));
        if (vanish && (first_vanishing == 0 || m < first_vanishing)) first_vanishing = m;
      }
    o.detail << "n=" << n << ": first vanishing |I| = " << first_vanishing;
    if (first_vanishing != n + 1) o.detail << " (differs from the |I| >= n+1 statement)";
    o.detail << "; ";
  }
  return o;
}

Outcome criterion13() {
  Outcome o;
  const std::vector<std::pair<std::string, std::string>> files{
      {"eq1.ten", "eq1"}, {"eq1_ricci.ten", "eq1"}, {"eq2.ten", "eq2"}, {"eq4.ten", "eq4"}};
  for (const auto& [file, name] : files) {
    const auto compiled = expr::compile(expr::parse(slurp(corpus_dir() + "/" + file)));
    int agree = 0;
    for (int s = 0; s < 20; ++s) {
      const int n = 1 + s % 3;
      const auto w = standard_form(n);
      const auto r = random_r(n, derive_seed({kSeedA, 13, static_cast<std::uint64_t>(s)}));
      const expr::Bindings<Q> b{w, r, ricci(r, w)};
      const auto v = expr::evaluate<Q>(compiled, b);
      const auto shuffled = expr::evaluate<Q>(compiled, b, PlanOrder::Shuffled, static_cast<std::uint64_t>(s));
      agree += v == builtin(name)(r, w) && v == shuffled;
    }
    o.require(agree == 20, file + " matches " + name);
    o.detail << file << " " << agree << "/20; ";
  }
  auto run = [](int threads) {
    cli::GlobalOptions g;
    g.threads = threads;
    return cli::cmd_verify({"two-form", 6, 6}, g).json(false) + cli::cmd_dims({2, -2, 4}, g).json(false);
  };
  const std::string one = run(1);
  o.require(one == run(4), "reports identical with 1 and 4 threads");
  o.detail << "thread-count determinism checked";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"scalar identity space: dims 1, 0, 0 in 2n = 2, 4, 6", criterion1},
      {"2-covariant identity space: dims 1, 0 in 2n = 4, 6", criterion2},
      {"vanishing bound for identity spaces", criterion3},
      {"found identity is proportional to eq4", criterion4},
      {"eq1 and eq4 agree up to a constant", criterion5},
      {"odd Chern forms vanish, c_2 does not", criterion6},
      {"divergence of eq1 vanishes", criterion7},
      {"homogeneity weights of built-ins", criterion8},
      {"Sp-equivariance of built-ins", criterion9},
      {"reduction consistency", criterion10},
      {"space dimensions stabilize", criterion11},
      {"alternation threshold probe", criterion12},
      {"expression language matches built-ins; thread determinism", criterion13},
  };
  const auto start = Clock::now();
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    failed += !o.pass;
    std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << std::setw(2) << i + 1 << ": " << criteria[i].first
              << " -- " << o.detail.str() << " (" << std::fixed << std::setprecision(1) << secs << " s)" << std::endl;
  }
  const double total = std::chrono::duration<double>(Clock::now() - start).count();
  const bool in_budget = total <= kTotalBudgetSeconds;
  std::cout << "total " << std::fixed << std::setprecision(1) << total << " s, budget " << kTotalBudgetSeconds << " s"
            << (in_budget ? "" : " EXCEEDED") << '\n';
  std::cout << (failed == 0 && in_budget ? "ALL CRITERIA PASS" : std::to_string(failed) + " CRITERIA FAIL") << '\n';
  return failed == 0 && in_budget ? 0 : 1;
}
