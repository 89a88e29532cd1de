#include "fedo/cli/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "fedo/core/parallel.hpp"
#include "fedo/core/random.hpp"
#include "fedo/expr/expr.hpp"
#include "fedo/identities/identities.hpp"
#include "fedo/invariants/space_dim.hpp"
#include "fedo/symmetry/symmetry.hpp"

namespace fedo::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int half_dim(int dim, int lo = 2, int hi = kMaxProjectorDim) {
  if (dim % 2 != 0 || dim < lo || dim > hi)
    throw UsageError("dimension must be even and in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                     std::to_string(dim));
  return dim / 2;
}

bool all_zero(const Tensor<Rational>& t) {
  for (const auto& v : t.data())
    if (!v.is_zero()) return false;
  return true;
}

bool is_antisymmetric(const Tensor<Rational>& t) { return t == -swap_slots(t, 0, 1); }

std::string components(const Tensor<Rational>& t) {
  std::ostringstream os;
  if (t.order() == 0) {
    os << t[0];
    return os.str();
  }
  int shown = 0;
  for_each_index(t.dim(), t.order(), [&](std::span<const int> idx, std::size_t flat) {
    if (t[flat].is_zero()) return;
    if (shown++) os << '\n';
    os << '[';
    for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i] + 1;
    os << "] " << t[flat];
  });
  if (shown == 0) os << "(all components zero)";
  return os.str();
}

std::string join_values(const std::vector<Rational>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

template <class T, class F>
std::vector<T> run_trials(int trials, int threads, F&& f) {
  std::vector<T> out(static_cast<std::size_t>(trials));
  parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t i) { out[i] = f(static_cast<int>(i)); });
  return out;
}

Tensor<Rational> random_curvature(int n, std::uint64_t seed) { return curvature_projector(n).random_element<Rational>(seed); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::uint64_t tag(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : s) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
  return h;
}

void finish(RunReport& r, Clock::time_point t0) { r.wall_seconds = seconds_since(t0); }

// ---------------------------------------------------------------------------
// verify suites

struct SuiteContext {
  int dim;
  int trials;
  const GlobalOptions& g;
  std::uint64_t trial_seed(std::string_view what, int t) const {
    return derive_seed({g.seed, tag(what), static_cast<std::uint64_t>(dim), static_cast<std::uint64_t>(t)});
  }
};

void suite_scalar(RunReport& r, const SuiteContext& c) {
  const int n = c.dim / 2;
  const auto w = standard_form(n);
  struct Row {
    Rational eq2;
    bool main_ok = true;
  };
  const auto rows = run_trials<Row>(c.trials, c.g.threads, [&](int t) {
    const auto rt = random_curvature(n, c.trial_seed("scalar", t));
    Row row;
    row.eq2 = scalar_identity(rt, w);
    if (c.dim >= 4) row.main_ok = main_theorem_form(rt, w, 0, 2)[0] == frozen_constant("main-p0-k2/eq2") * row.eq2;
    return row;
  });
  std::vector<Rational> vals;
  int nonzero = 0;
  bool main_ok = true;
  for (const auto& row : rows) {
    vals.push_back(row.eq2);
    nonzero += row.eq2.is_zero() ? 0 : 1;
    main_ok = main_ok && row.main_ok;
  }
  if (c.dim == 2) {
    r.pass_if("eq2 vanishes in dim 2", nonzero == 0).add("values", join_values(vals));
  } else {
    r.pass_if("eq2 is nonzero for some sample", nonzero > 0)
        .add("nonzero", static_cast<std::int64_t>(nonzero))
        .add("values", join_values(vals));
    r.pass_if("main-p0-k2 equals the frozen multiple of eq2", main_ok)
        .add("constant", frozen_constant("main-p0-k2/eq2").str());
  }
}

void suite_two_form(RunReport& r, const SuiteContext& c) {
  const int n = c.dim / 2;
  const auto w = standard_form(n);
  struct Row {
    bool eq1_zero, eq4_zero, antisym, ratio_ok, main_ok;
  };
  const auto rows = run_trials<Row>(c.trials, c.g.threads, [&](int t) {
    const auto rt = random_curvature(n, c.trial_seed("two-form", t));
    const auto e1 = expr1(rt, ricci(rt, w), w);
    const auto e4 = two_form_identity(rt, w);
    Row row{all_zero(e1), all_zero(e4), is_antisymmetric(e1), true, true};
    row.ratio_ok = e4 == frozen_constant("eq4/eq1") * e1;
    if (c.dim >= 6) row.main_ok = main_theorem_form(rt, w, 2, 2) == frozen_constant("main-p2-k2/eq4") * e4;
    return row;
  });
  int e1_nonzero = 0;
  bool antisym = true, ratio = true, main_ok = true, e4_zero = true;
  for (const auto& row : rows) {
    e1_nonzero += row.eq1_zero ? 0 : 1;
    antisym = antisym && row.antisym;
    ratio = ratio && row.ratio_ok;
    main_ok = main_ok && row.main_ok;
    e4_zero = e4_zero && row.eq4_zero;
  }
  r.pass_if("eq1 is antisymmetric", antisym);
  if (c.dim <= 4) {
    r.pass_if("eq1 vanishes in dim " + std::to_string(c.dim), e1_nonzero == 0);
    r.pass_if("eq4 vanishes in dim " + std::to_string(c.dim), e4_zero);
  } else {
    r.pass_if("eq1 is nonzero for some sample", e1_nonzero > 0).add("nonzero", static_cast<std::int64_t>(e1_nonzero));
    r.pass_if("eq4 equals the frozen multiple of eq1", ratio).add("constant", frozen_constant("eq4/eq1").str());
    r.pass_if("main-p2-k2 equals the frozen multiple of eq4", main_ok)
        .add("constant", frozen_constant("main-p2-k2/eq4").str());
  }
}

void suite_chern(RunReport& r, const SuiteContext& c) {
  const int n = c.dim / 2;
  const auto w = standard_form(n);
  struct Row {
    bool c1, c2, c3;
  };
  const auto rows = run_trials<Row>(c.trials, c.g.threads, [&](int t) {
    const auto rt = random_curvature(n, c.trial_seed("chern", t));
    return Row{chern_form(rt, w, 1).is_zero(), chern_form(rt, w, 2).is_zero(), chern_form(rt, w, 3).is_zero()};
  });
  int c1z = 0, c2nz = 0, c3z = 0;
  for (const auto& row : rows) {
    c1z += row.c1;
    c2nz += !row.c2;
    c3z += row.c3;
  }
  r.pass_if("c_1 vanishes", c1z == c.trials).add("zero", static_cast<std::int64_t>(c1z));
  r.pass_if("c_3 vanishes", c3z == c.trials)
      .add("zero", static_cast<std::int64_t>(c3z))
      .add("trivial_in_this_dim", c.dim < 6);
  if (c.dim >= 4)
    r.pass_if("c_2 is nonzero for some sample", c2nz > 0).add("nonzero", static_cast<std::int64_t>(c2nz));
  else
    r.check("c_2 in dim 2", Status::Measured, "a 4-form in dimension 2 is zero").add("nonzero", static_cast<std::int64_t>(c2nz));
}

void suite_main_theorem(RunReport& r, const SuiteContext& c) {
  const int n = c.dim / 2;
  const auto w = standard_form(n);
  std::vector<Tensor<Rational>> rs;
  for (int t = 0; t < c.trials; ++t) rs.push_back(random_curvature(n, c.trial_seed("main-theorem", t)));
  for (auto [p, k] : std::vector<std::pair<int, int>>{{0, 2}, {2, 2}, {4, 2}, {0, 1}, {2, 1}, {0, 3}, {2, 3}}) {
    const std::string name = "<omega^" + std::to_string(k + p / 2) + ", c_" + std::to_string(k) + "> (p=" +
                             std::to_string(p) + ", k=" + std::to_string(k) + ")";
    if (c.dim < 2 * k + p - 2) {
      r.notes.push_back(name + " needs dim >= " + std::to_string(2 * k + p - 2) + "; skipped");
      continue;
    }
    const auto vals = run_trials<bool>(c.trials, c.g.threads,
                                       [&](int t) { return all_zero(main_theorem_form(rs[static_cast<std::size_t>(t)], w, p, k)); });
    int zeros = 0;
    for (bool z : vals) zeros += z;
    if (k % 2 == 1) {
      r.pass_if(name + " vanishes (odd k)", zeros == c.trials).add("zero", static_cast<std::int64_t>(zeros));
    } else if (c.dim < 2 * k + p) {
      r.pass_if(name + " vanishes in dim " + std::to_string(c.dim), zeros == c.trials)
          .add("zero", static_cast<std::int64_t>(zeros));
    } else {
      r.pass_if(name + " is nonzero for some sample", zeros < c.trials)
          .add("nonzero", static_cast<std::int64_t>(c.trials - zeros));
    }
  }
}

void suite_divergence(RunReport& r, const SuiteContext& c) {
  const int n = c.dim / 2;
  std::vector<std::string> asserted{"omega", "eq1", "eq4"};
  std::vector<std::string> probed{"main-p2-k2", "main-p4-k2"};
  struct Row {
    std::map<std::string, bool> zero;
  };
  const auto rows = run_trials<Row>(c.trials, c.g.threads, [&](int t) {
    const auto f = random_fedosov(n, 3, c.trial_seed("divergence", t));
    Row row;
    for (const auto& names : {asserted, probed})
      for (const auto& name : names) {
        const auto& e = builtin(name);
        if (c.dim < e.min_dim) continue;
        row.zero[name] = all_zero(divergence(f, e));
      }
    return row;
  });
  auto count = [&](const std::string& name) {
    std::int64_t z = 0;
    for (const auto& row : rows) z += row.zero.at(name);
    return z;
  };
  for (const auto& name : asserted)
    r.pass_if("div " + name + " vanishes", count(name) == c.trials).add("zero", count(name));
  for (const auto& name : probed) {
    const auto& e = builtin(name);
    if (c.dim < e.min_dim) {
      r.notes.push_back("div " + name + " needs dim >= " + std::to_string(e.min_dim) + "; skipped");
      continue;
    }
    const bool trivial = c.dim < e.min_dim + 2;
    r.check("div " + name + " (conjecture probe)", Status::Measured,
            trivial ? "form is identically zero in this dimension" : "measured, not asserted")
        .add("zero", count(name))
        .add("trials", static_cast<std::int64_t>(c.trials));
  }
}

void suite_sft(RunReport& r, const SuiteContext& c, std::vector<int> ns) {
  for (int n : ns) {
    const auto w = standard_form(n);
    const int dim = 2 * n;
    std::ostringstream table;
    bool above_ok = true, at_ok = true;
    int measured_min = -1;
    for (int p = 2; p <= 6; p += 2) {
      int first_vanishing = -1;
      for (int m = 2; m <= p; ++m) {
        const auto slots = identity_permutation(m);
        const auto combo = sft_alternation(p, slots);
        bool vanish = true;
        for (int t = 0; t < c.trials && vanish; ++t) {
          auto rng = make_rng({c.g.seed, tag("sft"), static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(p),
                               static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(t)});
          std::vector<Tensor<Rational>> vs;
          for (int i = 0; i < p; ++i) vs.push_back(random_integer_tensor<Rational>(dim, 1, rng));
          if (!eval_combination(combo, vs, w).is_zero()) vanish = false;
        }
        table << "n=" << n << " p=" << p << " |I|=" << m << (vanish ? " vanishes" : " nonzero") << '\n';
        if (vanish && first_vanishing < 0) first_vanishing = m;
        if (m >= dim + 1 && !vanish) above_ok = false;
        if (m == dim && vanish) at_ok = false;
      }
      if (first_vanishing > 0 && (measured_min < 0 || first_vanishing < measured_min)) measured_min = first_vanishing;
    }
    std::string t = table.str();
    if (!t.empty()) t.pop_back();
    r.pass_if("n=" + std::to_string(n) + ": alternations with |I| >= 2n+1 vanish", above_ok).add("table", t);
    if (dim <= 6)
      r.pass_if("n=" + std::to_string(n) + ": alternation with |I| = 2n is nonzero", at_ok);
    r.check("n=" + std::to_string(n) + ": minimal vanishing |I|", Status::Measured)
        .add("measured", static_cast<std::int64_t>(measured_min))
        .add("bound_2n_plus_1", static_cast<std::int64_t>(dim + 1))
        .add("bound_n_plus_1", static_cast<std::int64_t>(n + 1));
    if (measured_min != n + 1)
      r.notes.push_back("n=" + std::to_string(n) + ": the threshold |I| >= n+1 does not hold; alternations first vanish at |I| = " +
                        std::to_string(measured_min) + " (2n+1 = " + std::to_string(dim + 1) + ")");
  }
}

void suite_homogeneity(RunReport& r, const SuiteContext& c) {
  const int n = c.dim / 2;
  for (const auto& e : builtin_expressions()) {
    if (c.dim < e.min_dim) {
      r.notes.push_back(e.name + " needs dim >= " + std::to_string(e.min_dim) + "; skipped");
      continue;
    }
    struct Row {
      int pass = 0, degenerate = 0, fail = 0;
      int measured = 99;
    };
    const auto rows = run_trials<Row>(c.trials, c.g.threads, [&](int t) {
      const auto f = random_fedosov(n, 2, c.trial_seed("homogeneity", t));
      Row row;
      for (int lambda : {2, 3}) {
        const auto h = homogeneity_check(e, f, Rational(lambda));
        if (h.degenerate)
          ++row.degenerate;
        else if (h.pass)
          ++row.pass;
        else
          ++row.fail;
        if (h.measured) row.measured = *h.measured;
      }
      return row;
    });
    Row total;
    for (const auto& row : rows) {
      total.pass += row.pass;
      total.degenerate += row.degenerate;
      total.fail += row.fail;
      if (row.measured != 99) total.measured = row.measured;
    }
    const std::string name = e.name + " has weight " + std::to_string(e.weight);
    if (total.pass == 0 && total.fail == 0) {
      r.check(name, Status::Measured, "identically zero in this dimension");
      continue;
    }
    auto& ch = r.pass_if(name, total.fail == 0);
    ch.add("declared", static_cast<std::int64_t>(e.weight)).add("checks_passed", static_cast<std::int64_t>(total.pass));
    if (total.measured != 99) ch.add("measured", static_cast<std::int64_t>(total.measured));
  }
}

void suite_equivariance(RunReport& r, const SuiteContext& c, std::vector<int> dims) {
  for (int dim : dims) {
    const int n = dim / 2;
    const auto w = standard_form(n);
    for (const auto& e : builtin_expressions()) {
      if (dim < e.min_dim) continue;
      const auto ok = run_trials<bool>(c.trials, c.g.threads, [&](int t) {
        const std::uint64_t s = derive_seed({c.g.seed, tag("equivariance"), static_cast<std::uint64_t>(dim),
                                             static_cast<std::uint64_t>(t)});
        return is_equivariant(e, random_curvature(n, s), w, random_symplectic(n, s));
      });
      int good = 0;
      for (bool b : ok) good += b;
      r.pass_if(e.name + " is Sp-equivariant in dim " + std::to_string(dim), good == c.trials)
          .add("agreeing", static_cast<std::int64_t>(good));
    }
  }
}

/// Built-ins whose restriction to the given dimension is a known identity.
int identity_dim_of(const std::string& name) {
  static const std::map<std::string, int> dims{{"eq1", 4},        {"eq2", 2},        {"eq4", 4},
                                               {"main-p0-k2", 2}, {"main-p2-k2", 4}, {"main-p4-k2", 6}};
  auto it = dims.find(name);
  return it == dims.end() ? -1 : it->second;
}

}  // namespace

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* s = std::getenv("FEDOCHECK_SEED");
  if (!s || !*s) return fallback;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used, 0);
    if (used != std::string(s).size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("FEDOCHECK_SEED is not an unsigned integer: '") + s + "'");
  }
}

RunReport cmd_dims(const DimsArgs& a, const GlobalOptions& g) {
  const auto t0 = Clock::now();
  if (a.field != "prime" && a.field != "exact") throw UsageError("--field must be prime or exact, got '" + a.field + "'");
  const int n = half_dim(a.dim, 2, kMaxSpaceDim);
  const SpaceSpec spec{a.p, a.weight, n};
  validate_spec(spec);
  RankOptions opts;
  opts.seed = g.seed;
  opts.samples = a.samples;
  opts.threads = g.threads;
  opts.exact = a.field == "exact";
  const auto res = space_dim(spec, opts);
  RunReport r;
  r.command = "dims --p " + std::to_string(a.p) + " --weight " + std::to_string(a.weight) + " --dim " + std::to_string(a.dim);
  r.seed = g.seed;
  r.threads = g.threads;
  r.info = {{"p", static_cast<std::int64_t>(a.p)}, {"weight", static_cast<std::int64_t>(a.weight)},
            {"dim", static_cast<std::int64_t>(a.dim)}, {"field", a.field}};
  auto& ch = r.check("dim T_{p,weight}[" + std::to_string(a.dim) + "]", Status::Measured);
  ch.add("total", static_cast<std::int64_t>(res.total));
  ch.add("tuples", static_cast<std::int64_t>(res.tuples.size()));
  for (const auto& t : res.tuples) {
    std::ostringstream os;
    os << "order " << t.order << ", matchings " << t.matchings << ", rank " << t.rank << ", samples " << t.samples_used;
    ch.add("tuple " + tuple_str(t.tuple), os.str());
  }
  finish(r, t0);
  return r;
}

RunReport cmd_identities(const IdentitiesArgs& a, const GlobalOptions& g) {
  const auto t0 = Clock::now();
  const int n = half_dim(a.dim, 2, kMaxSpaceDim - 2);
  const SpaceSpec spec{a.p, a.weight, n};
  validate_spec(spec.with_n(n + 1));
  RankOptions opts;
  opts.seed = g.seed;
  opts.threads = g.threads;
  const auto res = identity_space_dim(spec, opts);
  RunReport r;
  r.command = "identities --p " + std::to_string(a.p) + " --weight " + std::to_string(a.weight) + " --dim " +
              std::to_string(a.dim);
  r.seed = g.seed;
  r.threads = g.threads;
  r.info = {{"p", static_cast<std::int64_t>(a.p)}, {"weight", static_cast<std::int64_t>(a.weight)},
            {"dim", static_cast<std::int64_t>(a.dim)}};
  r.check("dim K_{p,weight}[" + std::to_string(a.dim) + "]", Status::Measured)
      .add("dim", static_cast<std::int64_t>(res.dim))
      .add("dim_T_low", static_cast<std::int64_t>(res.low.total))
      .add("dim_T_high", static_cast<std::int64_t>(res.high.total));
  if (res.dim > 0) {
    const auto certs = find_identity(spec, opts);
    r.pass_if("certificates span the identity space", static_cast<long>(certs.size()) == res.dim)
        .add("certificates", static_cast<std::int64_t>(certs.size()));
    for (std::size_t i = 0; i < certs.size(); ++i) {
      const std::string text = certs[i].serialize();
      auto& ch = r.check("certificate " + std::to_string(i + 1), Status::Measured);
      ch.add("tuple", tuple_str(certs[i].tuple)).add("terms", static_cast<std::int64_t>(certs[i].terms.size())).add("text", text);
      if (!a.cert_dir.empty()) {
        std::filesystem::create_directories(a.cert_dir);
        const auto path = std::filesystem::path(a.cert_dir) /
                          ("identity_p" + std::to_string(a.p) + "_w" + std::to_string(a.weight) + "_dim" +
                           std::to_string(a.dim) + "_" + std::to_string(i + 1) + ".cert");
        std::ofstream(path) << text;
        ch.add("file", path.string());
      }
    }
  }
  finish(r, t0);
  return r;
}

RunReport cmd_verify(const VerifyArgs& a, const GlobalOptions& g) {
  const auto t0 = Clock::now();
  RunReport r;
  r.seed = g.seed;
  r.threads = g.threads;
  const auto& names = verify_suites();
  if (std::find(names.begin(), names.end(), a.suite) == names.end()) {
    std::string known;
    for (const auto& s : names) known += (known.empty() ? "" : ", ") + s;
    throw UsageError("unknown suite '" + a.suite + "' (known: " + known + ")");
  }
  static const std::map<std::string, std::pair<int, int>> defaults{
      {"scalar", {4, 10}},      {"two-form", {6, 10}}, {"chern", {6, 10}},       {"main-theorem", {6, 5}},
      {"divergence", {6, 10}}, {"sft", {0, 3}},       {"homogeneity", {6, 2}}, {"equivariance", {0, 10}}};
  const auto [ddim, dtrials] = defaults.at(a.suite);
  const int dim = a.dim ? a.dim : ddim;
  const int trials = a.trials ? a.trials : dtrials;
  if (trials < 1) throw UsageError("--trials must be >= 1");
  if (dim) half_dim(dim);
  r.command = "verify --suite " + a.suite + (dim ? " --dim " + std::to_string(dim) : "") + " --trials " +
              std::to_string(trials);
  r.info = {{"suite", a.suite}, {"dim", static_cast<std::int64_t>(dim)}, {"trials", static_cast<std::int64_t>(trials)}};
  const SuiteContext c{dim, trials, g};
  if (a.suite == "scalar") {
    suite_scalar(r, c);
  } else if (a.suite == "two-form") {
    suite_two_form(r, c);
  } else if (a.suite == "chern") {
    suite_chern(r, c);
  } else if (a.suite == "main-theorem") {
    suite_main_theorem(r, c);
  } else if (a.suite == "divergence") {
    suite_divergence(r, c);
  } else if (a.suite == "sft") {
    suite_sft(r, c, dim ? std::vector<int>{dim / 2} : std::vector<int>{1, 2});
  } else if (a.suite == "homogeneity") {
    suite_homogeneity(r, c);
  } else {
    suite_equivariance(r, c, dim ? std::vector<int>{dim} : std::vector<int>{2, 4, 6});
  }
  finish(r, t0);
  return r;
}

namespace {

PolyFedosov make_structure(const std::string& spec, int n) {
  if (spec == "flat") return PolyFedosov::flat(n);
  if (spec.rfind("random:", 0) == 0) {
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(spec.substr(7));
    } catch (const std::exception&) {
      throw UsageError("bad structure seed in '" + spec + "'");
    }
    return random_fedosov(n, 2, seed);
  }
  if (spec.rfind("file:", 0) == 0) {
    PolyFedosov f = PolyFedosov::parse(read_file(spec.substr(5)));
    if (f.n() != n) throw UsageError("structure file has dim " + std::to_string(f.dim()) + ", expected " + std::to_string(2 * n));
    return f;
  }
  throw UsageError("structure must be 'random:<seed>', 'flat' or 'file:<path>', got '" + spec + "'");
}

expr::CompiledExpr load_expr(const std::string& path) {
  const std::string text = read_file(path);
  return expr::compile(expr::parse(text));
}

}  // namespace

RunReport cmd_eval(const EvalArgs& a, const GlobalOptions& g) {
  const auto t0 = Clock::now();
  const int n = half_dim(a.dim);
  if (a.field != "exact" && a.field != "float") throw UsageError("--field must be exact or float");
  const auto compiled = load_expr(a.expr_file);
  const PolyFedosov f = make_structure(a.structure, n);
  const auto rt = curvature(f);
  const auto k = ricci(rt, f.form());
  RunReport r;
  r.command = "eval " + a.expr_file + " --dim " + std::to_string(a.dim) + " --structure " + a.structure + " --field " + a.field;
  r.seed = g.seed;
  r.threads = g.threads;
  r.info = {{"expression", a.expr_file},
            {"dim", static_cast<std::int64_t>(a.dim)},
            {"structure", a.structure},
            {"field", a.field},
            {"inferred_weight", static_cast<std::int64_t>(compiled.weight)},
            {"order", static_cast<std::int64_t>(compiled.order())}};
  if (a.field == "exact") {
    const auto v = expr::evaluate<Rational>(compiled, expr::Bindings<Rational>{f.form(), rt, k});
    r.check("value", Status::Measured).add("zero", all_zero(v)).add("components", components(v));
  } else {
    const expr::Bindings<double> b{f.form(), tensor_cast<double>(rt), tensor_cast<double>(k)};
    const auto v = expr::evaluate<double>(compiled, b);
    const auto z = expr::float_zero_test(compiled, b);
    std::ostringstream os;
    int shown = 0;
    for_each_index(v.dim(), v.order(), [&](std::span<const int> idx, std::size_t flat) {
      if (v[flat] == 0.0) return;
      if (shown++) os << '\n';
      os << '[';
      for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i] + 1;
      os << "] " << v[flat];
    });
    r.check("value", Status::Measured)
        .add("zero_within_tolerance", z.vanishes)
        .add("max_abs_value", z.max_value)
        .add("max_term_magnitude", z.max_term_sum)
        .add("components", shown ? os.str() : "(all components zero)");
  }
  finish(r, t0);
  return r;
}

RunReport cmd_reduce(const ReduceArgs& a, const GlobalOptions& g) {
  const auto t0 = Clock::now();
  const int n = half_dim(a.dim, 2, kMaxProjectorDim - 2);
  if (a.trials < 1) throw UsageError("--trials must be >= 1");
  std::function<Tensor<Rational>(const Tensor<Rational>&, const SymplecticForm&)> eval;
  std::string name;
  int known_identity_dim = -1;
  if (a.target.rfind("builtin:", 0) == 0) {
    name = a.target.substr(8);
    const NaturalExpression* e = nullptr;
    try {
      e = &builtin(name);
    } catch (const std::invalid_argument& err) {
      throw UsageError(err.what());
    }
    if (a.dim < e->min_dim) throw UsageError(name + " needs dim >= " + std::to_string(e->min_dim));
    eval = e->exact;
    known_identity_dim = identity_dim_of(name);
  } else {
    name = a.target;
    auto compiled = std::make_shared<expr::CompiledExpr>(load_expr(a.target));
    eval = [compiled](const Tensor<Rational>& rt, const SymplecticForm& w) {
      return expr::evaluate<Rational>(*compiled, expr::Bindings<Rational>{w, rt, ricci(rt, w)});
    };
  }
  struct Row {
    bool agree = false;
    bool restriction_zero = false;
  };
  const auto rows = run_trials<Row>(a.trials, g.threads, [&](int t) {
    const auto f = random_fedosov(n, 2, derive_seed({g.seed, tag("reduce"), static_cast<std::uint64_t>(t)}));
    const auto high = f.product_with_flat();
    const auto restricted = reduce(eval(curvature(high), high.form()), n);
    const auto direct = eval(curvature(f), f.form());
    return Row{restricted == direct, all_zero(restricted)};
  });
  int agree = 0, zero = 0;
  for (const auto& row : rows) {
    agree += row.agree;
    zero += row.restriction_zero;
  }
  RunReport r;
  r.command = "reduce " + a.target + " --dim " + std::to_string(a.dim) + " --trials " + std::to_string(a.trials);
  r.seed = g.seed;
  r.threads = g.threads;
  r.info = {{"target", name}, {"from_dim", static_cast<std::int64_t>(a.dim + 2)}, {"to_dim", static_cast<std::int64_t>(a.dim)}};
  r.pass_if("extend-then-restrict equals direct evaluation", agree == a.trials).add("agreeing", static_cast<std::int64_t>(agree));
  if (known_identity_dim == a.dim)
    r.pass_if("restriction vanishes", zero == a.trials).add("zero", static_cast<std::int64_t>(zero));
  else
    r.check("restriction", Status::Measured, zero == a.trials ? "zero on every structure" : "nonzero")
        .add("zero", static_cast<std::int64_t>(zero));
  finish(r, t0);
  return r;
}

}  // namespace fedo::cli
