#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "fedo/cli/commands.hpp"
#include "fedo/expr/expr.hpp"
#include "fedo/invariants/space_dim.hpp"

namespace {

namespace fs = std::filesystem;
using namespace fedo::cli;

/// Looks up bare corpus names (e.g. eq2.ten) in FEDOCHECK_CORPUS or the
/// corpus directory of the source tree when they are not found locally.
std::string resolve_expr_path(const std::string& path) {
  if (path.empty() || fs::exists(path) || path.rfind("builtin:", 0) == 0) return path;
  std::vector<std::string> dirs;
  if (const char* env = std::getenv("FEDOCHECK_CORPUS")) dirs.push_back(env);
#ifdef FEDO_DEFAULT_CORPUS_DIR
  dirs.push_back(FEDO_DEFAULT_CORPUS_DIR);
#endif
  for (const auto& d : dirs) {
    const fs::path candidate = fs::path(d) / path;
    if (fs::exists(candidate)) return candidate.string();
  }
  return path;
}

int emit(const RunReport& r, const std::string& out) {
  std::cout << r.text();
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw UsageError("cannot write '" + out + "'");
    f << r.json();
  }
  return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fedocheck: exact verification of curvature identities of symplectic connections"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  g.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::optional<std::uint64_t> seed_flag;
  std::string out;
  app.add_option("--seed", seed_flag, "Random seed (default: FEDOCHECK_SEED or " + std::to_string(kDefaultSeed) + ")");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", out, "Write the report as JSON to this file");

  DimsArgs dims;
  auto* c_dims = app.add_subcommand("dims", "Dimension of the space of natural tensors T_{p,weight}[dim]");
  c_dims->add_option("--p", dims.p, "Covariant order")->required();
  c_dims->add_option("--weight", dims.weight, "Weight (even)")->required();
  c_dims->add_option("--dim", dims.dim, "Manifold dimension (even, 2..8)")->required();
  c_dims->add_option("--samples", dims.samples, "Number of random samples (0: automatic)");
  c_dims->add_option("--field", dims.field, "Rank field: prime (two prime fields) or exact (rationals, slow)")->check(CLI::IsMember({"prime", "exact"}));

  IdentitiesArgs ids;
  auto* c_ids = app.add_subcommand("identities", "Dimension of the identity space K_{p,weight}[dim] and certificates");
  c_ids->add_option("--p", ids.p, "Covariant order")->required();
  c_ids->add_option("--weight", ids.weight, "Weight (even)")->required();
  c_ids->add_option("--dim", ids.dim, "Manifold dimension (even)")->required();
  c_ids->add_option("--cert-dir", ids.cert_dir, "Directory for certificate files");

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify", "Run a verification suite");
  c_ver->add_option("--suite", ver.suite, "Suite name")->required()->check(CLI::IsMember(verify_suites()));
  c_ver->add_option("--dim", ver.dim, "Dimension (default: suite specific)");
  c_ver->add_option("--trials", ver.trials, "Number of random trials (default: suite specific)");

  EvalArgs ev;
  auto* c_eval = app.add_subcommand("eval", "Evaluate a tensor expression on the curvature of a structure");
  c_eval->add_option("expr_file", ev.expr_file, "Expression file (.ten)")->required();
  c_eval->add_option("--dim", ev.dim, "Dimension");
  c_eval->add_option("--structure", ev.structure, "random:<seed>, flat, or file:<path>");
  c_eval->add_option("--field", ev.field, "exact or float")->check(CLI::IsMember({"exact", "float"}));

  ReduceArgs red;
  auto* c_red = app.add_subcommand("reduce", "Compare extend-then-restrict with direct evaluation");
  c_red->add_option("target", red.target, "Expression file or builtin:<name>")->required();
  c_red->add_option("--dim", red.dim, "Dimension 2n of the restriction (structures are extended to 2n+2)");
  c_red->add_option("--trials", red.trials, "Number of random structures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    g.seed = seed_flag ? *seed_flag : seed_from_env(kDefaultSeed);
    if (*c_dims) return emit(cmd_dims(dims, g), out);
    if (*c_ids) return emit(cmd_identities(ids, g), out);
    if (*c_ver) return emit(cmd_verify(ver, g), out);
    if (*c_eval) {
      ev.expr_file = resolve_expr_path(ev.expr_file);
      return emit(cmd_eval(ev, g), out);
    }
    if (*c_red) {
      red.target = resolve_expr_path(red.target);
      return emit(cmd_reduce(red, g), out);
    }
  } catch (const fedo::expr::ExprError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
