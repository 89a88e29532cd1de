#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fedo/cli/report.hpp"

namespace fedo::cli {

/// Bad arguments or a request beyond the supported caps (exit code 2).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::uint64_t kDefaultSeed = 20240229;

struct GlobalOptions {
  std::uint64_t seed = kDefaultSeed;
  int threads = 1;
};

/// Seed from FEDOCHECK_SEED if set, else `fallback`. Throws UsageError on a
/// malformed value.
std::uint64_t seed_from_env(std::uint64_t fallback);

struct DimsArgs {
  int p = 0;
  int weight = 0;
  int dim = 2;
  int samples = 0;
  std::string field = "prime";  // prime | exact
};
RunReport cmd_dims(const DimsArgs& args, const GlobalOptions& g);

struct IdentitiesArgs {
  int p = 0;
  int weight = 0;
  int dim = 2;
  std::string cert_dir;  // empty: certificates only in the report
};
RunReport cmd_identities(const IdentitiesArgs& args, const GlobalOptions& g);

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"scalar", "two-form",    "chern",       "main-theorem",
                                              "divergence", "sft", "homogeneity", "equivariance"};
  return names;
}

struct VerifyArgs {
  std::string suite;
  int dim = 0;     // 0: suite default
  int trials = 0;  // 0: suite default
};
RunReport cmd_verify(const VerifyArgs& args, const GlobalOptions& g);

struct EvalArgs {
  std::string expr_file;
  int dim = 4;
  /// "random:<seed>", "flat", or "file:<path>" (serialized structure).
  std::string structure = "random:1";
  std::string field = "exact";  // exact | float
};
RunReport cmd_eval(const EvalArgs& args, const GlobalOptions& g);

struct ReduceArgs {
  /// Path of a .ten file, or "builtin:<name>".
  std::string target;
  /// Dimension 2n of the restriction; structures are extended to 2n+2.
  int dim = 2;
  int trials = 5;
};
RunReport cmd_reduce(const ReduceArgs& args, const GlobalOptions& g);

}  // namespace fedo::cli
