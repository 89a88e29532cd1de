#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "fedo/core/scalar.hpp"
#include "fedo/invariants/matchings.hpp"

namespace fedo {

/// Natural p-covariant tensors of weight δ in dimension 2n.
struct SpaceSpec {
  int p = 0;
  int delta = 0;
  int n = 1;

  int dim() const { return 2 * n; }
  SpaceSpec with_n(int m) const { return {p, delta, m}; }
  std::string str() const;
};

/// (d_1, ..., d_r): d_i copies of a normal tensor of order i+3.
using SolutionTuple = std::vector<int>;

/// 4 d_1 + 5 d_2 + ... + (3+r) d_r + p.
int tuple_order(const SolutionTuple& d, int p);
std::string tuple_str(const SolutionTuple& d);

/// All tuples with 2 d_1 + 3 d_2 + ... + (r+1) d_r = p - δ, trailing zeros
/// trimmed, in lexicographic order. r_max < 0 means p - δ.
std::vector<SolutionTuple> weight_solutions(int p, int delta, int r_max = -1);

class CapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Independent rank computations disagree; more samples are needed.
class RankDisagreement : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxMatchingOrder = 12;
inline constexpr int kMaxSpaceDim = 8;

/// Throws CapError / std::invalid_argument if the request cannot be handled.
void validate_spec(const SpaceSpec& spec);

struct RankOptions {
  std::uint64_t seed = 0;
  /// Fixed sample count per batch; 0 means adaptive (stop after `patience`
  /// consecutive samples that leave the rank unchanged, or at full rank).
  int samples = 0;
  int patience = 3;
  int threads = 1;
  /// Rank over Q on small integer samples instead of two prime fields (slow).
  bool exact = false;
};

struct TupleRank {
  SolutionTuple tuple;
  int order = 0;
  long matchings = 0;
  long rank = 0;
  int samples_used = 0;
};

struct SpaceDimResult {
  SpaceSpec spec;
  long total = 0;
  std::vector<TupleRank> tuples;
};

/// dim T_{p,δ}[2n]: per solution tuple, the rank of the matrix of matching
/// invariants evaluated on random samples ⊗_r t_r^{⊗d_r} ⊗ ξ_1 ⊗ ... ⊗ ξ_p,
/// computed in two prime fields on disjoint sample batches.
SpaceDimResult space_dim(const SpaceSpec& spec, const RankOptions& opts = {});

struct IdentityDimResult {
  SpaceDimResult low;   // dimension 2n
  SpaceDimResult high;  // dimension 2n + 2
  long dim = 0;
};

/// dim K_{p,δ}[2n] = dim T[2n+2] - dim T[2n].
IdentityDimResult identity_space_dim(const SpaceSpec& spec, const RankOptions& opts = {});

/// A combination of matching invariants on one solution tuple that vanishes
/// in dimension 2n and not in dimension 2n+2.
struct IdentityCertificate {
  SpaceSpec spec;
  SolutionTuple tuple;
  std::vector<std::pair<Matching, Rational>> terms;
  std::uint64_t witness_seed = 0;
  Rational witness_value;

  std::string serialize() const;
  static IdentityCertificate parse(const std::string& text);
};

/// Basis of K_{p,δ}[2n], one certificate per basis vector. Coefficients are
/// found modulo a 61-bit prime, lifted to Q and re-verified exactly.
std::vector<IdentityCertificate> find_identity(const SpaceSpec& spec, const RankOptions& opts = {});

/// Layout of the sample factors of a tuple: for each r with d_r > 0, d_r
/// factors of order r+3 sharing one source, then p covector factors.
struct SampleLayout {
  std::vector<int> orders;
  std::vector<int> source;
  std::vector<int> source_kind;  // normal order m >= 1, or 0 for a covector
};
SampleLayout sample_layout(const SolutionTuple& d, int p);

/// Exact value of a certificate on (t_1, .., t_r) with the p slots filled by
/// ω(e_a, ·): returns the covariant p-tensor.
Tensor<Rational> certificate_tensor(const IdentityCertificate& cert, const std::vector<Tensor<Rational>>& normals);

}  // namespace fedo
