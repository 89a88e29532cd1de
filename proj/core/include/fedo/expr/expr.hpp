#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fedo/core/contract.hpp"
#include "fedo/core/scalar.hpp"
#include "fedo/symplectic/symplectic.hpp"

namespace fedo::expr {

struct SourcePos {
  int line = 1;
  int column = 1;
};

class ExprError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Arity, Variance, Consistency, Binding };

  ExprError(Kind kind, const std::string& message, SourcePos pos = {});

  Kind kind() const { return kind_; }
  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  Kind kind_;
  SourcePos pos_;
  std::string message_;
};

const char* to_string(ExprError::Kind kind);

enum class Symbol { Omega, OmegaInv, R, K, Delta };

/// Name used in source text, arity, and natural variance of each slot
/// (true = upper). omega and R are all-lower, omegaInv all-upper, delta is
/// (^, _).
std::string_view symbol_name(Symbol s);
int symbol_arity(Symbol s);
bool symbol_natural_upper(Symbol s, int slot);
/// Weight of the symbol written with its natural variance.
int symbol_weight(Symbol s);

struct Index {
  std::string name;
  bool upper = false;
  /// False only for bare names inside an alt(...) list.
  bool marked = true;
  SourcePos pos;

  friend bool operator==(const Index& a, const Index& b) {
    return a.name == b.name && a.upper == b.upper && a.marked == b.marked;
  }
};

struct Expr;

struct Factor {
  bool is_alt = false;
  Symbol symbol = Symbol::Omega;
  std::vector<Index> indices;  // symbol slots, or the alt index list
  std::shared_ptr<const Expr> body;
  SourcePos pos;

  friend bool operator==(const Factor& a, const Factor& b);
};

struct Term {
  Rational coef{1};
  std::vector<Factor> factors;
  SourcePos pos;

  friend bool operator==(const Term& a, const Term& b) { return a.coef == b.coef && a.factors == b.factors; }
};

/// Sum of terms. Equality ignores source positions.
struct Expr {
  std::vector<Term> terms;

  friend bool operator==(const Expr& a, const Expr& b) { return a.terms == b.terms; }
};

inline bool operator==(const Factor& a, const Factor& b) {
  if (a.is_alt != b.is_alt || a.indices != b.indices) return false;
  if (a.is_alt) return a.body && b.body && *a.body == *b.body;
  return a.symbol == b.symbol;
}

/// Parses the index-notation grammar:
///   expr    := term (("+" | "-") term)*        (a leading "-" is allowed)
///   term    := [rational ["*"]] factor ("*" factor)*
///   factor  := name "[" index ("," index)* "]" | "alt" "(" indexlist ")" "{" expr "}"
///   index   := ("^" | "_") identifier
///   name    := omega | omegaInv | R | K | delta
///   rational:= integer ["/" positive-integer]
/// "#" starts a comment running to the end of the line. Index validity is
/// checked here as well (see infer).
Expr parse(std::string_view text);

/// Canonical text; parse(print(e)) == e.
std::string print(const Expr& e);

struct FreeIndex {
  std::string name;
  bool upper = false;

  friend bool operator==(const FreeIndex& a, const FreeIndex& b) { return a.name == b.name && a.upper == b.upper; }
};

/// delta = Σ symbol weights - 2·(raised slots) + 2·(lowered slots) per term;
/// p = number of free lower indices; free lists the output slots in order
/// of first appearance in the first term.
struct WeightReport {
  int delta = 0;
  int p = 0;
  std::vector<FreeIndex> free;
};

/// Throws ExprError on repeated same-variance indices, indices used more
/// than twice, or terms disagreeing in free indices or weight.
WeightReport infer(const Expr& e);

struct CompiledExpr;

struct CompiledFactor {
  bool is_alt = false;
  Symbol symbol = Symbol::Omega;
  std::vector<bool> upper;  // variance per slot
  std::shared_ptr<const CompiledExpr> body;
  std::vector<int> alt_slots;  // slots of the body output to alternate
};

struct CompiledTerm {
  Rational coef{1};
  std::vector<CompiledFactor> factors;
  ContractionPlan plan;
};

struct CompiledExpr {
  std::vector<CompiledTerm> terms;
  std::vector<FreeIndex> free;
  int weight = 0;

  int order() const { return static_cast<int>(free.size()); }
  /// Largest tensor order appearing while evaluating any term, inputs included.
  int max_intermediate_order() const;
};

CompiledExpr compile(const Expr& e);

template <class S>
struct Bindings {
  SymplecticForm w;
  std::optional<Tensor<S>> r;
  std::optional<Tensor<S>> k;
};

/// Evaluates the compiled sum; output slots follow `free`. Lowering a
/// naturally upper slot uses lower_slot, raising uses raise_slot.
template <class S>
Tensor<S> evaluate(const CompiledExpr& c, const Bindings<S>& b, PlanOrder order = PlanOrder::Greedy,
                   std::uint64_t seed = 0);

template <class S>
Tensor<S> evaluate(const Expr& e, const Bindings<S>& b) {
  return evaluate<S>(compile(e), b);
}

/// Float-mode zero test: |value| <= 1e-9 · Σ_terms |term value|, componentwise.
struct FloatZeroTest {
  bool vanishes = true;
  double max_value = 0;
  double max_term_sum = 0;
};
FloatZeroTest float_zero_test(const CompiledExpr& c, const Bindings<double>& b);

}  // namespace fedo::expr
