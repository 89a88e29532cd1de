#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fedo/expr/expr.hpp"
#include "fedo/identities/identities.hpp"
#include "fedo/symmetry/symmetry.hpp"

namespace fedo::expr {
namespace {

using Q = Rational;

std::string corpus(const std::string& name) {
  const char* env = std::getenv("FEDO_CORPUS_DIR");
  std::ifstream in(std::string(env ? env : FEDO_CORPUS_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExprError::Kind error_kind(const std::string& text) {
  try {
    parse(text);
  } catch (const ExprError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ExprError::Kind::Binding;
}

TEST(Expr, ParsePrintRoundTrip) {
  for (const char* name : {"eq1.ten", "eq1_ricci.ten", "eq2.ten", "eq4.ten"}) {
    const Expr e = parse(corpus(name));
    EXPECT_EQ(parse(print(e)), e) << name;
  }
}

TEST(Expr, InferredWeights) {
  const auto eq1 = infer(parse(corpus("eq1.ten")));
  EXPECT_EQ(eq1.delta, -2);
  EXPECT_EQ(eq1.p, 2);
  const auto eq2 = infer(parse(corpus("eq2.ten")));
  EXPECT_EQ(eq2.delta, -4);
  EXPECT_EQ(eq2.p, 0);
  const auto eq4 = infer(parse(corpus("eq4.ten")));
  EXPECT_EQ(eq4.delta, -2);
  EXPECT_EQ(eq4.p, 2);
}

TEST(Expr, ErrorsAreClassified) {
  EXPECT_EQ(error_kind("R[_i,_j]"), ExprError::Kind::Arity);
  EXPECT_EQ(error_kind("omega[_a,_a]"), ExprError::Kind::Variance);
  EXPECT_EQ(error_kind("omega[_a,_b] + omega[_a,_c]"), ExprError::Kind::Consistency);
  EXPECT_EQ(error_kind("omega[_a,_b] +"), ExprError::Kind::Syntax);
  EXPECT_EQ(error_kind("2/0 omega[_a,_b]"), ExprError::Kind::Syntax);
  EXPECT_EQ(error_kind("foo[_a]"), ExprError::Kind::Syntax);
}

TEST(Expr, ErrorsCarryPositions) {
  try {
    parse("omega[_a,_b]\n  + omega[_a,_c]");
    FAIL();
  } catch (const ExprError& e) {
    EXPECT_EQ(e.pos().line, 2);
  }
}

TEST(Expr, CorpusMatchesBuiltins) {
  const std::vector<std::pair<std::string, std::string>> files{
      {"eq1.ten", "eq1"}, {"eq1_ricci.ten", "eq1"}, {"eq2.ten", "eq2"}, {"eq4.ten", "eq4"}};
  for (const auto& [file, name] : files) {
    const auto c = compile(parse(corpus(file)));
    for (int n : {1, 2, 3}) {
      const auto w = standard_form(n);
      const auto r = curvature_projector(n).random_element<Q>(static_cast<std::uint64_t>(60 + n));
      const Bindings<Q> b{w, r, ricci(r, w)};
      EXPECT_EQ(evaluate<Q>(c, b), builtin(name)(r, w)) << file << " dim " << 2 * n;
    }
  }
}

TEST(Expr, AntisymmetrySumVanishes) {
  const auto w = standard_form(2);
  const Bindings<Q> b{w, std::nullopt, std::nullopt};
  EXPECT_TRUE(evaluate<Q>(compile(parse("omega[_a,_b] + omega[_b,_a]")), b).is_zero());
}

TEST(Expr, MissingBindingIsReported) {
  const auto w = standard_form(1);
  const Bindings<Q> b{w, std::nullopt, std::nullopt};
  try {
    evaluate<Q>(compile(parse("K[_a,_b]")), b);
    FAIL();
  } catch (const ExprError& e) {
    EXPECT_EQ(e.kind(), ExprError::Kind::Binding);
  }
}

TEST(Expr, FloatZeroTest) {
  const auto w = standard_form(2);
  const auto r = curvature_projector(2).random_element<Q>(3);
  const Bindings<double> b{w, tensor_cast<double>(r), tensor_cast<double>(ricci(r, w))};
  EXPECT_TRUE(float_zero_test(compile(parse(corpus("eq1.ten"))), b).vanishes);
  EXPECT_FALSE(float_zero_test(compile(parse(corpus("eq2.ten"))), b).vanishes);
}

TEST(Expr, IntermediateOrder) {
  EXPECT_EQ(compile(parse(corpus("eq4.ten"))).max_intermediate_order(), 6);
  EXPECT_EQ(compile(parse(corpus("eq1.ten"))).max_intermediate_order(), 4);
}

}  // namespace
}  // namespace fedo::expr
