#include <gtest/gtest.h>

#include "support.hpp"

using namespace lobsafe;

namespace {

TEST(Tautology, Basics) {
  EXPECT_TRUE(is_tautology(parse("p -> p")));
  EXPECT_TRUE(is_tautology(parse("p | ~p")));
  EXPECT_TRUE(is_tautology(parse("true")));
  EXPECT_FALSE(is_tautology(parse("false")));
  EXPECT_FALSE(is_tautology(parse("p -> q")));
  EXPECT_TRUE(is_tautology(parse("((p -> q) -> p) -> p")));
}

TEST(Tautology, ModalSubformulasAreOpaque) {
  EXPECT_TRUE(is_tautology(parse("K(1) p -> K(1) p")));
  EXPECT_FALSE(is_tautology(parse("K(1) p -> p")));
  EXPECT_FALSE(is_tautology(parse("K(1)(p & q) -> K(1)(q & p)")));
  EXPECT_TRUE(is_tautology(parse("B(1) q & (B(1) q -> p) -> p")));
}

TEST(Tautology, DualsAreIdentified) {
  EXPECT_TRUE(is_tautology(parse("<B(1)> p <-> ~B(1) ~p")));
  EXPECT_TRUE(is_tautology(parse("<K(1)> ~p <-> ~K(1) p")));
  EXPECT_FALSE(is_tautology(parse("<K(1)> p <-> ~B(1) ~p")));
}

TEST(Tautology, AgreesWithTruthTableOverFourLetters) {
  oracle::FormulaGen gen(11);
  gen.atoms = {"a", "b", "c", "d"};
  gen.labels = {};
  int tautologies = 0;
  for (int k = 0; k < 5000; ++k) {
    Formula f = gen(5);
    // Bias towards tautologies so both answers are exercised.
    if (k % 2) f = disj(f, neg(gen(2)));
    const bool expected = oracle::truth_table_tautology(f, {"a", "b", "c", "d"});
    tautologies += expected;
    ASSERT_EQ(is_tautology(f), expected) << render(f);
  }
  EXPECT_GT(tautologies, 50);
}

TEST(Tautology, AgreesWithTruthTableWhenLettersAreModal) {
  // Replace letters by distinct modal formulas; tautology status must not change.
  const std::map<std::string, Formula> opaque{
      {"a", parse("K(1) p")}, {"b", parse("B(1)(p -> q)")}, {"c", parse("K(2) B(1) p")}, {"d", parse("B(1) p")}};
  oracle::FormulaGen gen(12);
  gen.atoms = {"a", "b", "c", "d"};
  gen.labels = {};
  for (int k = 0; k < 2000; ++k) {
    Formula f = gen(5);
    if (k % 2) f = disj(f, neg(gen(2)));
    ASSERT_EQ(is_tautology(substitute_atoms(f, opaque)), oracle::truth_table_tautology(f, {"a", "b", "c", "d"}))
        << render(f);
  }
}

TEST(Entails, Basics) {
  const std::vector<Formula> premises{parse("p -> q"), parse("p")};
  EXPECT_TRUE(entails(premises, parse("q")));
  EXPECT_FALSE(entails(premises, parse("~q")));
  EXPECT_TRUE(entails(std::vector<Formula>{parse("p"), parse("~p")}, parse("false")));
  EXPECT_TRUE(entails(std::vector<Formula>{}, parse("p -> p")));
}

TEST(Negate, StripsOuterNegation) {
  EXPECT_EQ(negate(parse("~p")), parse("p"));
  EXPECT_EQ(negate(parse("p")), parse("~p"));
}

TEST(NormalizeDuals, RewritesDiamonds) {
  EXPECT_EQ(normalize_duals(parse("<B(1)> ~p")), parse("~B(1) p"));
  EXPECT_EQ(normalize_duals(parse("<B(1)> K(1) p")), parse("~B(1) ~K(1) p"));
}

}  // namespace
