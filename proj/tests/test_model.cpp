#include <gtest/gtest.h>

#include "support.hpp"

using namespace bnpin;
using testing_support::random_network;

TEST(StateVector, RoundTripsStringsAndWords) {
  const auto s = StateVector::from_string("1011");
  EXPECT_EQ(s.size(), 4u);
  EXPECT_TRUE(s.get(0));
  EXPECT_FALSE(s.get(1));
  EXPECT_EQ(s.to_string(), "1011");
  EXPECT_EQ(s.to_word(), 0b1101u);
  EXPECT_EQ(StateVector::from_word(4, 0b1101), s);
  EXPECT_EQ(s.popcount(), 3u);
}

TEST(StateVector, WideStates) {
  StateVector s(130);
  s.set(129, true);
  s.set(64, true);
  EXPECT_EQ(s.popcount(), 2u);
  EXPECT_EQ(StateVector::from_string(s.to_string()), s);
  EXPECT_THROW(StateVector::from_string("10x"), Error);
}

TEST(TruthTable, ColumnZeroIsAllTrue) {
  // f = x0 & !x1 over (x0, x1): columns 11, 10, 01, 00
  const auto f = BoolExpr::conj({BoolExpr::var(0), BoolExpr::negate(BoolExpr::var(1))});
  EXPECT_EQ(truth_table(f, {0, 1}), (std::vector<std::uint8_t>{0, 1, 0, 0}));
}

TEST(TruthTable, ArityCap) {
  std::vector<BoolExpr> args;
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < 6; ++i) {
    args.push_back(BoolExpr::var(i));
    vars.push_back(i);
  }
  const auto f = BoolExpr::exclusive(std::move(args));
  EXPECT_THROW(truth_table(f, vars, 5), ArityError);
  EXPECT_NO_THROW(truth_table(f, vars, 6));
}

TEST(FunctionalInputs, SemanticNotSyntactic) {
  // x0 | (x1 & !x1) depends on x0 only
  const auto f = BoolExpr::disj(
      {BoolExpr::var(0), BoolExpr::conj({BoolExpr::var(1), BoolExpr::negate(BoolExpr::var(1))})});
  EXPECT_EQ(functional_inputs(f), (std::vector<std::size_t>{0}));
  EXPECT_TRUE(functional_inputs(BoolExpr::constant(true)).empty());
}

TEST(FunctionalInputs, MatchesBruteForceOnRandomRules) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::vector<std::size_t> vars{0, 1, 2, 3, 4};
    const auto f = testing_support::random_expr(vars, rng, 4);
    std::vector<std::size_t> expected;
    for (auto v : vars) {
      bool depends = false;
      for (std::uint64_t s = 0; s < 32 && !depends; ++s) {
        const auto a = StateVector::from_word(5, s);
        auto b = a;
        b.set(v, !a.get(v));
        depends = eval(f, a) != eval(f, b);
      }
      if (depends) expected.push_back(v);
    }
    EXPECT_EQ(functional_inputs(f), expected);
  }
}

TEST(Parser, ReadsTlglFixture) {
  const auto net = testing_support::tlgl();
  ASSERT_EQ(net.size(), 29u);
  EXPECT_EQ(net.name(0), "IL15");
  EXPECT_EQ(net.name(28), "FLIP");
  EXPECT_EQ(net.neighbors(7), (std::vector<std::size_t>{2, 4, 5, 13}));  // FasL
  EXPECT_EQ(net.neighbors(14), (std::vector<std::size_t>{10, 15}));      // SPHK
  EXPECT_EQ(net.neighbors(17), (std::vector<std::size_t>{0, 10, 16}));   // Fas
}

TEST(Parser, PrecedenceNotAndXorOr) {
  const auto net = parse_network("A, A\nB, B\nC, !A & B ^ A | B\n");
  // ((!A & B) ^ A) | B
  for (std::uint64_t s = 0; s < 8; ++s) {
    const bool a = s & 1, b = (s >> 1) & 1;
    EXPECT_EQ(net.next(2, StateVector::from_word(3, s)), (((!a && b) != a) || b));
  }
}

TEST(Parser, ForwardReferencesCommentsAndHeader) {
  const auto net = parse_network("targets, factors\n# comment\nA, B  # trailing\nB, 1\n");
  EXPECT_EQ(net.size(), 2u);
  EXPECT_EQ(net.neighbors(0), (std::vector<std::size_t>{1}));
}

TEST(Parser, ErrorsCarryPositions) {
  try {
    parse_network("A, A\nB, A &\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_network("A, Q\n"), ParseError);
  EXPECT_THROW(parse_network("A, A\nA, 1\n"), ParseError);
  EXPECT_THROW(parse_network("A A\n"), ParseError);
  EXPECT_THROW(parse_network("A, (A\n"), ParseError);
}

TEST(Parser, EmitRoundTripIsSemanticallyIdentical) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = random_network(1 + rng() % 12, 4, rng);
    const auto back = parse_network(emit_network(net));
    ASSERT_EQ(back.size(), net.size());
    for (std::size_t j = 0; j < net.size(); ++j) {
      EXPECT_EQ(back.name(j), net.name(j));
      EXPECT_EQ(back.neighbors(j), net.neighbors(j));
      EXPECT_EQ(back.table(j), net.table(j));
    }
  }
}

TEST(Dynamics, StepMatchesDirectEvaluation) {
  std::mt19937_64 rng(9);
  const auto net = random_network(10, 3, rng);
  for (std::uint64_t s = 0; s < 1024; ++s) {
    const auto x = StateVector::from_word(10, s);
    std::uint64_t expected = 0;
    for (std::size_t j = 0; j < 10; ++j)
      if (eval(net.rule(j), x)) expected |= std::uint64_t{1} << j;
    EXPECT_EQ(step_word(net, s), expected);
    EXPECT_EQ(step(net, x).to_word(), expected);
  }
}

TEST(Subnetwork, RequiresClosure) {
  const auto net = testing_support::tlgl();
  EXPECT_THROW(subnetwork(net, {1}), Error);  // RAS reads IL15
  EXPECT_EQ(subnetwork(net, {0, 1}).size(), 2u);
  const auto sub = subnetwork(net, {0, 8, 9, 10, 13});
  EXPECT_EQ(sub.size(), 5u);
}

TEST(Target, PatternMembership) {
  const auto t = TargetSet::pattern("1*0");
  EXPECT_TRUE(member(t, StateVector::from_string("110")));
  EXPECT_TRUE(member(t, StateVector::from_string("100")));
  EXPECT_FALSE(member(t, StateVector::from_string("111")));
  EXPECT_THROW(TargetSet::pattern("1x0"), Error);
  EXPECT_THROW(TargetSet::explicit_states({}), Error);
}
