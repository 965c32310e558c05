#include <gtest/gtest.h>

#include <fstream>

#include "support.hpp"

using namespace lobsafe;

namespace {

const ModalLabel K1 = ModalLabel::knowledge(1);
const ModalLabel B1 = ModalLabel::belief(1);

ModelFile load(const std::string& file) {
  std::ifstream in(oracle::corpus(file));
  return model_from_json(json::parse(in));
}

TEST(Satisfies, FigureOne) {
  const auto mf = load("fig1.model.json");
  EXPECT_TRUE(satisfies(mf.model, 0, parse("B(1) p")));
  EXPECT_FALSE(satisfies(mf.model, 0, parse("B(1) B(1) p")));
}

TEST(Satisfies, FigureTwo) {
  const auto mf = load("fig2.model.json");
  EXPECT_TRUE(satisfies(mf.model, 0, parse("B(1)(B(1) p -> p)")));
  EXPECT_FALSE(satisfies(mf.model, 0, parse("B(1) p")));
}

TEST(Satisfies, AtomAndErrors) {
  Model m(Frame(2));
  m.valuation["p"] = singleton(1);
  EXPECT_TRUE(satisfies(m, 1, parse("p")));
  EXPECT_FALSE(satisfies(m, 0, parse("p")));
  EXPECT_FALSE(satisfies(m, 0, parse("q")));
  EXPECT_THROW(satisfies(m, 2, parse("p")), std::out_of_range);
  EXPECT_THROW(satisfies(m, 0, parse("K(i) p")), std::invalid_argument);
  EXPECT_THROW(satisfies(m, 0, parse("X")), std::invalid_argument);
}

TEST(Satisfies, AgreesWithNaiveEvaluator) {
  oracle::FormulaGen gen(5);
  std::mt19937 rng(6);
  for (int round = 0; round < 400; ++round) {
    const std::size_t n = 1 + rng() % 4;
    Frame fr(n);
    for (auto l : {K1, B1}) {
      fr.add_label(l);
      for (World a = 0; a < n; ++a) {
        for (World b = 0; b < n; ++b) {
          if (rng() % 3 == 0) fr.add_edge(l, a, b);
        }
      }
    }
    Model m(fr);
    m.valuation["p"] = rng() & all_worlds(n);
    m.valuation["q"] = rng() & all_worlds(n);
    const auto naive = oracle::to_naive(m);
    const Formula f = gen(5);
    const WorldSet ts = truth_set(m, f);
    for (World w = 0; w < n; ++w) ASSERT_EQ(contains(ts, w), oracle::naive_sat(naive, w, f)) << render(f);
  }
}

TEST(Validity, Examples) {
  Frame loop(1);
  loop.add_edge(K1, 0, 0);
  EXPECT_TRUE(valid_on_frame(loop, parse("K(1) p -> p")));
  EXPECT_FALSE(valid_on_frame(load("fig1.model.json").model.frame, parse("B(1) p -> B(1) B(1) p")));
}

TEST(Validity, DOnEverySerialTwoWorldFrame) {
  std::size_t serial = 0;
  oracle::all_frames(2, {B1}, [&](const Frame& fr) {
    if (!oracle::naive_serial(fr, B1)) return;
    ++serial;
    EXPECT_TRUE(valid_on_frame(fr, parse("B(1) p -> <B(1)> p")));
  });
  // Each world picks one of 3 non-empty successor sets.
  EXPECT_EQ(serial, 9U);
}

TEST(Validity, ResourceGuard) {
  Frame fr(4);
  EXPECT_THROW(valid_on_frame(fr, parse("a & b & c & d & e")), ResourceLimitExceeded);
  EXPECT_NO_THROW(valid_on_frame(fr, parse("a & b & c & d & e"), ValidityOptions{20}));
}

TEST(Validity, AgreesWithNaiveEnumeration) {
  oracle::FormulaGen gen(8);
  gen.atoms = {"p"};
  std::mt19937 rng(9);
  for (int round = 0; round < 150; ++round) {
    const std::size_t n = 1 + rng() % 3;
    Frame fr(n);
    for (auto l : {K1, B1}) {
      fr.add_label(l);
      for (World a = 0; a < n; ++a) {
        for (World b = 0; b < n; ++b) {
          if (rng() % 2) fr.add_edge(l, a, b);
        }
      }
    }
    const Formula f = gen(4);
    ASSERT_EQ(valid_on_frame(fr, f), oracle::naive_valid(fr, f)) << render(f);
  }
}

TEST(Validity, DistributionOnRandomFrames) {
  std::mt19937 rng(10);
  const Formula k = parse("K(1)(p -> q) -> (K(1) p -> K(1) q)");
  const Formula b = parse("B(1)(p & q -> ~p) -> (B(1)(p & q) -> B(1) ~p)");
  for (int round = 0; round < 500; ++round) {
    const std::size_t n = 1 + rng() % 4;
    Frame fr(n);
    for (auto l : {K1, B1}) {
      fr.add_label(l);
      for (World a = 0; a < n; ++a) {
        for (World c = 0; c < n; ++c) {
          if (rng() % 2) fr.add_edge(l, a, c);
        }
      }
    }
    ASSERT_TRUE(valid_on_frame(fr, k));
    ASSERT_TRUE(valid_on_frame(fr, b));
  }
}

TEST(ClassicalCorrespondence, ExhaustiveUpToThreeWorlds) {
  const Formula t = parse("K(1) p -> p");
  const Formula d = parse("K(1) p -> <K(1)> p");
  const Formula four = parse("K(1) p -> K(1) K(1) p");
  const Formula five = parse("~K(1) p -> K(1) ~K(1) p");
  for (std::size_t n = 1; n <= 3; ++n) {
    oracle::all_frames(n, {K1}, [&](const Frame& fr) {
      ASSERT_EQ(valid_on_frame(fr, t), oracle::naive_reflexive(fr, K1));
      ASSERT_EQ(valid_on_frame(fr, d), oracle::naive_serial(fr, K1));
      ASSERT_EQ(valid_on_frame(fr, four), oracle::naive_transitive(fr, K1));
      ASSERT_EQ(valid_on_frame(fr, five), oracle::naive_euclidean(fr, K1));
    });
  }
}

TEST(CheckProperty, Examples) {
  const Frame fig1 = load("fig1.model.json").model.frame;
  EXPECT_TRUE(check_property(fig1, Serial{B1}));
  Frame empty(2);
  empty.add_label(B1);
  EXPECT_FALSE(check_property(empty, Serial{B1}));
  EXPECT_THROW(check_property(Frame(2), Serial{B1}), std::invalid_argument);
}

TEST(CheckProperty, SubsetComposeHandExamples) {
  const SubsetCompose c{K1, B1, B1};
  Frame a(2);
  a.add_edge(B1, 0, 1).add_edge(K1, 1, 1);
  EXPECT_TRUE(check_property(a, c));
  Frame b(2);
  b.add_edge(B1, 0, 1).add_edge(K1, 1, 0);
  EXPECT_FALSE(check_property(b, c));
}

TEST(CheckProperty, AgreesWithNaiveDefinitions) {
  for (std::size_t n = 1; n <= 3; ++n) {
    oracle::all_frames(n, {B1}, [&](const Frame& fr) {
      ASSERT_EQ(check_property(fr, Reflexive{B1}), oracle::naive_reflexive(fr, B1));
      ASSERT_EQ(check_property(fr, Serial{B1}), oracle::naive_serial(fr, B1));
      ASSERT_EQ(check_property(fr, Transitive{B1}), oracle::naive_transitive(fr, B1));
      ASSERT_EQ(check_property(fr, Euclidean{B1}), oracle::naive_euclidean(fr, B1));
    });
  }
}

TEST(CheckProperty, TwoLabelPropertiesAgreeWithNaiveDefinitions) {
  for (std::size_t n = 1; n <= 2; ++n) {
    oracle::all_frames(n, {K1, B1}, [&](const Frame& fr) {
      bool subset = true, compose = true, witness = true;
      for (World x = 0; x < n; ++x) {
        bool found = false;
        for (World z = 0; z < n; ++z) {
          if (fr.edge(B1, x, z) && !fr.edge(K1, x, z)) subset = false;
          bool all = true;
          for (World y = 0; y < n; ++y) {
            if (fr.edge(B1, x, z) && fr.edge(K1, z, y) && !fr.edge(B1, x, y)) compose = false;
            if (fr.edge(K1, z, y) && !fr.edge(B1, x, y)) all = false;
          }
          found = found || (fr.edge(B1, x, z) && all);
        }
        witness = witness && found;
      }
      ASSERT_EQ(check_property(fr, Subset{B1, K1}), subset);
      ASSERT_EQ(check_property(fr, SubsetCompose{K1, B1, B1}), compose);
      ASSERT_EQ(check_property(fr, WitnessedCompose{B1, K1, B1}), witness);
    });
  }
}

TEST(ModelIo, RoundTrip) {
  const auto mf = load("fig1.model.json");
  EXPECT_EQ(mf.world_names, (std::vector<std::string>{"w", "v", "u"}));
  const auto again = model_from_json(model_to_json(mf.model, mf.world, mf.world_names));
  EXPECT_EQ(again.model.frame, mf.model.frame);
  EXPECT_EQ(again.model.valuation, mf.model.valuation);
  EXPECT_EQ(again.world, mf.world);
}

TEST(ModelIo, RejectsBadInput) {
  EXPECT_THROW(model_from_json(json::parse(R"({"relations": {}})")), std::invalid_argument);
  EXPECT_THROW(model_from_json(json::parse(R"({"worlds": 2, "relations": {"B1": [[0, 2]]}})")), std::invalid_argument);
  EXPECT_THROW(model_from_json(json::parse(R"({"worlds": 2, "valuation": {"p": [5]}})")), std::invalid_argument);
  EXPECT_THROW(model_from_json(json::parse(R"({"worlds": 2, "relations": {"Bi": []}})")), std::invalid_argument);
}

TEST(PropertyText, RoundTrip) {
  for (const char* text : {"reflexive:K1", "serial:B2", "transitive:B1", "euclidean:K1", "compose:K1,B1,B1",
                           "subset:B1,K1", "witness:B1,K1,B1"}) {
    EXPECT_EQ(to_string(parse_property(text)), text);
  }
  EXPECT_THROW(parse_property("serial"), std::invalid_argument);
  EXPECT_THROW(parse_property("serial:B1,K1"), std::invalid_argument);
  EXPECT_THROW(parse_property("dense:B1"), std::invalid_argument);
}

}  // namespace
