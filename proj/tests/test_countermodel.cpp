#include <gtest/gtest.h>

#include <fstream>

#include "support.hpp"

using namespace lobsafe;

namespace {

const ModalLabel K1 = ModalLabel::knowledge(1);
const ModalLabel B1 = ModalLabel::belief(1);

json read(const std::string& file) {
  std::ifstream in(oracle::corpus(file));
  return json::parse(in);
}

SearchSpec fig1_spec(std::size_t max_worlds = 3) {
  return make_search_spec(parse("B(1) p -> B(1) B(1) p"), {Serial{B1}, SubsetCompose{K1, B1, B1}, Reflexive{K1}},
                          max_worlds);
}

SearchSpec fig2_spec(std::size_t max_worlds = 2) {
  return make_search_spec(parse("B(1)(B(1) p -> p) -> B(1) p"), {Serial{B1}}, max_worlds);
}

TEST(FindCountermodel, FigureOneSpec) {
  const auto spec = fig1_spec();
  const auto cm = find_countermodel(spec);
  ASSERT_TRUE(cm);
  EXPECT_TRUE(verify_countermodel(cm->model, cm->world, spec));
  EXPECT_EQ(spec_from_json(read("fig1.spec.json")).target, spec.target);
}

TEST(FindCountermodel, FigureOneSpecMinimalWitness) {
  // A serial one-world frame is a reflexive point, which validates 4. Two
  // worlds already suffice: a B-cycle between them with p true at one only.
  EXPECT_FALSE(find_countermodel(fig1_spec(1)));
  const auto cm = find_countermodel(fig1_spec(2));
  ASSERT_TRUE(cm);
  EXPECT_EQ(cm->model.frame.size(), 2U);
}

TEST(VerifyCountermodel, ShippedFigureOne) {
  const auto mf = model_from_json(read("fig1.model.json"));
  EXPECT_TRUE(verify_countermodel(mf.model, 0, fig1_spec()));
}

TEST(VerifyCountermodel, FigureOneWithoutLoopBreaksSeriality) {
  auto j = read("fig1.model.json");
  j["relations"]["B1"] = json::array({json::array({0, 1}), json::array({1, 2})});
  const auto mf = model_from_json(j);
  EXPECT_FALSE(verify_countermodel(mf.model, 0, make_search_spec(parse("B(1) p -> B(1) B(1) p"), {Serial{B1}}, 3)));
}

TEST(FindCountermodel, FigureTwoSpec) {
  const auto spec = fig2_spec();
  const auto cm = find_countermodel(spec);
  ASSERT_TRUE(cm);
  EXPECT_TRUE(verify_countermodel(cm->model, cm->world, spec));
  const auto mf = model_from_json(read("fig2.model.json"));
  EXPECT_TRUE(verify_countermodel(mf.model, 0, spec));
}

TEST(FindCountermodel, FigureTwoAlreadyFailsOnOneReflexiveWorld) {
  // A serial one-world frame is a reflexive point. With p false there,
  // B(Bp -> p) holds (Bp is false) while Bp fails, so the Löb instance is
  // falsified with a single world.
  const auto cm = find_countermodel(fig2_spec(1));
  ASSERT_TRUE(cm);
  EXPECT_EQ(cm->model.frame.size(), 1U);
  EXPECT_TRUE(cm->model.frame.edge(B1, 0, 0));
  EXPECT_FALSE(satisfies(cm->model, 0, parse("p")));
  // Of the four one-world configurations (loop or not, p or not) only the
  // two loops are serial, and the loop with p false is the countermodel.
  int falsifying = 0;
  for (int loop = 0; loop < 2; ++loop) {
    for (int pv = 0; pv < 2; ++pv) {
      Frame fr(1);
      fr.add_label(B1);
      if (loop) fr.add_edge(B1, 0, 0);
      Model m(fr);
      m.valuation["p"] = pv ? 1 : 0;
      falsifying += verify_countermodel(m, 0, fig2_spec(1));
    }
  }
  EXPECT_EQ(falsifying, 1);
}

TEST(FindCountermodel, ContradictionFalsifiedOnOneWorld) {
  const auto cm = find_countermodel(make_search_spec(parse("p & ~p"), {}, 3));
  ASSERT_TRUE(cm);
  EXPECT_EQ(cm->model.frame.size(), 1U);
  EXPECT_EQ(cm->world, 0U);
}

TEST(FindCountermodel, ValidFormulaHasNone) {
  EXPECT_FALSE(find_countermodel(make_search_spec(parse("K(1) p -> p"), {Reflexive{K1}}, 4)));
  EXPECT_FALSE(find_countermodel(make_search_spec(parse("B(1) p -> <B(1)> p"), {Serial{B1}}, 3)));
}

TEST(FindCountermodel, Limits) {
  EXPECT_THROW(find_countermodel(make_search_spec(parse("p"), {}, 5)), ResourceLimitExceeded);
  EXPECT_THROW(find_countermodel(make_search_spec(parse("p & q & r"), {}, 2)), ResourceLimitExceeded);
  EXPECT_THROW(find_countermodel(make_search_spec(parse("K(1) p & B(1) p & K(2) p"), {}, 2)), ResourceLimitExceeded);
  EXPECT_THROW(find_countermodel(make_search_spec(parse("p"), {}, 0)), std::invalid_argument);
  SearchSpec missing = make_search_spec(parse("K(1) p"), {}, 2);
  missing.labels.clear();
  EXPECT_THROW(find_countermodel(missing), std::invalid_argument);
}

TEST(FindCountermodel, ExistenceAgreesWithBruteForce) {
  oracle::FormulaGen gen(21);
  gen.atoms = {"p"};
  const std::vector<std::vector<FrameProperty>> constraint_sets{
      {}, {Serial{B1}}, {Reflexive{K1}, Transitive{B1}}, {Euclidean{K1}, SubsetCompose{K1, B1, B1}}};
  for (int round = 0; round < 120; ++round) {
    const Formula f = gen(4);
    const auto& cs = constraint_sets[round % constraint_sets.size()];
    SearchSpec spec = make_search_spec(f, cs, 2);
    spec.labels = {K1, B1};
    std::size_t brute_min = 0;
    for (std::size_t n = 1; n <= 2 && !brute_min; ++n) {
      oracle::all_frames(n, {K1, B1}, [&](const Frame& fr) {
        if (brute_min) return;
        for (const auto& c : cs) {
          if (!check_property(fr, c)) return;
        }
        if (!oracle::naive_valid(fr, f)) brute_min = n;
      });
    }
    const auto cm = find_countermodel(spec);
    ASSERT_EQ(cm.has_value(), brute_min != 0) << render(f);
    if (cm) {
      EXPECT_EQ(cm->model.frame.size(), brute_min);
      EXPECT_TRUE(verify_countermodel(cm->model, cm->world, spec));
    }
  }
}

TEST(FindCountermodel, DeterministicFirstHit) {
  const auto a = find_countermodel(fig1_spec());
  const auto b = find_countermodel(fig1_spec());
  ASSERT_TRUE(a && b);
  EXPECT_EQ(model_to_json(a->model, a->world).dump(), model_to_json(b->model, b->world).dump());
}

TEST(ConstrainedFrames, SerialCountsMatchBruteForce) {
  for (std::size_t n = 1; n <= 3; ++n) {
    std::size_t expected = 0, got = 0;
    oracle::all_frames(n, {B1}, [&](const Frame& fr) { expected += oracle::naive_serial(fr, B1); });
    for_each_constrained_frame(n, {B1}, {Serial{B1}}, [&](const Frame&) {
      ++got;
      return true;
    });
    EXPECT_EQ(got, expected);
  }
}

TEST(LsedR, NoAxiomHasACountermodelOnItsFrames) {
  const LogicPreset lsed = preset("LSED-R");
  const auto conditions = lsed.frame_conditions_for(AgentId{1});
  for (const auto& s : lsed.schemas) {
    const Formula inst = specialize(s.formula);
    EXPECT_FALSE(find_countermodel(make_search_spec(inst, conditions, 3))) << s.name;
  }
}

TEST(LsedR, FigureOneBeliefRelationHasNoCompatibleKnowledgeRelation) {
  // R_b = {(w,v),(v,u),(u,u)}: RB at w forces R_k(v,.) within {v}, while
  // R_b within R_k needs (v,u) in R_k.
  const auto conditions = preset("LSED-R").frame_conditions_for(AgentId{1});
  int compatible = 0;
  oracle::all_frames(3, {K1}, [&](const Frame& k_only) {
    Frame fr = k_only;
    fr.add_label(B1);
    fr.add_edge(B1, 0, 1).add_edge(B1, 1, 2).add_edge(B1, 2, 2);
    bool ok = true;
    for (const auto& c : conditions) ok = ok && check_property(fr, c);
    compatible += ok;
  });
  EXPECT_EQ(compatible, 0);
}

}  // namespace
