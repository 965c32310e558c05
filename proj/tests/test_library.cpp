#include <gtest/gtest.h>

#include "mutations.hpp"
#include "support.hpp"

using namespace lobsafe;

namespace {

class Library : public ::testing::TestWithParam<std::string> {};

TEST_P(Library, ChecksUnderItsPreset) {
  const Proof p = library_proof(GetParam());
  const auto v = check_proof(p);
  EXPECT_TRUE(v.valid) << "line " << v.line << ": " << v.message;
}

TEST_P(Library, EveryJustificationMutantIsRejected) {
  const Proof p = library_proof(GetParam());
  const LogicPreset logic = preset(p.preset);
  const auto mutants = oracle::justification_mutants(p, logic);
  EXPECT_GE(mutants.size(), p.lines.size());
  for (const auto& m : mutants) {
    EXPECT_FALSE(check_proof(m.proof, logic).valid) << "line " << m.line + 1 << " survives: " << m.what;
  }
}

TEST_P(Library, NecessitatingAPremiseDependentLineIsRejected) {
  const Proof q = oracle::necessitate_premise_dependent(library_proof(GetParam()));
  const auto v = check_proof(q);
  EXPECT_FALSE(v.valid);
  EXPECT_EQ(v.reason, InvalidReason::NecessitationOnPremise);
}

// Semantic cross-check: on every model with at most three worlds whose frame
// meets the preset's conditions and which makes every premise globally true,
// the conclusion is globally true as well.
TEST_P(Library, SoundOnSmallModels) {
  const Proof p = library_proof(GetParam());
  const LogicPreset logic = preset(p.preset);
  const auto conditions = logic.frame_conditions_for(AgentId{1});
  std::vector<ModalLabel> labels;
  for (ModalKind k : logic.kinds()) labels.push_back(ModalLabel{k, AgentId{1}});
  std::set<std::string> atom_set = atoms_of(p.conclusion);
  for (const auto& f : p.premises) {
    for (const auto& a : atoms_of(f)) atom_set.insert(a);
  }
  const std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  std::size_t frames = 0, premise_models = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    oracle::all_frames(n, labels, [&](const Frame& fr) {
      for (const auto& c : conditions) {
        if (!check_property(fr, c)) return;
      }
      ++frames;
      for_each_valuation(fr, atoms, [&](const Model& m) {
        for (const auto& f : p.premises) {
          if (!globally_true(m, f)) return true;
        }
        ++premise_models;
        EXPECT_TRUE(globally_true(m, p.conclusion)) << GetParam();
        return true;
      });
    });
  }
  EXPECT_GT(frames, 0U);
  // A believed Loeb sentence for an unsatisfiable target has no model on
  // serial frames; everything else is checked non-vacuously.
  const bool vacuous = GetParam() == "consistency_disaster" || GetParam() == "crash_unsound";
  if (vacuous) {
    EXPECT_EQ(premise_models, 0U);
  } else {
    EXPECT_GT(premise_models, 0U);
  }
}

INSTANTIATE_TEST_SUITE_P(All, Library, ::testing::ValuesIn(library_names()));

TEST(LibraryContents, Conclusions) {
  EXPECT_EQ(library_proof("loeb_template").conclusion, parse("B(1) p"));
  EXPECT_EQ(library_proof("loeb_template").premises,
            (std::vector<Formula>{parse("B(1)(B(1) p -> p)"), parse("B(1)(q <-> (B(1) q -> p))")}));
  EXPECT_EQ(library_proof("s5_derives_4").conclusion, parse("K(1) p -> K(1) K(1) p"));
  EXPECT_EQ(library_proof("consistency_disaster").conclusion, parse("B(1)(p & ~p)"));
  EXPECT_EQ(library_proof("crash_unsound").conclusion, parse("false"));
  EXPECT_EQ(library_proof("kl_belief_truth").conclusion, parse("B(1)(B(1) p -> p)"));
  EXPECT_EQ(library_proof("rb_implies_sb").conclusion, parse("B(1) p -> <K(1)> K(1) p"));
  EXPECT_EQ(library_proof("weak_pos_introspection").conclusion, parse("K(1) p -> <K(1)> K(1) p"));
}

TEST(LibraryContents, RbImpliesSbConcludesAnSbInstance) {
  EXPECT_TRUE(match_schema(parse(schemas::kSupportedBelief), library_proof("rb_implies_sb").conclusion));
}

TEST(LibraryContents, TheoremProofsHaveNoPremises) {
  for (const char* name : {"s5_derives_4", "kl_belief_truth", "rb_implies_sb", "weak_pos_introspection"}) {
    EXPECT_TRUE(library_proof(name).premises.empty()) << name;
  }
}

TEST(LibraryContents, UnknownName) { EXPECT_THROW(library_proof("godel"), UnknownProof); }

}  // namespace
