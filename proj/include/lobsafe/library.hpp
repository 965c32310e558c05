#pragma once

// Checked-in derivations. Each entry is built with ProofBuilder and is
// expected to pass check_proof under its preset; the test suite replays them
// and cross-checks them semantically on small models.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "lobsafe/parser.hpp"
#include "lobsafe/presets.hpp"
#include "lobsafe/proof.hpp"

namespace lobsafe {

class UnknownProof : public std::invalid_argument {
 public:
  explicit UnknownProof(const std::string& name) : std::invalid_argument("unknown library proof '" + name + "'") {}
};

namespace library {

inline Formula f(std::string_view text) { return parse(text); }

/// Löb's theorem for B(1) from the two boxed premises B(Bp -> p) and the Löb
/// sentence B(q <-> (Bq -> p)), in KD45. Reasoning under the box goes
/// through RK; 4 is used twice.
inline Proof loeb_template() {
  const ModalLabel b = ModalLabel::belief(1);
  ProofBuilder pb("KD45", {f("B(1)(B(1) p -> p)"), f("B(1)(q <-> (B(1) q -> p))")});
  const auto l1 = pb.premise(f("B(1)(B(1) p -> p)"), "hypothesis of Loeb's theorem");
  const auto l2 = pb.premise(f("B(1)(q <-> (B(1) q -> p))"), "Loeb sentence, believed");
  const auto l3 = pb.axiom("4_B", f("B(1)(q <-> (B(1) q -> p)) -> B(1) B(1)(q <-> (B(1) q -> p))"));
  const auto l4 = pb.mp(l2, l3);
  const auto l5 = pb.tautology(f("(q <-> (B(1) q -> p)) -> (q -> (B(1) q -> p))"));
  const auto l6 = pb.nec(l5, b);
  const auto l7 = pb.axiom("K_B", f("B(1)((q <-> (B(1) q -> p)) -> (q -> (B(1) q -> p))) -> "
                                    "(B(1)(q <-> (B(1) q -> p)) -> B(1)(q -> (B(1) q -> p)))"));
  const auto l8 = pb.mp(l6, l7);
  const auto l9 = pb.axiom("K_B", f("B(1)(q -> (B(1) q -> p)) -> (B(1) q -> B(1)(B(1) q -> p))"));
  const auto l10 = pb.tautology(f("(q <-> (B(1) q -> p)) -> ((B(1) q -> p) -> q)"));
  const auto l11 = pb.nec(l10, b);
  const auto l12 = pb.axiom("K_B", f("B(1)((q <-> (B(1) q -> p)) -> ((B(1) q -> p) -> q)) -> "
                                     "(B(1)(q <-> (B(1) q -> p)) -> B(1)((B(1) q -> p) -> q))"));
  const auto l13 = pb.mp(l11, l12);
  const auto l14 = pb.axiom("K_B", f("B(1)((B(1) q -> p) -> q) -> (B(1)(B(1) q -> p) -> B(1) q)"));
  const auto l15 = pb.taut_consequence(
      {l8, l9, l13, l14}, f("B(1)(q <-> (B(1) q -> p)) -> (B(1) q <-> B(1)(B(1) q -> p))"));
  const auto l16 = pb.nec(l15, b);
  const auto l17 = pb.rk({l4, l16}, b, f("B(1) q <-> B(1)(B(1) q -> p)"));
  const auto l18 = pb.rk({l17}, b, f("B(1) q -> B(1)(B(1) q -> p)"));
  const auto l19 = pb.axiom("K_B", f("B(1)(B(1) q -> p) -> (B(1) B(1) q -> B(1) p)"));
  const auto l20 = pb.nec(l19, b);
  const auto l21 = pb.rk({l18, l20}, b, f("B(1) q -> (B(1) B(1) q -> B(1) p)"));
  const auto l22 = pb.axiom("4_B", f("B(1) q -> B(1) B(1) q"));
  const auto l23 = pb.nec(l22, b);
  const auto l24 = pb.rk({l21, l23}, b, f("B(1) q -> B(1) p"));
  const auto l25 = pb.rk({l24, l1}, b, f("B(1) q -> p"));
  const auto l26 = pb.rk({l2, l25}, b, f("q"));
  const auto l27 = pb.mp(l26, l22);
  const auto l28 = pb.mp(l25, l19);
  pb.mp(l27, l28, "Loeb's theorem");
  return pb.build();
}

/// The Löb implication B(B phi -> phi) -> B phi for an arbitrary phi, with
/// the Löb sentence for phi (fixed point letter q) as the only premise.
inline Proof loeb_implication(const Formula& phi) {
  const Proof base = substitute(loeb_template(), {{"p", phi}});
  return discharge(base, base.premises.front(), preset("KD45"));
}

/// S5 proves positive introspection from T and 5.
inline Proof s5_derives_4() {
  const ModalLabel k = ModalLabel::knowledge(1);
  ProofBuilder pb("S5", {});
  const auto l1 = pb.axiom("5_K", f("~K(1) p -> K(1) ~K(1) p"));
  const auto l2 = pb.taut_consequence({l1}, f("~K(1) ~K(1) p -> K(1) p"), "contrapositive of 5");
  const auto l3 = pb.nec(l2, k);
  const auto l4 = pb.axiom("K_K", f("K(1)(~K(1) ~K(1) p -> K(1) p) -> (K(1) ~K(1) ~K(1) p -> K(1) K(1) p)"));
  const auto l5 = pb.mp(l3, l4);
  const auto l6 = pb.axiom("T_K", f("K(1) ~K(1) p -> ~K(1) p"));
  const auto l7 = pb.taut_consequence({l6}, f("K(1) p -> ~K(1) ~K(1) p"));
  const auto l8 = pb.axiom("5_K", f("~K(1) ~K(1) p -> K(1) ~K(1) ~K(1) p"));
  const auto l9 = pb.taut_consequence({l7, l8}, f("K(1) p -> K(1) ~K(1) ~K(1) p"));
  pb.taut_consequence({l5, l9}, f("K(1) p -> K(1) K(1) p"));
  return pb.build();
}

/// KD45 plus a Löb sentence for a contradiction makes the agent believe the
/// contradiction: D gives ~B(p & ~p), hence B(B(p & ~p) -> p & ~p), and Löb
/// finishes.
inline Proof consistency_disaster() {
  const ModalLabel b = ModalLabel::belief(1);
  const Formula bottom = f("p & ~p");
  const Proof lemma = loeb_implication(bottom);
  ProofBuilder pb("KD45", lemma.premises);
  const auto l1 = pb.tautology(f("~(p & ~p)"));
  const auto l2 = pb.nec(l1, b);
  const auto l3 = pb.axiom("D_B", f("B(1) ~(p & ~p) -> <B(1)> ~(p & ~p)"));
  const auto l4 = pb.taut_consequence({l2, l3}, f("~B(1)(p & ~p)"), "belief is consistent");
  const auto l5 = pb.taut_consequence({l4}, f("B(1)(p & ~p) -> p & ~p"));
  const auto l6 = pb.nec(l5, b);
  const auto l7 = pb.lemma(lemma);
  pb.mp(l6, l7, "Loeb's theorem");
  return pb.build();
}

/// A crashing logic is unsound: with D as a schema and a Löb sentence for a
/// contradiction, KD45 derives falsum.
inline Proof crash_unsound() {
  const ModalLabel b = ModalLabel::belief(1);
  const Proof lemma = loeb_implication(f("p & ~p"));
  ProofBuilder pb("KD45", lemma.premises);
  const auto l1 = pb.axiom("D_B", f("B(1) p -> <B(1)> p"), "seriality");
  const auto l2 = pb.taut_consequence({l1}, f("~(B(1) p & B(1) ~p)"));
  const auto l3 = pb.tautology(f("p & ~p -> p"));
  const auto l4 = pb.nec(l3, b);
  const auto l5 = pb.axiom("K_B", f("B(1)(p & ~p -> p) -> (B(1)(p & ~p) -> B(1) p)"));
  const auto l6 = pb.mp(l4, l5);
  const auto l7 = pb.tautology(f("p & ~p -> ~p"));
  const auto l8 = pb.nec(l7, b);
  const auto l9 = pb.axiom("K_B", f("B(1)(p & ~p -> ~p) -> (B(1)(p & ~p) -> B(1) ~p)"));
  const auto l10 = pb.mp(l8, l9);
  const auto l11 = pb.taut_consequence({l2, l6, l10}, f("~B(1)(p & ~p)"));
  const auto l12 = pb.taut_consequence({l11}, f("B(1)(p & ~p) -> p & ~p"));
  const auto l13 = pb.nec(l12, b);
  const auto l14 = pb.lemma(lemma);
  const auto l15 = pb.mp(l13, l14);
  pb.taut_consequence({l11, l15}, f("false"), "contradiction");
  return pb.build();
}

/// KL proves B(Bp -> p): negative introspection of belief comes from CB, 5
/// and T on knowledge, positive from CB, and KB transfers both into belief.
inline Proof kl_belief_truth() {
  const ModalLabel k = ModalLabel::knowledge(1);
  ProofBuilder pb("KL", {});
  const auto l1 = pb.axiom("T_K", f("K(1) B(1) p -> B(1) p"));
  const auto l2 = pb.axiom("CB", f("B(1) p -> K(1) B(1) p"));
  const auto l3 = pb.axiom("5_K", f("~K(1) B(1) p -> K(1) ~K(1) B(1) p"));
  const auto l4 = pb.taut_consequence({l2}, f("~K(1) B(1) p -> ~B(1) p"));
  const auto l5 = pb.nec(l4, k);
  const auto l6 = pb.axiom("K_K", f("K(1)(~K(1) B(1) p -> ~B(1) p) -> (K(1) ~K(1) B(1) p -> K(1) ~B(1) p)"));
  const auto l7 = pb.mp(l5, l6);
  const auto l8 = pb.axiom("KB", f("K(1) ~B(1) p -> B(1) ~B(1) p"));
  const auto l9 = pb.taut_consequence({l1, l3, l7, l8}, f("~B(1) p -> B(1) ~B(1) p"), "negative introspection");
  const auto l10 = pb.tautology(f("~B(1) p -> (B(1) p -> p)"));
  const auto l11 = pb.nec(l10, k);
  const auto l12 = pb.axiom("KB", f("K(1)(~B(1) p -> (B(1) p -> p)) -> B(1)(~B(1) p -> (B(1) p -> p))"));
  const auto l13 = pb.mp(l11, l12);
  const auto l14 = pb.axiom("K_B", f("B(1)(~B(1) p -> (B(1) p -> p)) -> (B(1) ~B(1) p -> B(1)(B(1) p -> p))"));
  const auto l15 = pb.mp(l13, l14);
  const auto l16 = pb.tautology(f("p -> (B(1) p -> p)"));
  const auto l17 = pb.nec(l16, k);
  const auto l18 = pb.axiom("KB", f("K(1)(p -> (B(1) p -> p)) -> B(1)(p -> (B(1) p -> p))"));
  const auto l19 = pb.mp(l17, l18);
  const auto l20 = pb.axiom("K_B", f("B(1)(p -> (B(1) p -> p)) -> (B(1) p -> B(1)(B(1) p -> p))"));
  const auto l21 = pb.mp(l19, l20);
  pb.taut_consequence({l9, l15, l21}, f("B(1)(B(1) p -> p)"), "case split on B(1) p");
  return pb.build();
}

/// Every instance of SB is a theorem of LSED-R.
inline Proof rb_implies_sb() {
  ProofBuilder pb("LSED-R", {});
  const auto l1 = pb.axiom("RB", f("B(1) p -> <B(1)> K(1) p"));
  const auto l2 = pb.axiom("KB", f("K(1) ~K(1) p -> B(1) ~K(1) p"));
  const auto l3 = pb.taut_consequence({l2}, f("<B(1)> K(1) p -> <K(1)> K(1) p"), "contraposed KB");
  const auto l4 =
      pb.taut_consequence({l3}, f("(B(1) p -> <B(1)> K(1) p) -> (B(1) p -> <K(1)> K(1) p)"));
  pb.mp(l1, l4);
  return pb.build();
}

/// LSED-R proves the weakened positive introspection K p -> <K> K p.
inline Proof weak_pos_introspection() {
  ProofBuilder pb("LSED-R", {});
  const auto l1 = pb.axiom("KB", f("K(1) p -> B(1) p"));
  const auto l2 = pb.axiom("RB", f("B(1) p -> <B(1)> K(1) p"));
  const auto l3 = pb.axiom("KB", f("K(1) ~K(1) p -> B(1) ~K(1) p"));
  pb.taut_consequence({l1, l2, l3}, f("K(1) p -> <K(1)> K(1) p"));
  return pb.build();
}

}  // namespace library

inline const std::vector<std::string>& library_names() {
  static const std::vector<std::string> names{"loeb_template",  "s5_derives_4",  "consistency_disaster",
                                              "crash_unsound",  "kl_belief_truth", "rb_implies_sb",
                                              "weak_pos_introspection"};
  return names;
}

inline Proof library_proof(const std::string& name) {
  static const std::map<std::string, std::function<Proof()>> table{
      {"loeb_template", library::loeb_template},
      {"s5_derives_4", library::s5_derives_4},
      {"consistency_disaster", library::consistency_disaster},
      {"crash_unsound", library::crash_unsound},
      {"kl_belief_truth", library::kl_belief_truth},
      {"rb_implies_sb", library::rb_implies_sb},
      {"weak_pos_introspection", library::weak_pos_introspection},
  };
  auto it = table.find(name);
  if (it == table.end()) throw UnknownProof(name);
  return it->second();
}

}  // namespace lobsafe
