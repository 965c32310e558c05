#pragma once

// Propositional reasoning over modal formulas. Maximal non-propositional
// subformulas (atoms and boxes) are treated as opaque propositional letters;
// diamonds are first rewritten to their box duals so that <l>A and ~l~A
// abstract to the same letter.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <span>
#include <vector>

#include "lobsafe/formula.hpp"

namespace lobsafe {

/// Negation that cancels an existing outer negation instead of stacking one.
inline Formula negate(const Formula& f) { return f.is(Op::Not) ? f.operand() : neg(f); }

/// Rewrites every Diamond(l, A) into ~Box(l, negate(A)), recursively.
/// Sound in every normal modal logic (A and ~~A are interchangeable under
/// boxes by RK).
inline Formula normalize_duals(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Bottom:
    case Op::Top:
      return f;
    case Op::Not:
      return neg(normalize_duals(f.lhs()));
    case Op::Box:
      return box(f.label(), normalize_duals(f.lhs()));
    case Op::Diamond:
      return neg(box(f.label(), negate(normalize_duals(f.lhs()))));
    case Op::And:
      return conj(normalize_duals(f.lhs()), normalize_duals(f.rhs()));
    case Op::Or:
      return disj(normalize_duals(f.lhs()), normalize_duals(f.rhs()));
    case Op::Implies:
      return implies(normalize_duals(f.lhs()), normalize_duals(f.rhs()));
    case Op::Iff:
      return iff(normalize_duals(f.lhs()), normalize_duals(f.rhs()));
  }
  return f;
}

/// Opaque letters of a dual-normalized formula, in first-occurrence order.
inline std::vector<Formula> opaque_atoms(const Formula& f) {
  std::vector<Formula> out;
  auto walk = [&](auto&& self, const Formula& g) -> void {
    switch (g.op()) {
      case Op::Atom:
      case Op::Box:
        if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
        return;
      case Op::Diamond:
        self(self, normalize_duals(g));
        return;
      case Op::Bottom:
      case Op::Top:
        return;
      case Op::Not:
        self(self, g.lhs());
        return;
      default:
        self(self, g.lhs());
        self(self, g.rhs());
    }
  };
  walk(walk, normalize_duals(f));
  return out;
}

/// Small DPLL SAT solver over a Tseitin encoding. Variables are 1-based;
/// literals are signed ints.
class SatProblem {
 public:
  int new_var() { return ++num_vars_; }
  int num_vars() const { return num_vars_; }

  void add_clause(std::vector<int> clause) { clauses_.push_back(std::move(clause)); }

  /// Tseitin literal equivalent to the propositional skeleton of f (which
  /// must be dual-normalized). Opaque letters share variables across calls.
  int encode(const Formula& f) {
    switch (f.op()) {
      case Op::Atom:
      case Op::Box: {
        auto it = letters_.find(f);
        if (it != letters_.end()) return it->second;
        int v = new_var();
        letters_.emplace(f, v);
        return v;
      }
      case Op::Top:
        return true_literal();
      case Op::Bottom:
        return -true_literal();
      case Op::Not:
        return -encode(f.lhs());
      case Op::Diamond:
        return encode(normalize_duals(f));
      default:
        break;
    }
    const int a = encode(f.lhs());
    const int b = encode(f.rhs());
    const int g = new_var();
    switch (f.op()) {
      case Op::And:
        add_clause({-g, a});
        add_clause({-g, b});
        add_clause({g, -a, -b});
        break;
      case Op::Or:
        add_clause({-g, a, b});
        add_clause({g, -a});
        add_clause({g, -b});
        break;
      case Op::Implies:
        add_clause({-g, -a, b});
        add_clause({g, a});
        add_clause({g, -b});
        break;
      default:  // Iff
        add_clause({-g, -a, b});
        add_clause({-g, a, -b});
        add_clause({g, a, b});
        add_clause({g, -a, -b});
        break;
    }
    return g;
  }

  void assert_formula(const Formula& f) { add_clause({encode(normalize_duals(f))}); }

  bool satisfiable() {
    assignment_.assign(static_cast<std::size_t>(num_vars_) + 1, 0);
    trail_.clear();
    if (!propagate()) return false;
    return search();
  }

  /// Value of an opaque letter in the last satisfying assignment.
  bool value_of(const Formula& letter) const {
    auto it = letters_.find(letter);
    return it != letters_.end() && assignment_[static_cast<std::size_t>(it->second)] > 0;
  }

 private:
  int true_literal() {
    if (true_var_ == 0) {
      true_var_ = new_var();
      add_clause({true_var_});
    }
    return true_var_;
  }

  int value(int lit) const {
    int v = assignment_[static_cast<std::size_t>(std::abs(lit))];
    return lit > 0 ? v : -v;
  }

  void assign(int lit) {
    assignment_[static_cast<std::size_t>(std::abs(lit))] = static_cast<std::int8_t>(lit > 0 ? 1 : -1);
    trail_.push_back(std::abs(lit));
  }

  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& clause : clauses_) {
        int unassigned = 0;
        int last = 0;
        bool satisfied = false;
        for (int lit : clause) {
          int v = value(lit);
          if (v > 0) {
            satisfied = true;
            break;
          }
          if (v == 0) {
            ++unassigned;
            last = lit;
          }
        }
        if (satisfied) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          assign(last);
          changed = true;
        }
      }
    }
    return true;
  }

  int pick_branch() const {
    for (const auto& clause : clauses_) {
      bool satisfied = false;
      int candidate = 0;
      for (int lit : clause) {
        int v = value(lit);
        if (v > 0) {
          satisfied = true;
          break;
        }
        if (v == 0 && candidate == 0) candidate = lit;
      }
      if (!satisfied && candidate != 0) return candidate;
    }
    return 0;
  }

  bool search() {
    const int lit = pick_branch();
    if (lit == 0) return true;
    for (int choice : {lit, -lit}) {
      const std::size_t mark = trail_.size();
      assign(choice);
      if (propagate() && search()) return true;
      while (trail_.size() > mark) {
        assignment_[static_cast<std::size_t>(trail_.back())] = 0;
        trail_.pop_back();
      }
    }
    return false;
  }

  int num_vars_ = 0;
  int true_var_ = 0;
  std::vector<std::vector<int>> clauses_;
  std::map<Formula, int> letters_;
  std::vector<std::int8_t> assignment_;
  std::vector<int> trail_;
};

/// Propositional tautology over opaque modal subformulas.
inline bool is_tautology(const Formula& f) {
  SatProblem sat;
  sat.assert_formula(neg(f));
  return !sat.satisfiable();
}

/// premises ⊨ goal, propositionally over opaque modal subformulas.
inline bool entails(std::span<const Formula> premises, const Formula& goal) {
  SatProblem sat;
  for (const auto& p : premises) sat.assert_formula(p);
  sat.assert_formula(neg(goal));
  return !sat.satisfiable();
}

inline bool equivalent(const Formula& a, const Formula& b) { return is_tautology(iff(a, b)); }

}  // namespace lobsafe
