#pragma once

// Shared helpers for the test binaries: seeded random formulas and
// brute-force oracles that do not reuse the library's own algorithms.

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "lobsafe.hpp"

namespace lobsafe::oracle {

inline std::string corpus(const std::string& file) { return std::string(LOBSAFE_CORPUS_DIR) + "/" + file; }

struct FormulaGen {
  std::mt19937 rng;
  std::vector<std::string> atoms{"p", "q"};
  std::vector<ModalLabel> labels{ModalLabel::knowledge(1), ModalLabel::belief(1)};
  bool constants = true;

  explicit FormulaGen(unsigned seed) : rng(seed) {}

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

  Formula leaf() {
    if (constants && pick(8) == 0) return pick(2) ? Formula::top() : Formula::bottom();
    return atom(atoms[pick(atoms.size())]);
  }

  Formula operator()(int depth) {
    if (depth <= 0 || pick(4) == 0) return leaf();
    const std::size_t modal = labels.empty() ? 0 : 2;
    switch (pick(5 + modal)) {
      case 0: return neg((*this)(depth - 1));
      case 1: return conj((*this)(depth - 1), (*this)(depth - 1));
      case 2: return disj((*this)(depth - 1), (*this)(depth - 1));
      case 3: return implies((*this)(depth - 1), (*this)(depth - 1));
      case 4: return iff((*this)(depth - 1), (*this)(depth - 1));
      case 5: return box(labels[pick(labels.size())], (*this)(depth - 1));
      default: return diamond(labels[pick(labels.size())], (*this)(depth - 1));
    }
  }
};

/// Naive classical evaluation of a modal-free formula.
inline bool eval_classical(const Formula& f, const std::map<std::string, bool>& v) {
  switch (f.op()) {
    case Op::Atom: return v.at(f.name());
    case Op::Top: return true;
    case Op::Bottom: return false;
    case Op::Not: return !eval_classical(f.operand(), v);
    case Op::And: return eval_classical(f.lhs(), v) && eval_classical(f.rhs(), v);
    case Op::Or: return eval_classical(f.lhs(), v) || eval_classical(f.rhs(), v);
    case Op::Implies: return !eval_classical(f.lhs(), v) || eval_classical(f.rhs(), v);
    case Op::Iff: return eval_classical(f.lhs(), v) == eval_classical(f.rhs(), v);
    default: throw std::invalid_argument("modal operator in eval_classical");
  }
}

/// Truth table over the given letters.
inline bool truth_table_tautology(const Formula& f, const std::vector<std::string>& letters) {
  for (unsigned code = 0; code < (1U << letters.size()); ++code) {
    std::map<std::string, bool> v;
    for (std::size_t k = 0; k < letters.size(); ++k) v[letters[k]] = (code >> k) & 1U;
    if (!eval_classical(f, v)) return false;
  }
  return true;
}

/// Adjacency-matrix model for the naive evaluator.
struct NaiveModel {
  std::size_t n = 0;
  std::map<ModalLabel, std::vector<std::vector<bool>>> rel;
  std::map<std::string, std::vector<bool>> val;
};

inline bool naive_sat(const NaiveModel& m, std::size_t w, const Formula& f) {
  switch (f.op()) {
    case Op::Atom: {
      auto it = m.val.find(f.name());
      return it != m.val.end() && it->second[w];
    }
    case Op::Top: return true;
    case Op::Bottom: return false;
    case Op::Not: return !naive_sat(m, w, f.operand());
    case Op::And: return naive_sat(m, w, f.lhs()) && naive_sat(m, w, f.rhs());
    case Op::Or: return naive_sat(m, w, f.lhs()) || naive_sat(m, w, f.rhs());
    case Op::Implies: return !naive_sat(m, w, f.lhs()) || naive_sat(m, w, f.rhs());
    case Op::Iff: return naive_sat(m, w, f.lhs()) == naive_sat(m, w, f.rhs());
    case Op::Box:
    case Op::Diamond: {
      const bool universal = f.is(Op::Box);
      auto it = m.rel.find(f.label());
      for (std::size_t v = 0; v < m.n; ++v) {
        const bool edge = it != m.rel.end() && it->second[w][v];
        if (!edge) continue;
        if (naive_sat(m, v, f.operand()) != universal) return !universal;
      }
      return universal;
    }
  }
  return false;
}

inline NaiveModel to_naive(const Model& m) {
  NaiveModel out;
  out.n = m.frame.size();
  for (const auto& [l, rows] : m.frame.relations()) {
    auto& mat = out.rel[l];
    mat.assign(out.n, std::vector<bool>(out.n, false));
    for (std::size_t a = 0; a < out.n; ++a) {
      for (std::size_t b = 0; b < out.n; ++b) mat[a][b] = contains(rows[a], b);
    }
  }
  for (const auto& [name, set] : m.valuation) {
    auto& v = out.val[name];
    v.assign(out.n, false);
    for (std::size_t w = 0; w < out.n; ++w) v[w] = contains(set, w);
  }
  return out;
}

/// Every frame on n worlds over `labels` by counting through all edge bits.
inline void all_frames(std::size_t n, const std::vector<ModalLabel>& labels, const std::function<void(const Frame&)>& fn) {
  const std::size_t bits = n * n * labels.size();
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
    Frame fr(n);
    for (const auto& l : labels) fr.add_label(l);
    std::size_t bit = 0;
    for (const auto& l : labels) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b, ++bit) {
          if ((code >> bit) & 1U) fr.add_edge(l, a, b);
        }
      }
    }
    fn(fr);
  }
}

/// Frame validity by explicit enumeration of valuations through the naive
/// evaluator.
inline bool naive_valid(const Frame& fr, const Formula& f) {
  const auto atoms = atoms_of(f);
  const std::vector<std::string> letters(atoms.begin(), atoms.end());
  const std::size_t n = fr.size();
  const std::size_t bits = n * letters.size();
  Model base(fr);
  NaiveModel m = to_naive(base);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
    for (std::size_t k = 0; k < letters.size(); ++k) {
      auto& v = m.val[letters[k]];
      v.assign(n, false);
      for (std::size_t w = 0; w < n; ++w) v[w] = (code >> (k * n + w)) & 1U;
    }
    for (std::size_t w = 0; w < n; ++w) {
      if (!naive_sat(m, w, f)) return false;
    }
  }
  return true;
}

/// Independent first-order checks of the classical frame properties.
inline bool naive_reflexive(const Frame& fr, ModalLabel l) {
  for (World x = 0; x < fr.size(); ++x) {
    if (!fr.edge(l, x, x)) return false;
  }
  return true;
}
inline bool naive_serial(const Frame& fr, ModalLabel l) {
  for (World x = 0; x < fr.size(); ++x) {
    bool any = false;
    for (World y = 0; y < fr.size(); ++y) any = any || fr.edge(l, x, y);
    if (!any) return false;
  }
  return true;
}
inline bool naive_transitive(const Frame& fr, ModalLabel l) {
  for (World x = 0; x < fr.size(); ++x) {
    for (World y = 0; y < fr.size(); ++y) {
      for (World z = 0; z < fr.size(); ++z) {
        if (fr.edge(l, x, y) && fr.edge(l, y, z) && !fr.edge(l, x, z)) return false;
      }
    }
  }
  return true;
}
inline bool naive_euclidean(const Frame& fr, ModalLabel l) {
  for (World x = 0; x < fr.size(); ++x) {
    for (World y = 0; y < fr.size(); ++y) {
      for (World z = 0; z < fr.size(); ++z) {
        if (fr.edge(l, x, y) && fr.edge(l, x, z) && !fr.edge(l, y, z)) return false;
      }
    }
  }
  return true;
}
inline bool naive_irreflexive(const Frame& fr, ModalLabel l) {
  for (World x = 0; x < fr.size(); ++x) {
    if (fr.edge(l, x, x)) return false;
  }
  return true;
}

}  // namespace lobsafe::oracle
