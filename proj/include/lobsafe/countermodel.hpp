#pragma once

// Bounded exhaustive search for finite models that falsify a formula at some
// world, subject to frame-property constraints.
//
// Canonical order: world count ascending; then frames by ascending code,
// where world w's successor rows occupy bits [w*L*n, (w+1)*L*n) (label j of
// world w at offset (w*L + j)*n); then valuations by ascending code (see
// for_each_valuation); then the lowest falsifying world. The first hit in
// this order is returned, so a miss at the bound proves that no countermodel
// with at most max_worlds worlds exists.

#include <algorithm>
#include <bit>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lobsafe/kripke.hpp"

namespace lobsafe {

struct SearchSpec {
  Formula target;
  std::vector<FrameProperty> constraints;
  std::size_t max_worlds = 3;
  std::vector<ModalLabel> labels;
  std::vector<std::string> atoms;
};

struct SearchLimits {
  std::size_t max_worlds = 4;
  std::size_t max_labels = 2;
  std::size_t max_atoms = 2;
};

struct Countermodel {
  Model model;
  World world;
};

/// Spec whose labels and atoms are exactly those mentioned by the target
/// and the constraints.
inline SearchSpec make_search_spec(Formula target, std::vector<FrameProperty> constraints,
                                   std::size_t max_worlds) {
  std::set<ModalLabel> labels = labels_of(target);
  for (const auto& c : constraints) {
    for (const auto& l : labels_of(c)) labels.insert(l);
  }
  const auto atom_set = atoms_of(target);
  SearchSpec spec{std::move(target), std::move(constraints), max_worlds, {}, {}};
  spec.labels.assign(labels.begin(), labels.end());
  spec.atoms.assign(atom_set.begin(), atom_set.end());
  return spec;
}

namespace detail {

inline bool row_local_ok(const FrameProperty& p, World w, const std::vector<ModalLabel>& labels,
                         const std::vector<WorldSet>& rows) {
  auto row = [&](ModalLabel l) {
    auto it = std::find(labels.begin(), labels.end(), l);
    return rows[static_cast<std::size_t>(it - labels.begin())];
  };
  if (const auto* r = std::get_if<Reflexive>(&p)) return contains(row(r->label), w);
  if (const auto* s = std::get_if<Serial>(&p)) return row(s->label) != 0;
  if (const auto* sub = std::get_if<Subset>(&p)) return (row(sub->sub) & ~row(sub->super)) == 0;
  return true;
}

inline void validate(const SearchSpec& spec, const SearchLimits& limits) {
  if (spec.max_worlds < 1) throw std::invalid_argument("max_worlds must be at least 1");
  if (spec.max_worlds > limits.max_worlds || spec.labels.size() > limits.max_labels ||
      spec.atoms.size() > limits.max_atoms) {
    throw ResourceLimitExceeded("search spec exceeds bounds (worlds " + std::to_string(spec.max_worlds) +
                                "/" + std::to_string(limits.max_worlds) + ", labels " +
                                std::to_string(spec.labels.size()) + "/" +
                                std::to_string(limits.max_labels) + ", atoms " +
                                std::to_string(spec.atoms.size()) + "/" +
                                std::to_string(limits.max_atoms) + ")");
  }
  if (!is_concrete(spec.target)) throw std::invalid_argument("search target must be metavariable-free");
  const std::set<ModalLabel> have(spec.labels.begin(), spec.labels.end());
  for (const auto& l : labels_of(spec.target)) {
    if (!have.count(l)) throw std::invalid_argument("target uses label " + l.name() + " not in the spec");
  }
  for (const auto& c : spec.constraints) {
    for (const auto& l : labels_of(c)) {
      if (!have.count(l)) throw std::invalid_argument("constraint uses label " + l.name() + " not in the spec");
    }
  }
  for (const auto& a : atoms_of(spec.target)) {
    if (std::find(spec.atoms.begin(), spec.atoms.end(), a) == spec.atoms.end()) {
      throw std::invalid_argument("target uses atom " + a + " not in the spec");
    }
  }
}

}  // namespace detail

/// Calls fn(frame) for every frame with exactly n worlds over `labels` that
/// satisfies all `constraints`, in canonical order; stops when fn returns
/// false. Returns false iff stopped early.
template <typename Fn>
bool for_each_constrained_frame(std::size_t n, const std::vector<ModalLabel>& labels,
                                const std::vector<FrameProperty>& constraints, Fn&& fn) {
  const std::size_t L = labels.size();
  if (L * n > 62) throw ResourceLimitExceeded("row space too large to enumerate");
  // Admissible row tuples per world, ascending by tuple code.
  std::vector<std::vector<std::vector<WorldSet>>> admissible(n);
  const std::uint64_t tuple_count = std::uint64_t{1} << (L * n);
  for (World w = 0; w < n; ++w) {
    for (std::uint64_t code = 0; code < tuple_count; ++code) {
      std::vector<WorldSet> rows(L);
      for (std::size_t j = 0; j < L; ++j) rows[j] = (code >> (j * n)) & all_worlds(n);
      bool ok = true;
      for (const auto& c : constraints) {
        if (is_row_local(c) && !detail::row_local_ok(c, w, labels, rows)) {
          ok = false;
          break;
        }
      }
      if (ok) admissible[w].push_back(std::move(rows));
    }
    if (admissible[w].empty()) return true;
  }
  std::vector<const std::vector<WorldSet>*> chosen(n, nullptr);
  std::vector<FrameProperty> global;
  for (const auto& c : constraints) {
    if (!is_row_local(c)) global.push_back(c);
  }
  // World n-1 is the most significant digit of the frame code.
  auto recurse = [&](auto&& self, std::size_t remaining) -> bool {
    if (remaining == 0) {
      Frame fr(n);
      for (std::size_t j = 0; j < L; ++j) {
        std::vector<WorldSet> rel(n);
        for (World w = 0; w < n; ++w) rel[w] = (*chosen[w])[j];
        fr.set_relation(labels[j], std::move(rel));
      }
      for (const auto& c : global) {
        if (!check_property(fr, c)) return true;
      }
      return fn(static_cast<const Frame&>(fr));
    }
    const World w = remaining - 1;
    for (const auto& rows : admissible[w]) {
      chosen[w] = &rows;
      if (!self(self, remaining - 1)) return false;
    }
    return true;
  };
  return recurse(recurse, n);
}

/// First countermodel in canonical order, or nullopt when none exists within
/// spec.max_worlds. `frame_filter`, when given, must also accept the frame.
inline std::optional<Countermodel> find_countermodel(
    const SearchSpec& spec, const SearchLimits& limits = {},
    const std::function<bool(const Frame&)>& frame_filter = {}) {
  detail::validate(spec, limits);
  std::optional<Countermodel> found;
  for (std::size_t n = 1; n <= spec.max_worlds && !found; ++n) {
    for_each_constrained_frame(n, spec.labels, spec.constraints, [&](const Frame& fr) {
      if (frame_filter && !frame_filter(fr)) return true;
      for_each_valuation(fr, spec.atoms, [&](const Model& m) {
        const WorldSet miss = all_worlds(n) & ~truth_set(m, spec.target);
        if (miss == 0) return true;
        found = Countermodel{m, static_cast<World>(std::countr_zero(miss))};
        return false;
      });
      return !found;
    });
  }
  return found;
}

/// Independent re-check: every constraint holds on m's frame and the target
/// is false at w. Never throws for well-formed input; a missing relation
/// counts as a failed constraint.
inline bool verify_countermodel(const Model& m, World w, const SearchSpec& spec) {
  if (w >= m.frame.size()) return false;
  for (const auto& c : spec.constraints) {
    for (const auto& l : labels_of(c)) {
      if (!m.frame.has_label(l)) return false;
    }
    if (!check_property(m.frame, c)) return false;
  }
  return !satisfies(m, w, spec.target);
}

}  // namespace lobsafe
