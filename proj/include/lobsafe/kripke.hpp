#pragma once

// Finite Kripke frames and models. Worlds are dense ids 0..n-1 (n <= 64) and
// every relation is stored as one successor bitset per world.

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lobsafe/formula.hpp"

namespace lobsafe {

using WorldSet = std::uint64_t;
using World = std::size_t;

inline constexpr std::size_t kMaxWorlds = 64;

inline constexpr WorldSet all_worlds(std::size_t n) {
  return n >= 64 ? ~WorldSet{0} : (WorldSet{1} << n) - 1;
}
inline constexpr WorldSet singleton(World w) { return WorldSet{1} << w; }
inline constexpr bool contains(WorldSet s, World w) { return (s >> w) & 1U; }

class ResourceLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Frame {
 public:
  explicit Frame(std::size_t worlds) : size_(worlds) {
    if (worlds == 0 || worlds > kMaxWorlds) {
      throw std::invalid_argument("frame size must be in 1.." + std::to_string(kMaxWorlds));
    }
  }

  std::size_t size() const { return size_; }

  /// Declares a (possibly empty) relation for the label.
  Frame& add_label(ModalLabel l) {
    relations_.try_emplace(l, std::vector<WorldSet>(size_, 0));
    return *this;
  }

  Frame& add_edge(ModalLabel l, World from, World to) {
    check_world(from);
    check_world(to);
    add_label(l);
    relations_[l][from] |= singleton(to);
    return *this;
  }

  /// Replaces the relation for `l` with the given successor rows.
  Frame& set_relation(ModalLabel l, std::vector<WorldSet> rows) {
    if (rows.size() != size_) throw std::invalid_argument("relation row count differs from frame size");
    for (WorldSet r : rows) {
      if (r & ~all_worlds(size_)) throw std::invalid_argument("relation mentions a world outside the frame");
    }
    relations_[l] = std::move(rows);
    return *this;
  }

  bool has_label(ModalLabel l) const { return relations_.count(l) != 0; }

  /// Successors of w under l; an undeclared label behaves as the empty relation.
  WorldSet successors(ModalLabel l, World w) const {
    auto it = relations_.find(l);
    return it == relations_.end() ? 0 : it->second[w];
  }

  bool edge(ModalLabel l, World from, World to) const { return contains(successors(l, from), to); }

  const std::map<ModalLabel, std::vector<WorldSet>>& relations() const { return relations_; }

  void check_world(World w) const {
    if (w >= size_) {
      throw std::out_of_range("unknown world " + std::to_string(w) + " in a frame of " +
                              std::to_string(size_) + " worlds");
    }
  }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  std::size_t size_;
  std::map<ModalLabel, std::vector<WorldSet>> relations_;
};

struct Model {
  Frame frame;
  /// Atoms absent from the map are false everywhere.
  std::map<std::string, WorldSet> valuation;

  explicit Model(Frame f) : frame(std::move(f)) {}
  Model(Frame f, std::map<std::string, WorldSet> v) : frame(std::move(f)), valuation(std::move(v)) {
    for (const auto& [name, set] : valuation) {
      if (set & ~all_worlds(frame.size())) {
        throw std::invalid_argument("valuation of '" + name + "' mentions a world outside the frame");
      }
    }
  }

  friend bool operator==(const Model&, const Model&) = default;
};

namespace detail {

inline WorldSet box_set(const Frame& fr, ModalLabel l, WorldSet body) {
  WorldSet out = 0;
  for (World w = 0; w < fr.size(); ++w) {
    if ((fr.successors(l, w) & ~body) == 0) out |= singleton(w);
  }
  return out;
}

inline WorldSet diamond_set(const Frame& fr, ModalLabel l, WorldSet body) {
  WorldSet out = 0;
  for (World w = 0; w < fr.size(); ++w) {
    if (fr.successors(l, w) & body) out |= singleton(w);
  }
  return out;
}

}  // namespace detail

/// The set of worlds of m at which f holds.
inline WorldSet truth_set(const Model& m, const Formula& f) {
  const WorldSet all = all_worlds(m.frame.size());
  switch (f.op()) {
    case Op::Atom: {
      if (f.is_metavariable()) {
        throw std::invalid_argument("cannot evaluate schema metavariable " + f.name());
      }
      auto it = m.valuation.find(f.name());
      return it == m.valuation.end() ? 0 : it->second;
    }
    case Op::Bottom:
      return 0;
    case Op::Top:
      return all;
    case Op::Not:
      return all & ~truth_set(m, f.lhs());
    case Op::And:
      return truth_set(m, f.lhs()) & truth_set(m, f.rhs());
    case Op::Or:
      return truth_set(m, f.lhs()) | truth_set(m, f.rhs());
    case Op::Implies:
      return (all & ~truth_set(m, f.lhs())) | truth_set(m, f.rhs());
    case Op::Iff:
      return all & ~(truth_set(m, f.lhs()) ^ truth_set(m, f.rhs()));
    case Op::Box:
    case Op::Diamond:
      if (f.label().has_agent_variable()) {
        throw std::invalid_argument("cannot evaluate a label with the agent metavariable");
      }
      return f.is(Op::Box) ? detail::box_set(m.frame, f.label(), truth_set(m, f.lhs()))
                           : detail::diamond_set(m.frame, f.label(), truth_set(m, f.lhs()));
  }
  return 0;
}

/// M, w ⊨ f. Throws std::out_of_range for an unknown world.
inline bool satisfies(const Model& m, World w, const Formula& f) {
  m.frame.check_world(w);
  return contains(truth_set(m, f), w);
}

/// f holds at every world of m.
inline bool globally_true(const Model& m, const Formula& f) {
  return truth_set(m, f) == all_worlds(m.frame.size());
}

struct ValidityOptions {
  /// Upper bound on |atoms(f)| * |worlds|; the search visits 2^bound valuations.
  std::size_t max_valuation_bits = 16;
};

/// Calls fn(model) for every valuation of `atoms` over fr, in ascending code
/// order (atom k owns bits [k*n, (k+1)*n)). Stops early when fn returns false.
template <typename Fn>
bool for_each_valuation(const Frame& fr, const std::vector<std::string>& atoms, Fn&& fn) {
  const std::size_t n = fr.size();
  const std::size_t bits = atoms.size() * n;
  if (bits >= 63) throw ResourceLimitExceeded("valuation space too large to enumerate");
  Model m(fr);
  for (const auto& a : atoms) m.valuation[a] = 0;
  const std::uint64_t count = std::uint64_t{1} << bits;
  for (std::uint64_t code = 0; code < count; ++code) {
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      m.valuation[atoms[k]] = (code >> (k * n)) & all_worlds(n);
    }
    if (!fn(static_cast<const Model&>(m))) return false;
  }
  return true;
}

/// True iff f holds at every world under every valuation of its atoms.
inline bool valid_on_frame(const Frame& fr, const Formula& f, const ValidityOptions& opts = {}) {
  const auto atom_set = atoms_of(f);
  const std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  if (atoms.size() * fr.size() > opts.max_valuation_bits) {
    throw ResourceLimitExceeded("validity check needs " + std::to_string(atoms.size() * fr.size()) +
                                " valuation bits, bound is " + std::to_string(opts.max_valuation_bits));
  }
  return for_each_valuation(fr, atoms, [&](const Model& m) { return globally_true(m, f); });
}

// ---------------------------------------------------------------------------
// Frame properties

struct Reflexive {
  ModalLabel label;
  friend bool operator==(const Reflexive&, const Reflexive&) = default;
};
struct Serial {
  ModalLabel label;
  friend bool operator==(const Serial&, const Serial&) = default;
};
struct Transitive {
  ModalLabel label;
  friend bool operator==(const Transitive&, const Transitive&) = default;
};
struct Euclidean {
  ModalLabel label;
  friend bool operator==(const Euclidean&, const Euclidean&) = default;
};
/// (first ∘ second) ⊆ container, where (x,z') ∈ first∘second iff
/// ∃z. second(x,z) ∧ first(z,z').
struct SubsetCompose {
  ModalLabel first;
  ModalLabel second;
  ModalLabel container;
  friend bool operator==(const SubsetCompose&, const SubsetCompose&) = default;
};
/// sub ⊆ super.
struct Subset {
  ModalLabel sub;
  ModalLabel super;
  friend bool operator==(const Subset&, const Subset&) = default;
};
/// ∀x ∃z. via(x,z) ∧ ∀z'. step(z,z') → container(x,z').
struct WitnessedCompose {
  ModalLabel via;
  ModalLabel step;
  ModalLabel container;
  friend bool operator==(const WitnessedCompose&, const WitnessedCompose&) = default;
};

using FrameProperty =
    std::variant<Reflexive, Serial, Transitive, Euclidean, SubsetCompose, Subset, WitnessedCompose>;

inline std::vector<ModalLabel> labels_of(const FrameProperty& p) {
  return std::visit(
      [](const auto& q) -> std::vector<ModalLabel> {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, SubsetCompose>) {
          return {q.first, q.second, q.container};
        } else if constexpr (std::is_same_v<T, Subset>) {
          return {q.sub, q.super};
        } else if constexpr (std::is_same_v<T, WitnessedCompose>) {
          return {q.via, q.step, q.container};
        } else {
          return {q.label};
        }
      },
      p);
}

/// Replaces the agent metavariable in a property template.
inline FrameProperty instantiate(const FrameProperty& p, AgentId agent) {
  auto fix = [&](ModalLabel l) {
    if (l.has_agent_variable()) l.agent = agent;
    return l;
  };
  return std::visit(
      [&](auto q) -> FrameProperty {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, SubsetCompose>) {
          return SubsetCompose{fix(q.first), fix(q.second), fix(q.container)};
        } else if constexpr (std::is_same_v<T, Subset>) {
          return Subset{fix(q.sub), fix(q.super)};
        } else if constexpr (std::is_same_v<T, WitnessedCompose>) {
          return WitnessedCompose{fix(q.via), fix(q.step), fix(q.container)};
        } else {
          q.label = fix(q.label);
          return q;
        }
      },
      p);
}

/// Properties whose truth at world x depends only on x's own successor rows.
/// The countermodel search filters rows with these before assembling frames.
inline bool is_row_local(const FrameProperty& p) {
  return std::holds_alternative<Reflexive>(p) || std::holds_alternative<Serial>(p) ||
         std::holds_alternative<Subset>(p);
}

namespace detail {

inline WorldSet image(const Frame& fr, ModalLabel l, WorldSet from) {
  WorldSet out = 0;
  for (World w = 0; w < fr.size(); ++w) {
    if (contains(from, w)) out |= fr.successors(l, w);
  }
  return out;
}

inline bool property_at(const Frame& fr, const FrameProperty& p, World x) {
  return std::visit(
      [&](const auto& q) -> bool {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, Reflexive>) {
          return fr.edge(q.label, x, x);
        } else if constexpr (std::is_same_v<T, Serial>) {
          return fr.successors(q.label, x) != 0;
        } else if constexpr (std::is_same_v<T, Transitive>) {
          const WorldSet succ = fr.successors(q.label, x);
          return (image(fr, q.label, succ) & ~succ) == 0;
        } else if constexpr (std::is_same_v<T, Euclidean>) {
          const WorldSet succ = fr.successors(q.label, x);
          for (World y = 0; y < fr.size(); ++y) {
            if (contains(succ, y) && (succ & ~fr.successors(q.label, y)) != 0) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, SubsetCompose>) {
          const WorldSet reach = image(fr, q.first, fr.successors(q.second, x));
          return (reach & ~fr.successors(q.container, x)) == 0;
        } else if constexpr (std::is_same_v<T, Subset>) {
          return (fr.successors(q.sub, x) & ~fr.successors(q.super, x)) == 0;
        } else {
          const WorldSet bound = fr.successors(q.container, x);
          const WorldSet via = fr.successors(q.via, x);
          for (World z = 0; z < fr.size(); ++z) {
            if (contains(via, z) && (fr.successors(q.step, z) & ~bound) == 0) return true;
          }
          return false;
        }
      },
      p);
}

}  // namespace detail

/// Direct first-order check by enumeration over worlds. Throws
/// std::invalid_argument when a label of the property is absent from fr.
inline bool check_property(const Frame& fr, const FrameProperty& p) {
  for (const auto& l : labels_of(p)) {
    if (!fr.has_label(l)) {
      throw std::invalid_argument("frame has no relation for label " + l.name());
    }
  }
  for (World x = 0; x < fr.size(); ++x) {
    if (!detail::property_at(fr, p, x)) return false;
  }
  return true;
}

}  // namespace lobsafe
