#pragma once

// Concrete ASCII syntax for formulas.
//
//   formula := iff ;  iff := imp ("<->" imp)* ;  imp := or ("->" imp)? ;
//   or := and ("|" and)* ;  and := unary ("&" unary)* ;
//   unary := "~" unary | "K(" agent ")" unary | "B(" agent ")" unary
//          | "<K(" agent ")>" unary | "<B(" agent ")>" unary
//          | "(" formula ")" | "true" | "false" | ident ;
//   agent := nat | "i"
//
// "->" is right-associative, "<->", "|" and "&" associate to the left.
// Identifiers starting with an uppercase letter are schema metavariables;
// "i" as an agent is the agent metavariable.

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lobsafe/formula.hpp"

namespace lobsafe {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, std::set<std::string> expected, std::string_view found)
      : std::runtime_error(describe(position, expected, found)),
        position_(position),
        expected_(std::move(expected)) {}

  /// Zero-based character offset of the offending token.
  std::size_t position() const { return position_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  static std::string describe(std::size_t pos, const std::set<std::string>& expected,
                              std::string_view found) {
    std::string msg = "syntax error at position " + std::to_string(pos) + ": expected one of {";
    bool first = true;
    for (const auto& e : expected) {
      if (!first) msg += ", ";
      msg += e;
      first = false;
    }
    msg += "} but found ";
    msg += found.empty() ? std::string("end of input") : "'" + std::string(found) + "'";
    return msg;
  }

  std::size_t position_;
  std::set<std::string> expected_;
};

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse_all() {
    Formula f = parse_iff();
    skip_ws();
    if (pos_ != text_.size()) fail({"<->", "->", "|", "&", "end of input"});
    return f;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool peek(std::string_view tok) {
    skip_ws();
    return text_.substr(pos_, tok.size()) == tok;
  }

  bool accept(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }

  [[noreturn]] void fail(std::set<std::string> expected) {
    skip_ws();
    std::size_t end = pos_;
    while (end < text_.size() && end - pos_ < 8 && text_[end] != ' ') ++end;
    throw ParseError(pos_, std::move(expected), text_.substr(pos_, end - pos_));
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail({std::string(tok)});
  }

  static bool ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool ident_char(char c) {
    return ident_start(c) || (c >= '0' && c <= '9') || c == '\'';
  }

  Formula parse_iff() {
    Formula lhs = parse_imp();
    while (accept("<->")) lhs = Formula::iff(lhs, parse_imp());
    return lhs;
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    // "<->" must not be mistaken for "->" preceded by '<'.
    if (accept("->")) return Formula::implies(lhs, parse_imp());
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (accept("|")) lhs = Formula::disj(lhs, parse_and());
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (accept("&")) lhs = Formula::conj(lhs, parse_unary());
    return lhs;
  }

  AgentId parse_agent() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == 'i' &&
        (pos_ + 1 >= text_.size() || !ident_char(text_[pos_ + 1]))) {
      ++pos_;
      return AgentId::variable();
    }
    std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v >= AgentId::kVariable) fail({"agent number below 2^32-1"});
      ++pos_;
    }
    if (pos_ == start) fail({"agent number", "i"});
    return AgentId{static_cast<std::uint32_t>(v)};
  }

  ModalLabel parse_label_body(char letter) {
    ModalLabel l;
    l.kind = letter == 'K' ? ModalKind::Knowledge : ModalKind::Belief;
    l.agent = parse_agent();
    expect(")");
    return l;
  }

  bool modal_head(char letter) {
    skip_ws();
    return pos_ + 1 < text_.size() && text_[pos_] == letter && text_[pos_ + 1] == '(';
  }

  Formula parse_unary() {
    skip_ws();
    if (accept("~")) return Formula::negation(parse_unary());
    for (char letter : {'K', 'B'}) {
      if (modal_head(letter)) {
        pos_ += 2;
        ModalLabel l = parse_label_body(letter);
        return Formula::box(l, parse_unary());
      }
    }
    if (peek("<K(") || peek("<B(")) {
      char letter = text_[pos_ + 1];
      pos_ += 3;
      ModalLabel l = parse_label_body(letter);
      expect(">");
      return Formula::diamond(l, parse_unary());
    }
    if (accept("(")) {
      Formula f = parse_iff();
      if (!accept(")")) fail({")", "<->", "->", "|", "&"});
      return f;
    }
    if (pos_ < text_.size() && ident_start(text_[pos_])) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      std::string word(text_.substr(start, pos_ - start));
      if (word == "true") return Formula::top();
      if (word == "false") return Formula::bottom();
      return Formula::atom(std::move(word));
    }
    fail({"~", "K(", "B(", "<K(", "<B(", "(", "true", "false", "identifier"});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline int precedence(const Formula& f) {
  switch (f.op()) {
    case Op::Iff:
      return 0;
    case Op::Implies:
      return 1;
    case Op::Or:
      return 2;
    case Op::And:
      return 3;
    default:
      return 4;
  }
}

inline std::string agent_text(AgentId a) {
  return a.is_variable() ? std::string("i") : std::to_string(a.value);
}

inline void render_into(const Formula& f, std::string& out);

inline void render_child(const Formula& child, bool parens, std::string& out) {
  if (parens) out += '(';
  render_into(child, out);
  if (parens) out += ')';
}

// Prefix operators: a parenthesised operand is glued to the operator,
// anything else is separated by a space ("K(1) p", "B(1)(p & q)").
inline void render_modal_operand(const Formula& operand, std::string& out) {
  if (precedence(operand) < 4) {
    render_child(operand, true, out);
  } else {
    out += ' ';
    render_into(operand, out);
  }
}

inline void render_into(const Formula& f, std::string& out) {
  switch (f.op()) {
    case Op::Atom:
      out += f.name();
      return;
    case Op::Bottom:
      out += "false";
      return;
    case Op::Top:
      out += "true";
      return;
    case Op::Not:
      out += '~';
      render_child(f.lhs(), precedence(f.lhs()) < 4, out);
      return;
    case Op::Box:
      out += kind_letter(f.label().kind);
      out += '(' + agent_text(f.label().agent) + ')';
      render_modal_operand(f.lhs(), out);
      return;
    case Op::Diamond:
      out += '<';
      out += kind_letter(f.label().kind);
      out += '(' + agent_text(f.label().agent) + ")>";
      render_modal_operand(f.lhs(), out);
      return;
    default:
      break;
  }
  const int p = precedence(f);
  const bool right_assoc = f.is(Op::Implies);
  const char* sym = f.is(Op::And) ? " & " : f.is(Op::Or) ? " | " : f.is(Op::Implies) ? " -> " : " <-> ";
  bool left = precedence(f.lhs()) < p, right = precedence(f.rhs()) <= p;
  if (right_assoc) {
    left = precedence(f.lhs()) <= p;
    right = precedence(f.rhs()) < p;
  } else if (f.is(Op::Iff)) {
    // Implications under "<->" keep their parentheses.
    left = precedence(f.lhs()) <= 1;
    right = precedence(f.rhs()) <= 1;
  }
  render_child(f.lhs(), left, out);
  out += sym;
  render_child(f.rhs(), right, out);
}

}  // namespace detail

/// Parses a formula; throws ParseError with the offending position and the
/// set of tokens that would have been accepted there.
inline Formula parse(std::string_view text) { return detail::Parser(text).parse_all(); }

/// Minimal-parenthesis rendering; parse(render(f)) == f.
inline std::string render(const Formula& f) {
  std::string out;
  detail::render_into(f, out);
  return out;
}

}  // namespace lobsafe
