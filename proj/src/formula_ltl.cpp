#include "teamltl/formula.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace teamltl {

ApList::ApList(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[i] == names_[j]) throw std::invalid_argument("duplicate proposition '" + names_[i] + "'");
    }
  }
}

std::optional<PropId> ApList::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<PropId>(i);
  }
  return std::nullopt;
}

PropId ApList::intern(const std::string& name) {
  if (auto id = find(name)) return *id;
  names_.push_back(name);
  return static_cast<PropId>(names_.size() - 1);
}

namespace ltl {
namespace {
Ltl make(LtlKind k, PropId p, Ltl a, Ltl b) {
  return std::make_shared<const LtlNode>(LtlNode{k, p, std::move(a), std::move(b)});
}
}  // namespace

Ltl prop(PropId p) { return make(LtlKind::Prop, p, nullptr, nullptr); }
Ltl neg_prop(PropId p) { return make(LtlKind::NegProp, p, nullptr, nullptr); }
Ltl conj(Ltl a, Ltl b) { return make(LtlKind::And, 0, std::move(a), std::move(b)); }
Ltl disj(Ltl a, Ltl b) { return make(LtlKind::Or, 0, std::move(a), std::move(b)); }
Ltl next(Ltl a) { return make(LtlKind::Next, 0, std::move(a), nullptr); }
Ltl future(Ltl a) { return make(LtlKind::Future, 0, std::move(a), nullptr); }
Ltl globally(Ltl a) { return make(LtlKind::Globally, 0, std::move(a), nullptr); }
Ltl until(Ltl a, Ltl b) { return make(LtlKind::Until, 0, std::move(a), std::move(b)); }
Ltl release(Ltl a, Ltl b) { return make(LtlKind::Release, 0, std::move(a), std::move(b)); }
Ltl bneg(Ltl a) { return make(LtlKind::BoolNeg, 0, std::move(a), nullptr); }

Ltl top(const ApList& aps) {
  if (aps.empty()) throw std::invalid_argument("TRUE needs at least one proposition");
  return disj(prop(0), neg_prop(0));
}
}  // namespace ltl

namespace {

enum class Tok { Ident, LParen, RParen, And, Or, Tilde, Bang, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize_ltl(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '&': k = Tok::And; break;
      case '|': k = Tok::Or; break;
      case '~': k = Tok::Tilde; break;
      case '!': k = Tok::Bang; break;
      default: throw SyntaxError(std::string("unknown token '") + c + "'", i);
    }
    out.push_back({k, std::string(1, c), i});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

bool is_keyword(const std::string& w) {
  return w == "X" || w == "F" || w == "G" || w == "U" || w == "R" || w == "TRUE";
}

class LtlParser {
 public:
  LtlParser(std::string_view text, ApList& aps, bool extend)
      : toks_(tokenize_ltl(text)), aps_(aps), extend_(extend) {}

  Ltl parse() {
    Ltl f = disj();
    if (peek().kind != Tok::End) throw SyntaxError("unexpected '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  bool at_ident(const char* w) const { return peek().kind == Tok::Ident && peek().text == w; }

  Ltl disj() {
    Ltl f = conj();
    while (peek().kind == Tok::Or) {
      take();
      f = ltl::disj(f, conj());
    }
    return f;
  }

  Ltl conj() {
    Ltl f = binop();
    while (peek().kind == Tok::And) {
      take();
      f = ltl::conj(f, binop());
    }
    return f;
  }

  // right-associative
  Ltl binop() {
    Ltl lhs = unary();
    if (at_ident("U")) {
      take();
      return ltl::until(lhs, binop());
    }
    if (at_ident("R")) {
      take();
      return ltl::release(lhs, binop());
    }
    return lhs;
  }

  Ltl unary() {
    const Token& t = peek();
    if (t.kind == Tok::Tilde) {
      take();
      return ltl::bneg(unary());
    }
    if (t.kind == Tok::Bang) {
      take();
      const Token& a = peek();
      if (a.kind != Tok::Ident || is_keyword(a.text)) {
        throw SyntaxError("'!' applies only to propositions", a.pos);
      }
      take();
      return ltl::neg_prop(resolve(a));
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "X" || t.text == "F" || t.text == "G") {
        const std::string op = take().text;
        Ltl body = unary();
        return op == "X" ? ltl::next(body) : op == "F" ? ltl::future(body) : ltl::globally(body);
      }
    }
    return atom();
  }

  Ltl atom() {
    const Token& t = peek();
    if (t.kind == Tok::End) throw SyntaxError("unexpected end of input", t.pos);
    if (t.kind == Tok::LParen) {
      take();
      Ltl f = disj();
      if (peek().kind != Tok::RParen) throw SyntaxError("expected ')'", peek().pos);
      take();
      return f;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "TRUE") {
        take();
        if (aps_.empty()) throw SyntaxError("TRUE needs at least one proposition", t.pos);
        return ltl::top(aps_);
      }
      if (is_keyword(t.text)) throw SyntaxError("unexpected '" + t.text + "'", t.pos);
      take();
      return ltl::prop(resolve(t));
    }
    throw SyntaxError("unexpected '" + t.text + "'", t.pos);
  }

  PropId resolve(const Token& t) {
    if (auto id = aps_.find(t.text)) return *id;
    if (!extend_) throw SyntaxError("unknown proposition '" + t.text + "'", t.pos);
    return aps_.intern(t.text);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ApList& aps_;
  bool extend_;
};

void print_rec(const Ltl& f, const ApList& aps, std::string& out) {
  switch (f->kind) {
    case LtlKind::Prop: out += aps.name(f->prop); return;
    case LtlKind::NegProp: out += "!" + aps.name(f->prop); return;
    case LtlKind::BoolNeg: out += "~"; print_rec(f->lhs, aps, out); return;
    case LtlKind::Next: out += "X "; print_rec(f->lhs, aps, out); return;
    case LtlKind::Future: out += "F "; print_rec(f->lhs, aps, out); return;
    case LtlKind::Globally: out += "G "; print_rec(f->lhs, aps, out); return;
    case LtlKind::And:
    case LtlKind::Or:
    case LtlKind::Until:
    case LtlKind::Release: {
      const char* op = f->kind == LtlKind::And ? " & " : f->kind == LtlKind::Or ? " | "
                     : f->kind == LtlKind::Until ? " U " : " R ";
      out += "(";
      print_rec(f->lhs, aps, out);
      out += op;
      print_rec(f->rhs, aps, out);
      out += ")";
      return;
    }
  }
}

}  // namespace

Ltl parse_ltl(std::string_view text, const ApList& aps) {
  ApList copy = aps;
  return LtlParser(text, copy, false).parse();
}

ParsedLtl parse_ltl(std::string_view text) {
  ParsedLtl r;
  // Propositions first, so that TRUE can refer to p0 even when it comes first.
  for (const Token& t : tokenize_ltl(text)) {
    if (t.kind == Tok::Ident && !is_keyword(t.text)) r.aps.intern(t.text);
  }
  r.formula = LtlParser(text, r.aps, false).parse();
  return r;
}

std::string print_ltl(const Ltl& f, const ApList& aps) {
  std::string out;
  print_rec(f, aps, out);
  return out;
}

bool structurally_equal(const Ltl& a, const Ltl& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  if (is_literal(a->kind)) return a->prop == b->prop;
  return structurally_equal(a->lhs, b->lhs) && structurally_equal(a->rhs, b->rhs);
}

Ltl desugar(const Ltl& f, const ApList& aps) {
  switch (f->kind) {
    case LtlKind::Prop:
    case LtlKind::NegProp: return f;
    case LtlKind::And: return ltl::conj(desugar(f->lhs, aps), desugar(f->rhs, aps));
    case LtlKind::Or: return ltl::disj(desugar(f->lhs, aps), desugar(f->rhs, aps));
    case LtlKind::Next: return ltl::next(desugar(f->lhs, aps));
    case LtlKind::BoolNeg: return ltl::bneg(desugar(f->lhs, aps));
    case LtlKind::Until: return ltl::until(desugar(f->lhs, aps), desugar(f->rhs, aps));
    case LtlKind::Future: return ltl::until(ltl::top(aps), desugar(f->lhs, aps));
    case LtlKind::Globally:
      return ltl::bneg(ltl::until(ltl::top(aps), ltl::bneg(desugar(f->lhs, aps))));
    case LtlKind::Release:
      return ltl::bneg(ltl::until(ltl::bneg(desugar(f->lhs, aps)), ltl::bneg(desugar(f->rhs, aps))));
  }
  return f;
}

std::size_t temporal_depth(const Ltl& f) {
  if (is_literal(f->kind)) return 0;
  std::size_t d = temporal_depth(f->lhs);
  if (f->rhs) d = std::max(d, temporal_depth(f->rhs));
  return is_temporal(f->kind) ? d + 1 : d;
}

std::size_t formula_size(const Ltl& f) {
  if (!f) return 0;
  return 1 + formula_size(f->lhs) + formula_size(f->rhs);
}

bool is_tilde_free(const Ltl& f) {
  if (!f) return true;
  if (f->kind == LtlKind::BoolNeg) return false;
  return is_tilde_free(f->lhs) && is_tilde_free(f->rhs);
}

bool is_next_free(const Ltl& f) {
  if (!f) return true;
  if (f->kind == LtlKind::Next) return false;
  return is_next_free(f->lhs) && is_next_free(f->rhs);
}

bool is_core(const Ltl& f) {
  if (!f) return true;
  if (f->kind == LtlKind::Future || f->kind == LtlKind::Globally || f->kind == LtlKind::Release) return false;
  return is_core(f->lhs) && is_core(f->rhs);
}

PropId max_prop(const Ltl& f) {
  if (!f) return 0;
  if (is_literal(f->kind)) return f->prop;
  return std::max(max_prop(f->lhs), max_prop(f->rhs));
}

}  // namespace teamltl
