#include "teamltl/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace teamltl {

namespace fo {
namespace {
Fo make(FoKind k, std::string rel, std::vector<std::string> vars, Fo a = nullptr, Fo b = nullptr) {
  return std::make_shared<const FoNode>(FoNode{k, std::move(rel), std::move(vars), std::move(a), std::move(b)});
}
}  // namespace

Fo eq(std::string a, std::string b) { return make(FoKind::Eq, "", {std::move(a), std::move(b)}); }
Fo leq(std::string a, std::string b) { return make(FoKind::Leq, "", {std::move(a), std::move(b)}); }
Fo rel(std::string name, std::vector<std::string> args) { return make(FoKind::Rel, std::move(name), std::move(args)); }
Fo neg_eq(std::string a, std::string b) { return make(FoKind::NegEq, "", {std::move(a), std::move(b)}); }
Fo neg_leq(std::string a, std::string b) { return make(FoKind::NegLeq, "", {std::move(a), std::move(b)}); }
Fo neg_rel(std::string name, std::vector<std::string> args) {
  return make(FoKind::NegRel, std::move(name), std::move(args));
}
Fo dep(std::vector<std::string> determiners, std::string target) {
  determiners.push_back(std::move(target));
  return make(FoKind::Dep, "", std::move(determiners));
}
Fo conj(Fo a, Fo b) { return make(FoKind::And, "", {}, std::move(a), std::move(b)); }
Fo disj(Fo a, Fo b) { return make(FoKind::Or, "", {}, std::move(a), std::move(b)); }
Fo exists(std::string v, Fo body) { return make(FoKind::Exists, "", {std::move(v)}, std::move(body)); }
Fo forall(std::string v, Fo body) { return make(FoKind::Forall, "", {std::move(v)}, std::move(body)); }
Fo bneg(Fo a) { return make(FoKind::BoolNeg, "", {}, std::move(a)); }

Fo lt(const std::string& a, const std::string& b) { return conj(leq(a, b), neg_leq(b, a)); }
Fo not_lt(const std::string& a, const std::string& b) { return disj(neg_leq(a, b), leq(b, a)); }
}  // namespace fo

Signature::Signature(ApList aps, bool equal_level) : aps_(std::move(aps)) {
  for (const auto& n : aps_.names()) relations_[prop_relation(n)] = 1;
  if (equal_level) relations_["E"] = 2;
}

void Signature::add_relation(const std::string& name, std::size_t arity) {
  auto it = relations_.find(name);
  if (it != relations_.end() && it->second != arity) {
    throw std::invalid_argument("relation '" + name + "' redeclared with a different arity");
  }
  relations_[name] = arity;
}

std::optional<std::size_t> Signature::arity(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) return std::nullopt;
  return it->second;
}

void Signature::add_variable(const std::string& v) {
  if (!has_variable(v)) variables_.push_back(v);
}

bool Signature::has_variable(const std::string& v) const {
  return std::find(variables_.begin(), variables_.end(), v) != variables_.end();
}

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Semi, And, Or, Tilde, Bang, Eq, Leq, Lt, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize_fo(std::string_view s) {
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
    if (c == '<') {
      if (i + 1 < s.size() && s[i + 1] == '=') {
        out.push_back({Tok::Leq, "<=", i});
        i += 2;
      } else {
        out.push_back({Tok::Lt, "<", i});
        ++i;
      }
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ',': k = Tok::Comma; break;
      case ';': k = Tok::Semi; break;
      case '&': k = Tok::And; break;
      case '|': k = Tok::Or; break;
      case '~': k = Tok::Tilde; break;
      case '!': k = Tok::Bang; break;
      case '=': k = Tok::Eq; break;
      default: throw SyntaxError(std::string("unknown token '") + c + "'", i);
    }
    out.push_back({k, std::string(1, c), i});
    ++i;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class FoParser {
 public:
  FoParser(std::string_view text, const Signature& sig) : toks_(tokenize_fo(text)), sig_(sig) {}

  Fo parse() {
    Fo f = disj();
    if (peek().kind != Tok::End) throw SyntaxError("unexpected '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& take() { return toks_[pos_++]; }

  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) {
      if (peek().kind == Tok::End) throw SyntaxError(std::string("expected ") + what + ", got end of input", peek().pos);
      throw SyntaxError(std::string("expected ") + what, peek().pos);
    }
    return take();
  }

  std::string variable() {
    const Token& t = expect(Tok::Ident, "variable");
    if (!sig_.has_variable(t.text)) throw SyntaxError("unknown variable '" + t.text + "'", t.pos);
    return t.text;
  }

  Fo disj() {
    Fo f = conj();
    while (peek().kind == Tok::Or) {
      take();
      f = fo::disj(f, conj());
    }
    return f;
  }

  Fo conj() {
    Fo f = unary();
    while (peek().kind == Tok::And) {
      take();
      f = fo::conj(f, unary());
    }
    return f;
  }

  bool at_quantifier() const {
    return peek().kind == Tok::Ident && (peek().text == "E" || peek().text == "A") &&
           peek(1).kind == Tok::Ident;
  }

  Fo unary() {
    if (peek().kind == Tok::Tilde) {
      take();
      return fo::bneg(unary());
    }
    if (peek().kind == Tok::Bang) {
      take();
      return negate_atom(atom(false));
    }
    if (at_quantifier()) {
      bool ex = take().text == "E";
      std::string v = variable();
      Fo body = unary();
      return ex ? fo::exists(v, body) : fo::forall(v, body);
    }
    return atom(true);
  }

  Fo negate_atom(const Fo& a) {
    switch (a->kind) {
      case FoKind::Eq: return fo::neg_eq(a->vars[0], a->vars[1]);
      case FoKind::Leq: return fo::neg_leq(a->vars[0], a->vars[1]);
      case FoKind::Rel: return fo::neg_rel(a->rel, a->vars);
      default: break;
    }
    throw SyntaxError("'!' applies only to =, <= and relation atoms", toks_[pos_ ? pos_ - 1 : 0].pos);
  }

  Fo atom(bool allow_group) {
    const Token& t = peek();
    if (t.kind == Tok::End) throw SyntaxError("unexpected end of input", t.pos);
    if (t.kind == Tok::LParen) {
      if (!allow_group) throw SyntaxError("'!' applies only to atoms", t.pos);
      take();
      Fo f = disj();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind != Tok::Ident) throw SyntaxError("unexpected '" + t.text + "'", t.pos);
    if (peek(1).kind == Tok::LParen) return application();
    std::string a = variable();
    const Token& op = peek();
    if (op.kind == Tok::Eq) {
      take();
      return fo::eq(a, variable());
    }
    if (op.kind == Tok::Leq) {
      take();
      return fo::leq(a, variable());
    }
    if (op.kind == Tok::Lt) {
      if (!allow_group) throw SyntaxError("'!' does not apply to '<'", op.pos);
      take();
      return fo::lt(a, variable());
    }
    throw SyntaxError("expected '=', '<=' or '<'", op.pos);
  }

  Fo application() {
    const Token& name = take();
    take();  // (
    if (name.text == "dep") {
      std::vector<std::string> det;
      if (peek().kind != Tok::Semi) {
        det.push_back(variable());
        while (peek().kind == Tok::Comma) {
          take();
          det.push_back(variable());
        }
      }
      expect(Tok::Semi, "';' in dep atom");
      std::string target = variable();
      expect(Tok::RParen, "')'");
      return fo::dep(std::move(det), std::move(target));
    }
    auto arity = sig_.arity(name.text);
    if (!arity) throw SyntaxError("unknown relation '" + name.text + "'", name.pos);
    std::vector<std::string> args;
    if (peek().kind != Tok::RParen) {
      args.push_back(variable());
      while (peek().kind == Tok::Comma) {
        take();
        args.push_back(variable());
      }
    }
    expect(Tok::RParen, "')'");
    if (args.size() != *arity) {
      throw SyntaxError("relation '" + name.text + "' expects " + std::to_string(*arity) + " arguments, got " +
                            std::to_string(args.size()),
                        name.pos);
    }
    return fo::rel(name.text, std::move(args));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature& sig_;
};

std::string join(const std::vector<std::string>& v, std::size_t from, std::size_t to) {
  std::string out;
  for (std::size_t i = from; i < to; ++i) {
    if (i > from) out += ", ";
    out += v[i];
  }
  return out;
}

void print_rec(const Fo& f, std::string& out) {
  switch (f->kind) {
    case FoKind::Eq: out += f->vars[0] + " = " + f->vars[1]; return;
    case FoKind::NegEq: out += "!" + f->vars[0] + " = " + f->vars[1]; return;
    case FoKind::Leq: out += f->vars[0] + " <= " + f->vars[1]; return;
    case FoKind::NegLeq: out += "!" + f->vars[0] + " <= " + f->vars[1]; return;
    case FoKind::Rel: out += f->rel + "(" + join(f->vars, 0, f->vars.size()) + ")"; return;
    case FoKind::NegRel: out += "!" + f->rel + "(" + join(f->vars, 0, f->vars.size()) + ")"; return;
    case FoKind::Dep:
      out += "dep(" + join(f->vars, 0, f->vars.size() - 1) + "; " + f->vars.back() + ")";
      return;
    case FoKind::And:
    case FoKind::Or:
      out += "(";
      print_rec(f->lhs, out);
      out += f->kind == FoKind::And ? " & " : " | ";
      print_rec(f->rhs, out);
      out += ")";
      return;
    case FoKind::Exists:
    case FoKind::Forall:
      out += f->kind == FoKind::Exists ? "E " : "A ";
      out += f->vars[0] + " ";
      print_rec(f->lhs, out);
      return;
    case FoKind::BoolNeg:
      out += "~";
      print_rec(f->lhs, out);
      return;
  }
}

bool is_atom(FoKind k) { return k != FoKind::And && k != FoKind::Or && k != FoKind::Exists &&
                                k != FoKind::Forall && k != FoKind::BoolNeg; }

void free_rec(const Fo& f, std::set<std::string>& bound, std::set<std::string>& out) {
  if (is_atom(f->kind)) {
    for (const auto& v : f->vars) {
      if (!bound.count(v)) out.insert(v);
    }
    return;
  }
  if (f->kind == FoKind::Exists || f->kind == FoKind::Forall) {
    const std::string& v = f->vars[0];
    bool was = bound.count(v) > 0;
    bound.insert(v);
    free_rec(f->lhs, bound, out);
    if (!was) bound.erase(v);
    return;
  }
  free_rec(f->lhs, bound, out);
  if (f->rhs) free_rec(f->rhs, bound, out);
}

void all_rec(const Fo& f, std::set<std::string>& out) {
  for (const auto& v : f->vars) out.insert(v);
  if (f->lhs) all_rec(f->lhs, out);
  if (f->rhs) all_rec(f->rhs, out);
}

}  // namespace

Fo parse_fo(std::string_view text, const Signature& sig) { return FoParser(text, sig).parse(); }

std::string print_fo(const Fo& f) {
  std::string out;
  print_rec(f, out);
  return out;
}

bool structurally_equal(const Fo& a, const Fo& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->kind == b->kind && a->rel == b->rel && a->vars == b->vars && structurally_equal(a->lhs, b->lhs) &&
         structurally_equal(a->rhs, b->rhs);
}

std::vector<std::string> free_variables(const Fo& f) {
  std::set<std::string> bound, out;
  free_rec(f, bound, out);
  return {out.begin(), out.end()};
}

std::vector<std::string> all_variables(const Fo& f) {
  std::set<std::string> out;
  all_rec(f, out);
  return {out.begin(), out.end()};
}

bool is_flat(const Fo& f) {
  if (!f) return true;
  if (f->kind == FoKind::Dep || f->kind == FoKind::BoolNeg) return false;
  return is_flat(f->lhs) && is_flat(f->rhs);
}

bool is_tilde_free(const Fo& f) {
  if (!f) return true;
  if (f->kind == FoKind::BoolNeg) return false;
  return is_tilde_free(f->lhs) && is_tilde_free(f->rhs);
}

std::size_t formula_size(const Fo& f) {
  if (!f) return 0;
  return 1 + formula_size(f->lhs) + formula_size(f->rhs);
}

}  // namespace teamltl
