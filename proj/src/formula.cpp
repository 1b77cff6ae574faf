#include "mw/formula.hpp"

#include <algorithm>
#include <set>

#include "mw/rho.hpp"

namespace mw {

namespace {

FormulaPtr node(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

}  // namespace

FormulaPtr Formula::unary_atom(PredId pred, std::string x) {
  return node({FKind::UnaryAtom, pred, std::move(x), "", 0, nullptr, nullptr});
}
FormulaPtr Formula::binary_atom(PredId rel, std::string x, std::string y) {
  return node({FKind::BinaryAtom, rel, std::move(x), std::move(y), 0, nullptr, nullptr});
}
FormulaPtr Formula::eq(std::string x, std::string y) {
  return node({FKind::Eq, 0, std::move(x), std::move(y), 0, nullptr, nullptr});
}
FormulaPtr Formula::dist_le(std::string x, std::string y, long long r) {
  return node({FKind::DistLE, 0, std::move(x), std::move(y), r, nullptr, nullptr});
}
FormulaPtr Formula::dist_lt(std::string x, PredId pred, long long r) {
  return node({FKind::DistLT, pred, std::move(x), "", r, nullptr, nullptr});
}
FormulaPtr Formula::negate(FormulaPtr f) {
  return node({FKind::Not, 0, "", "", 0, std::move(f), nullptr});
}
FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
  return node({FKind::And, 0, "", "", 0, std::move(a), std::move(b)});
}
FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) {
  return node({FKind::Or, 0, "", "", 0, std::move(a), std::move(b)});
}
FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
  return node({FKind::Implies, 0, "", "", 0, std::move(a), std::move(b)});
}
FormulaPtr Formula::exists(std::string x, FormulaPtr body) {
  return node({FKind::Exists, 0, std::move(x), "", 0, std::move(body), nullptr});
}
FormulaPtr Formula::forall(std::string x, FormulaPtr body) {
  return node({FKind::Forall, 0, std::move(x), "", 0, std::move(body), nullptr});
}

FormulaSignature FormulaSignature::of(const BinaryStructure& s) {
  return {s.unary_names(), s.binary_names()};
}

bool FormulaSignature::has_unary(PredId p) const {
  return std::find(unary.begin(), unary.end(), p) != unary.end();
}

bool FormulaSignature::has_binary(PredId p) const {
  return std::find(binary.begin(), binary.end(), p) != binary.end();
}

namespace {

struct Token {
  enum Kind { Ident, Number, Sym, End } kind = End;
  std::string text;
  long long value = 0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("line " + std::to_string(tok_.line) + " col " + std::to_string(tok_.col) +
                ": " + msg);
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
      } else {
        break;
      }
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.kind = Token::End;
      return;
    }
    char c = text_[pos_];
    if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
              text_[pos_] == '\''))
        step();
      tok_.kind = Token::Ident;
      tok_.text = text_.substr(start, pos_ - start);
      return;
    }
    if (isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() && isdigit(static_cast<unsigned char>(text_[pos_]))) step();
      tok_.kind = Token::Number;
      tok_.text = text_.substr(start, pos_ - start);
      tok_.value = std::stoll(tok_.text);
      return;
    }
    tok_.kind = Token::Sym;
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      tok_.text = "->";
      step();
      step();
      return;
    }
    if (c == '<' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
      tok_.text = "<=";
      step();
      step();
      return;
    }
    tok_.text = std::string(1, c);
    step();
  }

  void step() {
    ++pos_;
    ++col_;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

class Parser {
 public:
  Parser(const std::string& text, const FormulaSignature& sig) : lex_(text), sig_(sig) {}

  FormulaPtr parse() {
    FormulaPtr f = formula();
    if (lex_.peek().kind != Token::End) lex_.fail("trailing input");
    return f;
  }

 private:
  FormulaPtr formula() { return implies(); }

  FormulaPtr implies() {
    FormulaPtr lhs = disjunction();
    if (lex_.peek().kind == Token::Sym && lex_.peek().text == "->") {
      lex_.take();
      return Formula::implies(std::move(lhs), implies());
    }
    return lhs;
  }

  FormulaPtr disjunction() {
    FormulaPtr f = conjunction();
    while (lex_.peek().kind == Token::Sym && lex_.peek().text == "|") {
      lex_.take();
      f = Formula::disj(std::move(f), conjunction());
    }
    return f;
  }

  FormulaPtr conjunction() {
    FormulaPtr f = unary();
    while (lex_.peek().kind == Token::Sym && lex_.peek().text == "&") {
      lex_.take();
      f = Formula::conj(std::move(f), unary());
    }
    return f;
  }

  FormulaPtr unary() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Sym && t.text == "!") {
      lex_.take();
      return Formula::negate(unary());
    }
    if (t.kind == Token::Ident && (t.text == "exists" || t.text == "forall")) {
      bool ex = t.text == "exists";
      lex_.take();
      Token var = expect_ident("variable");
      expect_sym(".");
      FormulaPtr body = implies();  // quantifier scope extends right
      return ex ? Formula::exists(var.text, std::move(body))
                : Formula::forall(var.text, std::move(body));
    }
    return primary();
  }

  FormulaPtr primary() {
    const Token& t = lex_.peek();
    if (t.kind == Token::Sym && t.text == "(") {
      lex_.take();
      FormulaPtr f = formula();
      expect_sym(")");
      return f;
    }
    if (t.kind == Token::Ident && t.text == "dist") return dist_atom();
    if (t.kind == Token::Ident) return atom_or_eq();
    lex_.fail("expected formula");
  }

  FormulaPtr dist_atom() {
    lex_.take();  // dist
    expect_sym("(");
    Token x = expect_ident("variable");
    expect_sym(",");
    Token y = expect_ident("variable or unary name");
    expect_sym(")");
    PredId as_pred = intern_name(y.text);
    bool pred_arg = sig_.has_unary(as_pred);
    const Token& cmp = lex_.peek();
    if (cmp.kind != Token::Sym || (cmp.text != "<=" && cmp.text != "<"))
      lex_.fail("expected <= or < after dist(...)");
    bool le = lex_.take().text == "<=";
    Token r = lex_.peek();
    if (r.kind != Token::Number) lex_.fail("expected radius");
    lex_.take();
    if (r.value < 0) lex_.fail("radius must be nonnegative");
    if (pred_arg) {
      if (le) lex_.fail("unary distance atoms use dist(x,Y) < r");
      return Formula::dist_lt(x.text, as_pred, r.value);
    }
    if (!le) lex_.fail("binary distance atoms use dist(x,y) <= r");
    return Formula::dist_le(x.text, y.text, r.value);
  }

  FormulaPtr atom_or_eq() {
    Token name = lex_.take();
    if (lex_.peek().kind == Token::Sym && lex_.peek().text == "(") {
      lex_.take();
      Token x = expect_ident("variable");
      PredId id = intern_name(name.text);
      if (lex_.peek().kind == Token::Sym && lex_.peek().text == ",") {
        lex_.take();
        Token y = expect_ident("variable");
        expect_sym(")");
        if (!sig_.has_binary(id)) {
          if (sig_.has_unary(id)) lex_.fail("arity error: " + name.text + " is unary");
          lex_.fail("unknown relation " + name.text);
        }
        return Formula::binary_atom(id, x.text, y.text);
      }
      expect_sym(")");
      if (!sig_.has_unary(id)) {
        if (sig_.has_binary(id)) lex_.fail("arity error: " + name.text + " is binary");
        lex_.fail("unknown relation " + name.text);
      }
      return Formula::unary_atom(id, x.text);
    }
    if (lex_.peek().kind == Token::Sym && lex_.peek().text == "=") {
      lex_.take();
      Token y = expect_ident("variable");
      return Formula::eq(name.text, y.text);
    }
    lex_.fail("expected '(' or '=' after identifier");
  }

  Token expect_ident(const std::string& what) {
    if (lex_.peek().kind != Token::Ident) lex_.fail("expected " + what);
    return lex_.take();
  }

  void expect_sym(const std::string& s) {
    if (lex_.peek().kind != Token::Sym || lex_.peek().text != s)
      lex_.fail("expected '" + s + "'");
    lex_.take();
  }

  Lexer lex_;
  const FormulaSignature& sig_;
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, const FormulaSignature& sig) {
  Parser p(text, sig);
  return p.parse();
}

std::string formula_to_string(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::UnaryAtom:
      return pred_name(f->pred) + "(" + f->var1 + ")";
    case FKind::BinaryAtom:
      return pred_name(f->pred) + "(" + f->var1 + "," + f->var2 + ")";
    case FKind::Eq:
      return f->var1 + "=" + f->var2;
    case FKind::DistLE:
      return "dist(" + f->var1 + "," + f->var2 + ")<=" + std::to_string(f->radius);
    case FKind::DistLT:
      return "dist(" + f->var1 + "," + pred_name(f->pred) + ")<" + std::to_string(f->radius);
    case FKind::Not:
      return "!" + formula_to_string(f->lhs);
    case FKind::And:
      return "(" + formula_to_string(f->lhs) + " & " + formula_to_string(f->rhs) + ")";
    case FKind::Or:
      return "(" + formula_to_string(f->lhs) + " | " + formula_to_string(f->rhs) + ")";
    case FKind::Implies:
      return "(" + formula_to_string(f->lhs) + " -> " + formula_to_string(f->rhs) + ")";
    case FKind::Exists:
      return "exists " + f->var1 + ". " + formula_to_string(f->lhs);
    case FKind::Forall:
      return "forall " + f->var1 + ". " + formula_to_string(f->lhs);
  }
  return "?";
}

int quantifier_rank(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::Exists:
    case FKind::Forall:
      return 1 + quantifier_rank(f->lhs);
    case FKind::Not:
      return quantifier_rank(f->lhs);
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
      return std::max(quantifier_rank(f->lhs), quantifier_rank(f->rhs));
    default:
      return 0;
  }
}

namespace {

void collect_free(const FormulaPtr& f, std::set<std::string>& bound,
                  std::vector<std::string>& out) {
  auto add = [&](const std::string& v) {
    if (!bound.count(v) && std::find(out.begin(), out.end(), v) == out.end())
      out.push_back(v);
  };
  switch (f->kind) {
    case FKind::UnaryAtom:
    case FKind::DistLT:
      add(f->var1);
      break;
    case FKind::BinaryAtom:
    case FKind::Eq:
    case FKind::DistLE:
      add(f->var1);
      add(f->var2);
      break;
    case FKind::Not:
      collect_free(f->lhs, bound, out);
      break;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
      collect_free(f->lhs, bound, out);
      collect_free(f->rhs, bound, out);
      break;
    case FKind::Exists:
    case FKind::Forall: {
      bool was = bound.count(f->var1) > 0;
      bound.insert(f->var1);
      collect_free(f->lhs, bound, out);
      if (!was) bound.erase(f->var1);
      break;
    }
  }
}

}  // namespace

std::vector<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> bound;
  std::vector<std::string> out;
  collect_free(f, bound, out);
  return out;
}

bool distance_rank_ok(const FormulaPtr& f, int k, int q) {
  switch (f->kind) {
    case FKind::UnaryAtom:
    case FKind::BinaryAtom:
    case FKind::Eq:
      return true;
    case FKind::DistLE:
    case FKind::DistLT:
      return BigInt(f->radius) <= rho(k, q);
    case FKind::Not:
      return distance_rank_ok(f->lhs, k, q);
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
      return distance_rank_ok(f->lhs, k, q) && distance_rank_ok(f->rhs, k, q);
    case FKind::Exists:
    case FKind::Forall:
      return q > 0 && distance_rank_ok(f->lhs, k + 1, q - 1);
  }
  return false;
}

bool is_plain_fo(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::DistLE:
    case FKind::DistLT:
      return false;
    case FKind::Not:
    case FKind::Exists:
    case FKind::Forall:
      return is_plain_fo(f->lhs);
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
      return is_plain_fo(f->lhs) && is_plain_fo(f->rhs);
    default:
      return true;
  }
}

}  // namespace mw
