#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mw/structure.hpp"
#include "mw/types.hpp"

namespace mw {

enum class FKind {
  UnaryAtom,   // Y(x)
  BinaryAtom,  // R(x,y)
  Eq,          // x = y
  DistLE,      // dist(x,y) <= r
  DistLT,      // dist(x,Y) < r
  Not,
  And,
  Or,
  Implies,
  Exists,
  Forall,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FKind kind;
  PredId pred = 0;         // UnaryAtom/DistLT: unary name; BinaryAtom: binary name
  std::string var1, var2;  // variables (var1 is the bound one for quantifiers)
  long long radius = 0;    // DistLE/DistLT
  FormulaPtr lhs, rhs;     // rhs only for binary connectives

  static FormulaPtr unary_atom(PredId pred, std::string x);
  static FormulaPtr binary_atom(PredId rel, std::string x, std::string y);
  static FormulaPtr eq(std::string x, std::string y);
  static FormulaPtr dist_le(std::string x, std::string y, long long r);
  static FormulaPtr dist_lt(std::string x, PredId pred, long long r);
  static FormulaPtr negate(FormulaPtr f);
  static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
  static FormulaPtr exists(std::string x, FormulaPtr body);
  static FormulaPtr forall(std::string x, FormulaPtr body);
};

struct FormulaSignature {
  std::vector<PredId> unary;
  std::vector<PredId> binary;

  static FormulaSignature of(const BinaryStructure& s);
  bool has_unary(PredId p) const;
  bool has_binary(PredId p) const;
};

// Grammar: E(x,y), P(x), x=y, dist(x,y)<=r, dist(x,P)<r, !, &, |, ->,
// exists x. ..., forall x. ..., parentheses.  Errors carry line/column.
FormulaPtr parse_formula(const std::string& text, const FormulaSignature& sig);

std::string formula_to_string(const FormulaPtr& f);

int quantifier_rank(const FormulaPtr& f);
std::vector<std::string> free_variables(const FormulaPtr& f);

// Recursive distance-rank check: boolean combinations of atoms, distance
// atoms with radius at most rho(k,q), and quantified subformulas at
// (k+1, q-1).
bool distance_rank_ok(const FormulaPtr& f, int k, int q);

// True when the formula contains no distance atoms (plain FO).
bool is_plain_fo(const FormulaPtr& f);

}  // namespace mw
