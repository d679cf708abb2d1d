#pragma once

// Propositional formulas over ground atoms. Formula is an immutable value with
// shared structure; copies are cheap and safe to share across threads.

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace caselaw {

/// A ground atom `name(arg1, ..., argN)`; predicates applied to constants are opaque.
struct Atom {
  std::string name;
  std::vector<std::string> args;

  Atom() = default;
  explicit Atom(std::string n, std::vector<std::string> a = {})
      : name(std::move(n)), args(std::move(a)) {}

  auto operator<=>(const Atom&) const = default;
  bool operator==(const Atom&) const = default;

  std::string to_string() const;
};

/// True iff `text` matches `[A-Za-z_][A-Za-z0-9_]*`.
bool is_identifier(std::string_view text);

enum class Op { Top, Bot, Atom, Not, And, Or, Implies, Iff };

class Formula {
 public:
  /// Defaults to Top.
  Formula();

  static Formula top();
  static Formula bot();
  static Formula atom(Atom a);
  static Formula atom(std::string name, std::vector<std::string> args = {});
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula equivalence(Formula lhs, Formula rhs);

  Op op() const;
  bool is_top() const { return op() == Op::Top; }
  bool is_bot() const { return op() == Op::Bot; }
  bool is_atom() const { return op() == Op::Atom; }

  /// Only valid when op() == Op::Atom.
  const Atom& atom_value() const;
  /// Operand of Not, or left operand of a binary connective.
  const Formula& lhs() const;
  const Formula& rhs() const;

  std::size_t size() const;
  std::size_t hash() const;

  /// Renders in the textual grammar with minimal parentheses; parse(to_string()) == *this.
  std::string to_string() const;

  bool operator==(const Formula& other) const;
  /// Structural total order (used for canonical ordering and ordered containers).
  std::strong_ordering operator<=>(const Formula& other) const;

  /// Identity of the shared node; equal identities imply equal formulas.
  const void* identity() const { return node_.get(); }

  struct Node;

 private:
  explicit Formula(std::shared_ptr<const Node> node);
  static Formula make(Op op, Atom atom, Formula lhs, Formula rhs);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Connective helpers that fold the constants Top/Bot. `conjoin_all` of an empty
// range is Top and `disjoin_all` of an empty range is Bot.
Formula conjoin(const Formula& lhs, const Formula& rhs);
Formula disjoin(const Formula& lhs, const Formula& rhs);
Formula negate(const Formula& f);
Formula conjoin_all(std::span<const Formula> parts);
Formula disjoin_all(std::span<const Formula> parts);

std::set<Atom> atoms_of(const Formula& f);
bool mentions_predicate(const Formula& f, std::string_view predicate);

using Assignment = std::map<Atom, bool>;

/// Classical evaluation; atoms missing from the assignment are false.
bool evaluate(const Formula& f, const Assignment& assignment);

/// Replaces atoms by formulas, then folds constants.
Formula substitute(const Formula& f, const std::map<Atom, Formula>& replacement);

/// Constant folding only; no other rewriting.
Formula simplify_constants(const Formula& f);

/// Sorts the operands of every commutative connective (And, Or, Iff) so that
/// formulas that differ only in operand order compare equal.
Formula canonicalize(const Formula& f);

}  // namespace caselaw
