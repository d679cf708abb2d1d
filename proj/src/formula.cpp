#include "caselaw/formula.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <unordered_map>

namespace caselaw {

std::string Atom::to_string() const {
  if (args.empty()) return name;
  std::string out = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out += ", ";
    out += args[i];
  }
  return out + ")";
}

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  if (!alpha(text.front())) return false;
  return std::all_of(text.begin() + 1, text.end(),
                     [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

struct Formula::Node {
  Op op;
  Atom atom;
  Formula lhs;
  Formula rhs;
  std::size_t hash;
  std::size_t size;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_atom(const Atom& a) {
  std::size_t h = std::hash<std::string>{}(a.name);
  for (const auto& arg : a.args) h = mix(h, std::hash<std::string>{}(arg));
  return h;
}

}  // namespace

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula Formula::make(Op op, Atom atom, Formula lhs, Formula rhs) {
  std::size_t h = mix(static_cast<std::size_t>(op) + 1, 0);
  std::size_t size = 1;
  if (op == Op::Atom) h = mix(h, hash_atom(atom));
  if (lhs.node_) {
    h = mix(h, lhs.node_->hash);
    size += lhs.node_->size;
  }
  if (rhs.node_) {
    h = mix(h, rhs.node_->hash);
    size += rhs.node_->size;
  }
  return Formula(std::make_shared<const Node>(
      Node{op, std::move(atom), std::move(lhs), std::move(rhs), h, size}));
}

Formula::Formula() : Formula(top()) {}

Formula Formula::top() {
  static const Formula kTop =
      make(Op::Top, Atom{}, Formula(nullptr), Formula(nullptr));
  return kTop;
}

Formula Formula::bot() {
  static const Formula kBot =
      make(Op::Bot, Atom{}, Formula(nullptr), Formula(nullptr));
  return kBot;
}

Formula Formula::atom(Atom a) {
  return make(Op::Atom, std::move(a), Formula(nullptr), Formula(nullptr));
}

Formula Formula::atom(std::string name, std::vector<std::string> args) {
  return atom(Atom(std::move(name), std::move(args)));
}

Formula Formula::negation(Formula f) {
  return make(Op::Not, Atom{}, std::move(f), Formula(nullptr));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return make(Op::And, Atom{}, std::move(lhs), std::move(rhs));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return make(Op::Or, Atom{}, std::move(lhs), std::move(rhs));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  return make(Op::Implies, Atom{}, std::move(lhs), std::move(rhs));
}

Formula Formula::equivalence(Formula lhs, Formula rhs) {
  return make(Op::Iff, Atom{}, std::move(lhs), std::move(rhs));
}

Op Formula::op() const { return node_->op; }

const Atom& Formula::atom_value() const {
  assert(op() == Op::Atom);
  return node_->atom;
}

const Formula& Formula::lhs() const {
  assert(node_->lhs.node_);
  return node_->lhs;
}

const Formula& Formula::rhs() const {
  assert(node_->rhs.node_);
  return node_->rhs;
}

std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::hash() const { return node_->hash; }

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->hash != other.node_->hash || node_->size != other.node_->size ||
      node_->op != other.node_->op)
    return false;
  switch (node_->op) {
    case Op::Top:
    case Op::Bot:
      return true;
    case Op::Atom:
      return node_->atom == other.node_->atom;
    case Op::Not:
      return node_->lhs == other.node_->lhs;
    default:
      return node_->lhs == other.node_->lhs && node_->rhs == other.node_->rhs;
  }
}

std::strong_ordering Formula::operator<=>(const Formula& other) const {
  if (node_ == other.node_) return std::strong_ordering::equal;
  if (auto c = node_->op <=> other.node_->op; c != 0) return c;
  switch (node_->op) {
    case Op::Top:
    case Op::Bot:
      return std::strong_ordering::equal;
    case Op::Atom:
      return node_->atom <=> other.node_->atom;
    case Op::Not:
      return node_->lhs <=> other.node_->lhs;
    default:
      if (auto c = node_->lhs <=> other.node_->lhs; c != 0) return c;
      return node_->rhs <=> other.node_->rhs;
  }
}

// Printing. Binding strength, weakest first: <->, ->, |, &, !.
namespace {

int precedence(Op op) {
  switch (op) {
    case Op::Iff:
      return 1;
    case Op::Implies:
      return 2;
    case Op::Or:
      return 3;
    case Op::And:
      return 4;
    case Op::Not:
      return 5;
    default:
      return 6;
  }
}

const char* symbol(Op op) {
  switch (op) {
    case Op::Iff:
      return " <-> ";
    case Op::Implies:
      return " -> ";
    case Op::Or:
      return " | ";
    case Op::And:
      return " & ";
    default:
      return "";
  }
}

void print(const Formula& f, int min_prec, std::string& out) {
  const int prec = precedence(f.op());
  const bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f.op()) {
    case Op::Top:
      out += "true";
      break;
    case Op::Bot:
      out += "false";
      break;
    case Op::Atom:
      out += f.atom_value().to_string();
      break;
    case Op::Not:
      out += '!';
      print(f.lhs(), prec, out);
      break;
    case Op::And:
    case Op::Or:
      // left-associative: a right operand of equal strength needs parentheses
      print(f.lhs(), prec, out);
      out += symbol(f.op());
      print(f.rhs(), prec + 1, out);
      break;
    case Op::Implies:
    case Op::Iff:
      print(f.lhs(), prec + 1, out);
      out += symbol(f.op());
      print(f.rhs(), prec, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  print(*this, 0, out);
  return out;
}

Formula negate(const Formula& f) {
  if (f.is_top()) return Formula::bot();
  if (f.is_bot()) return Formula::top();
  return Formula::negation(f);
}

Formula conjoin(const Formula& lhs, const Formula& rhs) {
  if (lhs.is_bot() || rhs.is_bot()) return Formula::bot();
  if (lhs.is_top()) return rhs;
  if (rhs.is_top()) return lhs;
  return Formula::conjunction(lhs, rhs);
}

Formula disjoin(const Formula& lhs, const Formula& rhs) {
  if (lhs.is_top() || rhs.is_top()) return Formula::top();
  if (lhs.is_bot()) return rhs;
  if (rhs.is_bot()) return lhs;
  return Formula::disjunction(lhs, rhs);
}

Formula conjoin_all(std::span<const Formula> parts) {
  Formula out = Formula::top();
  for (const auto& p : parts) out = conjoin(out, p);
  return out;
}

Formula disjoin_all(std::span<const Formula> parts) {
  Formula out = Formula::bot();
  for (const auto& p : parts) out = disjoin(out, p);
  return out;
}

namespace {

void collect_atoms(const Formula& f, std::set<Atom>& out) {
  switch (f.op()) {
    case Op::Top:
    case Op::Bot:
      return;
    case Op::Atom:
      out.insert(f.atom_value());
      return;
    case Op::Not:
      collect_atoms(f.lhs(), out);
      return;
    default:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
  }
}

}  // namespace

std::set<Atom> atoms_of(const Formula& f) {
  std::set<Atom> out;
  collect_atoms(f, out);
  return out;
}

bool mentions_predicate(const Formula& f, std::string_view predicate) {
  for (const auto& a : atoms_of(f))
    if (a.name == predicate) return true;
  return false;
}

bool evaluate(const Formula& f, const Assignment& assignment) {
  switch (f.op()) {
    case Op::Top:
      return true;
    case Op::Bot:
      return false;
    case Op::Atom: {
      auto it = assignment.find(f.atom_value());
      return it != assignment.end() && it->second;
    }
    case Op::Not:
      return !evaluate(f.lhs(), assignment);
    case Op::And:
      return evaluate(f.lhs(), assignment) && evaluate(f.rhs(), assignment);
    case Op::Or:
      return evaluate(f.lhs(), assignment) || evaluate(f.rhs(), assignment);
    case Op::Implies:
      return !evaluate(f.lhs(), assignment) || evaluate(f.rhs(), assignment);
    case Op::Iff:
      return evaluate(f.lhs(), assignment) == evaluate(f.rhs(), assignment);
  }
  return false;
}

namespace {

Formula fold(Op op, const Formula& a, const Formula& b) {
  switch (op) {
    case Op::And:
      return conjoin(a, b);
    case Op::Or:
      return disjoin(a, b);
    case Op::Implies:
      if (a.is_bot() || b.is_top()) return Formula::top();
      if (a.is_top()) return b;
      if (b.is_bot()) return negate(a);
      return Formula::implication(a, b);
    case Op::Iff:
      if (a.is_top()) return b;
      if (b.is_top()) return a;
      if (a.is_bot()) return negate(b);
      if (b.is_bot()) return negate(a);
      return Formula::equivalence(a, b);
    default:
      assert(false);
      return a;
  }
}

Formula rebuild(const Formula& f, const std::function<Formula(const Formula&)>& leaf) {
  switch (f.op()) {
    case Op::Top:
    case Op::Bot:
      return f;
    case Op::Atom:
      return leaf(f);
    case Op::Not: {
      Formula inner = rebuild(f.lhs(), leaf);
      if (inner.is_top() || inner.is_bot()) return negate(inner);
      if (inner.identity() == f.lhs().identity()) return f;
      return Formula::negation(inner);
    }
    default: {
      Formula a = rebuild(f.lhs(), leaf);
      Formula b = rebuild(f.rhs(), leaf);
      if (a.is_top() || a.is_bot() || b.is_top() || b.is_bot()) return fold(f.op(), a, b);
      if (a.identity() == f.lhs().identity() && b.identity() == f.rhs().identity()) return f;
      switch (f.op()) {
        case Op::And:
          return Formula::conjunction(a, b);
        case Op::Or:
          return Formula::disjunction(a, b);
        case Op::Implies:
          return Formula::implication(a, b);
        default:
          return Formula::equivalence(a, b);
      }
    }
  }
}

}  // namespace

Formula substitute(const Formula& f, const std::map<Atom, Formula>& replacement) {
  return rebuild(f, [&](const Formula& a) {
    auto it = replacement.find(a.atom_value());
    return it == replacement.end() ? a : it->second;
  });
}

Formula simplify_constants(const Formula& f) {
  return rebuild(f, [](const Formula& a) { return a; });
}

Formula canonicalize(const Formula& f) {
  switch (f.op()) {
    case Op::Top:
    case Op::Bot:
    case Op::Atom:
      return f;
    case Op::Not:
      return Formula::negation(canonicalize(f.lhs()));
    case Op::Implies:
      return Formula::implication(canonicalize(f.lhs()), canonicalize(f.rhs()));
    default: {
      Formula a = canonicalize(f.lhs());
      Formula b = canonicalize(f.rhs());
      if (b < a) std::swap(a, b);
      if (f.op() == Op::And) return Formula::conjunction(a, b);
      if (f.op() == Op::Or) return Formula::disjunction(a, b);
      return Formula::equivalence(a, b);
    }
  }
}

}  // namespace caselaw
