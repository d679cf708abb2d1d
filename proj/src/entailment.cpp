#include "caselaw/entailment.hpp"

#include <map>
#include <unordered_map>

#include "caselaw/sat.hpp"

namespace caselaw {

namespace {

// Tseitin encoding: one variable per atom and per distinct connective node.
class Encoder {
 public:
  explicit Encoder(SatSolver& solver) : solver_(solver) {}

  int encode(const Formula& f) {
    if (auto it = node_vars_.find(f.identity()); it != node_vars_.end()) return it->second;
    int v = 0;
    switch (f.op()) {
      case Op::Top:
      case Op::Bot:
        v = solver_.new_var();
        solver_.add_clause({f.is_top() ? v : -v});
        break;
      case Op::Atom: {
        auto [it, inserted] = atom_vars_.try_emplace(f.atom_value(), 0);
        if (inserted) it->second = solver_.new_var();
        v = it->second;
        break;
      }
      case Op::Not:
        v = -encode(f.lhs());
        break;
      default: {
        const int a = encode(f.lhs());
        const int b = encode(f.rhs());
        v = solver_.new_var();
        define(f.op(), v, a, b);
      }
    }
    node_vars_.emplace(f.identity(), v);
    return v;
  }

  const std::map<Atom, int>& atom_vars() const { return atom_vars_; }

 private:
  void define(Op op, int v, int a, int b) {
    switch (op) {
      case Op::And:
        solver_.add_clause({-v, a});
        solver_.add_clause({-v, b});
        solver_.add_clause({v, -a, -b});
        break;
      case Op::Or:
        solver_.add_clause({-v, a, b});
        solver_.add_clause({v, -a});
        solver_.add_clause({v, -b});
        break;
      case Op::Implies:
        solver_.add_clause({-v, -a, b});
        solver_.add_clause({v, a});
        solver_.add_clause({v, -b});
        break;
      case Op::Iff:
        solver_.add_clause({-v, -a, b});
        solver_.add_clause({-v, a, -b});
        solver_.add_clause({v, a, b});
        solver_.add_clause({v, -a, -b});
        break;
      default:
        break;
    }
  }

  SatSolver& solver_;
  std::map<Atom, int> atom_vars_;
  std::unordered_map<const void*, int> node_vars_;
};

}  // namespace

std::optional<Assignment> find_model(const Formula& input) {
  const Formula f = simplify_constants(input);
  if (f.is_bot()) return std::nullopt;
  SatSolver solver;
  Encoder encoder(solver);
  if (!f.is_top()) solver.add_clause({encoder.encode(f)});
  if (!solver.solve()) return std::nullopt;
  Assignment model;
  for (const auto& [atom, var] : encoder.atom_vars()) model[atom] = solver.model_value(var);
  return model;
}

bool is_satisfiable(const Formula& f) { return find_model(f).has_value(); }

bool is_inconsistent(const Formula& f) { return !is_satisfiable(f); }

bool entails(const Formula& premise, const Formula& conclusion) {
  return is_inconsistent(conjoin(premise, negate(conclusion)));
}

bool Oracle::entails(const Formula& premise, const Formula& conclusion) const {
  tick();
  return caselaw::entails(premise, conclusion);
}

bool Oracle::is_inconsistent(const Formula& f) const {
  tick();
  return caselaw::is_inconsistent(f);
}

}  // namespace caselaw
