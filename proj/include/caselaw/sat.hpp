#pragma once

#include <cstdint>
#include <vector>

namespace caselaw {

/// DPLL search with two-watched-literal unit propagation and chronological
/// backtracking. Literals use the DIMACS convention: variable v >= 1 appears
/// as v or -v. One solver instance answers one query.
class SatSolver {
 public:
  int new_var();
  int num_vars() const { return static_cast<int>(values_.size()) - 1; }

  /// Duplicate literals are merged and tautological clauses dropped.
  void add_clause(std::vector<int> literals);

  bool solve();

  /// Value of `var` in the model found by the last successful solve().
  bool model_value(int var) const { return values_[var] > 0; }

  std::uint64_t decisions() const { return decisions_; }
  std::uint64_t propagations() const { return propagations_; }

 private:
  struct Decision {
    std::size_t trail_size;  // trail length before the decision literal
    int literal;
    bool flipped;
  };

  static std::size_t index(int lit) {
    return 2 * static_cast<std::size_t>(lit > 0 ? lit : -lit) + (lit < 0 ? 1 : 0);
  }
  int value(int lit) const {
    int v = values_[lit > 0 ? lit : -lit];
    return lit > 0 ? v : -v;
  }
  void assign(int lit);
  bool propagate();
  void backtrack_to(std::size_t trail_size);
  int pick_branch_literal() const;

  std::vector<std::int8_t> values_{0};  // index 0 unused
  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<std::size_t>> watches_{{}, {}};
  std::vector<int> units_;
  std::vector<int> trail_;
  std::vector<Decision> decisions_stack_;
  std::size_t queue_head_ = 0;
  bool trivially_unsat_ = false;
  std::uint64_t decisions_ = 0;
  std::uint64_t propagations_ = 0;
};

}  // namespace caselaw
