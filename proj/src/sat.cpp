#include "caselaw/sat.hpp"

#include <algorithm>
#include <cstdlib>

namespace caselaw {

int SatSolver::new_var() {
  values_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  return num_vars();
}

void SatSolver::add_clause(std::vector<int> literals) {
  std::sort(literals.begin(), literals.end(),
            [](int a, int b) { return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b; });
  literals.erase(std::unique(literals.begin(), literals.end()), literals.end());
  for (std::size_t i = 1; i < literals.size(); ++i)
    if (literals[i] == -literals[i - 1]) return;
  if (literals.empty()) {
    trivially_unsat_ = true;
    return;
  }
  if (literals.size() == 1) {
    units_.push_back(literals[0]);
    return;
  }
  const std::size_t id = clauses_.size();
  watches_[index(-literals[0])].push_back(id);
  watches_[index(-literals[1])].push_back(id);
  clauses_.push_back(std::move(literals));
}

void SatSolver::assign(int lit) {
  values_[std::abs(lit)] = lit > 0 ? 1 : -1;
  trail_.push_back(lit);
}

// Watches are keyed by the negation of the watched literal: watches_[index(l)]
// lists the clauses to revisit once l becomes true.
bool SatSolver::propagate() {
  while (queue_head_ < trail_.size()) {
    const int lit = trail_[queue_head_++];
    const int false_lit = -lit;
    auto& watching = watches_[index(lit)];
    std::size_t keep = 0;
    bool conflict = false;
    for (std::size_t i = 0; i < watching.size(); ++i) {
      const std::size_t id = watching[i];
      if (conflict) {
        watching[keep++] = id;
        continue;
      }
      auto& c = clauses_[id];
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (value(c[0]) > 0) {
        watching[keep++] = id;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) >= 0) {
          std::swap(c[1], c[k]);
          watches_[index(-c[1])].push_back(id);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      watching[keep++] = id;
      if (value(c[0]) < 0) {
        conflict = true;
      } else {
        ++propagations_;
        assign(c[0]);
      }
    }
    watching.resize(keep);
    if (conflict) return false;
  }
  return true;
}

void SatSolver::backtrack_to(std::size_t trail_size) {
  while (trail_.size() > trail_size) {
    values_[std::abs(trail_.back())] = 0;
    trail_.pop_back();
  }
  queue_head_ = trail_size;
}

int SatSolver::pick_branch_literal() const {
  for (int v = 1; v <= num_vars(); ++v)
    if (values_[v] == 0) return -v;  // false first
  return 0;
}

bool SatSolver::solve() {
  if (trivially_unsat_) return false;
  backtrack_to(0);
  decisions_stack_.clear();
  for (int u : units_) {
    int val = value(u);
    if (val < 0) return false;
    if (val == 0) assign(u);
  }
  if (!propagate()) return false;
  while (true) {
    const int lit = pick_branch_literal();
    if (lit == 0) return true;
    ++decisions_;
    decisions_stack_.push_back({trail_.size(), lit, false});
    assign(lit);
    while (!propagate()) {
      while (!decisions_stack_.empty() && decisions_stack_.back().flipped)
        decisions_stack_.pop_back();
      if (decisions_stack_.empty()) return false;
      Decision& d = decisions_stack_.back();
      backtrack_to(d.trail_size);
      d.flipped = true;
      d.literal = -d.literal;
      assign(d.literal);
    }
  }
}

}  // namespace caselaw
