#pragma once

// Independent reference implementations used as test oracles. None of these
// touch the SAT backend: they enumerate assignments or subsets directly.

#include <functional>
#include <set>
#include <vector>

#include "caselaw/formula.hpp"

namespace caselaw::testing {

/// Calls `visit` with every assignment over `atoms` (2^n of them).
void for_each_assignment(const std::set<Atom>& atoms,
                         const std::function<void(const Assignment&)>& visit);

bool tt_satisfiable(const Formula& f);
bool tt_entails(const Formula& premise, const Formula& conclusion);
bool tt_equivalent(const Formula& a, const Formula& b);

/// Truth of `exists xs. forall ys. matrix` by enumeration.
bool brute_force_qbf(const std::vector<Atom>& exists_vars,
                     const std::vector<Atom>& forall_vars, const Formula& matrix);

}  // namespace caselaw::testing
