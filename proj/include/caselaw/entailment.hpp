#pragma once

#include <atomic>
#include <cstdint>
#include <optional>

#include "caselaw/formula.hpp"

namespace caselaw {

bool is_satisfiable(const Formula& f);
/// A satisfying assignment over the atoms of `f`, if one exists.
std::optional<Assignment> find_model(const Formula& f);

/// premise |= conclusion, i.e. premise & !conclusion is unsatisfiable.
bool entails(const Formula& premise, const Formula& conclusion);
bool is_inconsistent(const Formula& f);

/// Thread-safe tally of decision-procedure calls.
class EntailmentCounter {
 public:
  void increment() { calls_.fetch_add(1, std::memory_order_relaxed); }
  std::uint64_t value() const { return calls_.load(std::memory_order_relaxed); }
  void reset() { calls_.store(0, std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> calls_{0};
};

/// Entry point for every logical test made by the consistency and reasoning
/// code, so that call counts can be observed. Each method is one call.
class Oracle {
 public:
  explicit Oracle(EntailmentCounter* counter = nullptr) : counter_(counter) {}

  bool entails(const Formula& premise, const Formula& conclusion) const;
  bool is_inconsistent(const Formula& f) const;
  bool is_satisfiable(const Formula& f) const { return !is_inconsistent(f); }

  EntailmentCounter* counter() const { return counter_; }

 private:
  void tick() const {
    if (counter_) counter_->increment();
  }
  EntailmentCounter* counter_;
};

}  // namespace caselaw
