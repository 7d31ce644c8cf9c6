#pragma once

#include <cstdint>

namespace privagg {

// Group-operation tally for one measurement context. Counting is routed
// through a thread-local pointer so shared, immutable group descriptors never
// carry mutable state.
struct OpCounter {
  std::uint64_t exponentiations = 0;
  std::uint64_t multiplications = 0;
  std::uint64_t pairings = 0;
  std::uint64_t inversions = 0;

  void reset() { *this = OpCounter{}; }

  OpCounter& operator+=(const OpCounter& o) {
    exponentiations += o.exponentiations;
    multiplications += o.multiplications;
    pairings += o.pairings;
    inversions += o.inversions;
    return *this;
  }
  bool operator==(const OpCounter&) const = default;
};

namespace detail {
inline thread_local OpCounter* active_counter = nullptr;
}

// Installs `counter` as the sink for the current thread until destroyed.
class CountingScope {
 public:
  explicit CountingScope(OpCounter& counter) : previous_(detail::active_counter) {
    detail::active_counter = &counter;
  }
  ~CountingScope() { detail::active_counter = previous_; }
  CountingScope(const CountingScope&) = delete;
  CountingScope& operator=(const CountingScope&) = delete;

 private:
  OpCounter* previous_;
};

// Suspends counting, e.g. for test-only target construction.
class UncountedScope {
 public:
  UncountedScope() : previous_(detail::active_counter) { detail::active_counter = nullptr; }
  ~UncountedScope() { detail::active_counter = previous_; }
  UncountedScope(const UncountedScope&) = delete;
  UncountedScope& operator=(const UncountedScope&) = delete;

 private:
  OpCounter* previous_;
};

namespace count {
inline void exponentiation() {
  if (auto* c = detail::active_counter) ++c->exponentiations;
}
inline void multiplication() {
  if (auto* c = detail::active_counter) ++c->multiplications;
}
inline void pairing() {
  if (auto* c = detail::active_counter) ++c->pairings;
}
inline void inversion() {
  if (auto* c = detail::active_counter) ++c->inversions;
}
}  // namespace count

}  // namespace privagg
