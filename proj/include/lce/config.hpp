#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace lce {

struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Guard for set-partition sweeps (ground sets and occurrence sets alike).
// Bell(12) ~ 4.2e6 keeps the worst full sweep in the seconds range.
// Overridable through the LCE_PARTITION_CAP environment variable.
inline int partition_cap() {
  static const int cap = [] {
    if (const char* s = std::getenv("LCE_PARTITION_CAP")) {
      int v = std::atoi(s);
      if (v > 0) return v;
    }
    return 12;
  }();
  return cap;
}

// Default evaluation bound for linear forms.
inline constexpr int kDefaultDegreeBound = 10;

// Default occurrence cap for noncommutative graphication (backtracking over
// word positions).
inline constexpr int kDefaultWordCap = 10;

}  // namespace lce
