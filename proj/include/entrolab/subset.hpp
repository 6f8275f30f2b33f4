#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace entrolab {

/// Bitmask over a ground set: bit i set iff variable i is in the subset.
using Subset = std::uint32_t;

inline constexpr int kMaxGroundSize = 24;

constexpr Subset full_subset(int n) { return n >= 32 ? ~Subset{0} : (Subset{1} << n) - 1; }
constexpr Subset singleton(int i) { return Subset{1} << i; }
constexpr bool contains(Subset set, int i) { return (set >> i) & 1U; }
constexpr bool is_subset_of(Subset a, Subset b) { return (a & ~b) == 0; }
constexpr int cardinality(Subset set) { return std::popcount(set); }

/// Coordinate index of a nonempty subset in a dense 2^n - 1 vector.
constexpr std::size_t coordinate(Subset set) { return static_cast<std::size_t>(set) - 1; }

inline std::vector<int> members(Subset set) {
  std::vector<int> out;
  while (set != 0) {
    out.push_back(std::countr_zero(set));
    set &= set - 1;
  }
  return out;
}

}  // namespace entrolab
