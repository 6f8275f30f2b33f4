#pragma once

#include <vector>

#include "entrolab/distribution.hpp"
#include "entrolab/recovery/indicators.hpp"
#include "entrolab/recovery/recover.hpp"

namespace entrolab::recovery {

/// Indicator family over the flattened product space of (X_1..X_m).
struct MultivarFamily {
  std::vector<int> dims;
  /// Axis values of each flattened atom, atoms in family order.
  std::vector<std::vector<int>> coords;
  IndicatorFamily family;
};

/// Every |X_i| >= 3, every cell of the product positive, and at most 12
/// cells in total (the family has 2^(N-1) - 1 members). PreconditionError
/// for a small alphabet, DomainError otherwise.
MultivarFamily build_multivar_indicators(const JointDistribution& dist);

/// Oracle over the family (members in `order`, labelled A1, A2, ...) that
/// also answers queries involving the axis variables.
ComputedOracle multivar_oracle(const MultivarFamily& family, const std::vector<std::size_t>& order);

struct MultivarRecovery {
  std::vector<int> dims;
  /// Row-major over dims, axis 0 slowest.
  std::vector<long double> joint;
  /// fibers[i][v]: recovered atoms (1-based) with X_i = v.
  std::vector<std::vector<std::vector<int>>> fibers;
  /// anchors[i][v]: member that indicates X_i = v, or the complement event
  /// when that fiber holds atom 1.
  std::vector<std::vector<std::size_t>> anchors;
  RecoveredDistribution atoms;
};

/// Recovers the atom masses, splits the atoms into the fibers of each axis
/// and places them on the product grid. Every fiber must be marked by a
/// member that is a function of its axis (the anchor). Values on each axis
/// are ordered by decreasing fiber mass, ties by smallest atom. Throws
/// NotIndicatorConsistent when the entropies fit no grid.
MultivarRecovery recover_multivar(const EntropyOracle& oracle, const std::vector<int>& dims);

/// Every tuple of per-axis permutations pi with q(x) = p(pi_1(x_1), ...,
/// pi_m(x_m)) within `tolerance`; pi[i][v] is the image of value v.
std::vector<std::vector<std::vector<int>>> align_axes(const std::vector<long double>& q,
                                                      const std::vector<long double>& p,
                                                      const std::vector<int>& dims,
                                                      long double tolerance = 1e-9L);

}  // namespace entrolab::recovery
