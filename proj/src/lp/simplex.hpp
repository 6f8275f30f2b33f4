#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "entrolab/rational.hpp"

namespace entrolab::lp::detail {

struct Column {
  std::vector<std::pair<int, Rational>> entries;  // (row, value), rows ascending
};

/// maximize cost.w  s.t.  A w = rhs, w >= 0, with rhs >= 0.
struct StandardForm {
  int rows = 0;
  std::vector<Column> columns;
  std::vector<Rational> rhs;
  std::vector<Rational> cost;
};

enum class SimplexStatus { Optimal, Infeasible, Unbounded };

struct SimplexResult {
  SimplexStatus status = SimplexStatus::Optimal;
  Rational value;
  std::vector<Rational> primal;  // per column
  std::vector<Rational> dual;    // per row; cost_j - dual.A_j <= 0 at optimum
  std::size_t pivots = 0;
};

/// Two-phase revised simplex in exact arithmetic with a dense basis inverse.
/// Dantzig pricing, switching to Bland's rule during long degenerate runs.
SimplexResult solve_standard(const StandardForm& lp);

}  // namespace entrolab::lp::detail
