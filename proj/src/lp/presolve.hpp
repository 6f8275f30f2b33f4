#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "entrolab/lp/system.hpp"

namespace entrolab::lp::detail {

/// Row multipliers over the original system (see FeasibilityResult).
using Proof = std::map<std::size_t, Rational>;

struct ReducedRow {
  std::vector<std::pair<int, Rational>> coeffs;  // reduced coordinate, value
  bool equality = false;
  Rational rhs;        // coeffs.y >= rhs, or = rhs
  std::size_t origin;  // original row
  Rational scale;      // reduced row = scale * (mapped origin row)
};

struct Reduction {
  std::vector<Subset> classes;       // closed subsets, one per reduced coordinate
  std::vector<int> coordinate_of;    // subset mask -> reduced coordinate (index 0 unused)
  std::vector<ReducedRow> rows;
  std::optional<Proof> certificate;  // set when presolve alone proves infeasibility
};

/// Coordinate merging by functional dependence. Rows are read as
/// g_i(h) = s_i (a_i.h - rhs_i) with g_i >= 0 or = 0. Whenever the rows imply
/// h(T) = h(U) for U inside T, every h(S) with S containing U is merged with
/// h(S u T); each merge is justified by elemental rows, so reduced
/// certificates expand back into certificates on the original rows.
class Presolver {
 public:
  Presolver(const LinearSystem& sys, bool merge);
  ~Presolver();
  Presolver(const Presolver&) = delete;
  Presolver& operator=(const Presolver&) = delete;

  const Reduction& reduction() const;
  /// Certificate over original rows from multipliers on reduced rows.
  Proof expand(const std::vector<Rational>& reduced_multipliers);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace entrolab::lp::detail
