#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "entrolab/entropy.hpp"
#include "entrolab/lp/system.hpp"

namespace entrolab::lp {

struct SolveOptions {
  /// Merge coordinates forced equal by functional dependencies before the
  /// simplex runs. Certificates are always expressed on the original rows.
  bool presolve = true;
};

struct SolveStats {
  std::size_t original_rows = 0;
  std::size_t original_coordinates = 0;
  std::size_t reduced_rows = 0;
  std::size_t reduced_coordinates = 0;
  std::size_t pivots = 0;
};

enum class Feasibility { Feasible, Infeasible };

/// Farkas certificate convention: one multiplier per constraint. With each
/// row written as s*(a.h - rhs) where s = -1 for <= rows and +1 otherwise,
/// multipliers of inequality rows are >= 0, equality multipliers are free,
/// sum(l*s*a) = 0 and sum(l*s*rhs) > 0. E.g. {x >= 1, x <= 0} has (1, 1).
struct FeasibilityResult {
  Feasibility status = Feasibility::Feasible;
  std::optional<EntropyVector> witness;
  std::vector<Rational> certificate;
  SolveStats stats;
};

FeasibilityResult solve_feasibility(const LinearSystem& sys, const SolveOptions& options = {});

enum class OptimizeStatus { Optimal, Unbounded, Infeasible };

struct OptimizeResult {
  OptimizeStatus status = OptimizeStatus::Optimal;
  Rational value;
  std::optional<EntropyVector> witness;
  std::vector<Rational> certificate;  // set when Infeasible
  SolveStats stats;
};

OptimizeResult minimize(const LinearSystem& sys, const LinearFunctional& objective,
                        const SolveOptions& options = {});

/// Independent exact re-check of a result against the system.
bool verify_certificate(const LinearSystem& sys, const FeasibilityResult& result);
bool verify_witness(const LinearSystem& sys, const EntropyVector& h);
bool verify_farkas(const LinearSystem& sys, const std::vector<Rational>& multipliers);

}  // namespace entrolab::lp
