#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entrolab/lp/solver.hpp"
#include "entrolab/network/aux_spec.hpp"
#include "entrolab/network/problem.hpp"

namespace entrolab::network {

/// LP outer bound rows over the sources and edge variables:
///   h(Y_W) = H(Y_W) for every nonempty set of sources W,
///   h(U_e | sources at tail(e), edges into tail(e)) = 0  (h(U_e) = 0 with no inputs),
///   h(Y_s | edges into u, sources at u) = 0 for each u demanding s,
///   h(U_e) <= C_e for finite capacities,
///   h(inputs of e | U_e) = 0 for infinite-capacity edges (they may as well
///   forward everything they see),
/// followed by all elemental inequalities.
lp::LinearSystem build_lp_constraints(const NetworkProblem& p, const CapacityTuple& c);

/// Same rows on the ground set sources + auxiliaries + edges, plus the
/// auxiliary fixings and template rows of `aux`.
lp::LinearSystem build_improved_constraints(const NetworkProblem& p, const CapacityTuple& c, const AuxSpec& aux);

enum class Verdict { MaybeAchievable, NotAchievable };

struct LpBoundResult {
  Verdict verdict = Verdict::MaybeAchievable;
  lp::LinearSystem system;
  lp::FeasibilityResult lp;
};

LpBoundResult check_lp_bound(const NetworkProblem& p, const CapacityTuple& c, const lp::SolveOptions& options = {});
LpBoundResult check_improved_bound(const NetworkProblem& p, const CapacityTuple& c, const AuxSpec& aux,
                                   const lp::SolveOptions& options = {});

struct CutsetResult {
  bool passes = true;
  Subset sources = 0;                   // W, over p.sources
  std::vector<std::string> source_side;  // T
  Rational lhs;                         // H(Y_W | Y_W^c)
  Rational rhs;                         // capacity crossing T -> T^c
};

/// Requires every sink to demand every source (PreconditionError otherwise)
/// and at most 20 nodes.
CutsetResult cutset_check(const NetworkProblem& p, const CapacityTuple& c);

struct FdResult {
  bool passes = true;
  Subset sources = 0;
  std::vector<std::string> edge_set;  // minimal-capacity resolving set
  Rational lhs;
  Rational rhs;
  std::vector<std::string> warnings;  // W with no finite resolving set
};

/// For each W, the cheapest set A of finite-capacity edges such that U_A and
/// Y_{W^c} determine Y_W through the encoding and decoding dependencies;
/// checks H(Y_W | Y_{W^c}) <= sum of C_e over A. At most 20 such edges.
FdResult fd_bound(const NetworkProblem& p, const CapacityTuple& c);

}  // namespace entrolab::network
