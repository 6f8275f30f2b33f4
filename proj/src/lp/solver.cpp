#include "entrolab/lp/solver.hpp"

#include <map>
#include <stdexcept>

#include "entrolab/errors.hpp"

#include "presolve.hpp"
#include "simplex.hpp"

namespace entrolab::lp {
namespace {

using detail::Column;
using detail::Presolver;
using detail::Reduction;
using detail::SimplexStatus;
using detail::StandardForm;

int sign_of(Relation r) { return r == Relation::LessEq ? -1 : 1; }

struct DualColumns {
  StandardForm lp;
  // per dual column: reduced row and +1/-1 (equality rows are split)
  std::vector<std::pair<std::size_t, int>> origin;
};

/// Columns of the dual: one per reduced inequality row, two per equality.
/// Coordinate rows 0..K-1 carry the row coefficients; `extra_row` (if >= 0)
/// carries the row constants.
DualColumns dual_columns(const Reduction& red, int rows, int extra_row) {
  DualColumns out;
  out.lp.rows = rows;
  for (std::size_t r = 0; r < red.rows.size(); ++r) {
    const auto& row = red.rows[r];
    for (int sign : {1, -1}) {
      if (sign < 0 && !row.equality) break;
      Column col;
      for (const auto& [k, v] : row.coeffs) col.entries.emplace_back(k, v * sign);
      if (extra_row >= 0 && row.rhs != 0) col.entries.emplace_back(extra_row, row.rhs * sign);
      out.lp.columns.push_back(std::move(col));
      out.lp.cost.push_back(row.rhs * sign);
      out.origin.emplace_back(r, sign);
    }
  }
  return out;
}

EntropyVector expand_witness(const LinearSystem& sys, const Reduction& red, const std::vector<Rational>& y) {
  std::vector<Rational> values(sys.ground().coordinate_count());
  for (Subset s = 1; s <= sys.ground().full(); ++s) values[coordinate(s)] = y[static_cast<std::size_t>(red.coordinate_of[s])];
  return EntropyVector(sys.ground(), std::move(values), true);
}

std::vector<Rational> to_row_vector(const LinearSystem& sys, const detail::Proof& p) {
  std::vector<Rational> out(sys.constraints().size());
  for (const auto& [row, v] : p) out[row] = v;
  return out;
}

struct FeasibilityCore {
  Feasibility status;
  std::optional<EntropyVector> witness;
  std::vector<Rational> certificate;
  std::size_t pivots = 0;
};

FeasibilityCore feasibility(const LinearSystem& sys, Presolver& pre) {
  const Reduction& red = pre.reduction();
  FeasibilityCore out;
  if (red.certificate) {
    out.status = Feasibility::Infeasible;
    out.certificate = to_row_vector(sys, *red.certificate);
    return out;
  }
  const int k = static_cast<int>(red.classes.size());
  // max d.w  s.t.  sum w_r c_r = 0,  d.w + s = 1,  w, s >= 0
  DualColumns dc = dual_columns(red, k + 1, k);
  Column slack;
  slack.entries.emplace_back(k, 1);
  dc.lp.columns.push_back(std::move(slack));
  dc.lp.cost.emplace_back(0);
  dc.lp.rhs.assign(static_cast<std::size_t>(k + 1), Rational(0));
  dc.lp.rhs[static_cast<std::size_t>(k)] = 1;

  const auto res = detail::solve_standard(dc.lp);
  out.pivots = res.pivots;
  if (res.status != SimplexStatus::Optimal) throw std::logic_error("feasibility dual is not optimal");
  if (res.value == 0) {
    out.status = Feasibility::Feasible;
    std::vector<Rational> y(res.dual.begin(), res.dual.begin() + k);
    out.witness = expand_witness(sys, red, y);
    return out;
  }
  if (res.value != 1) throw std::logic_error("feasibility dual optimum is neither 0 nor 1");
  std::vector<Rational> mult(red.rows.size());
  for (std::size_t j = 0; j < dc.origin.size(); ++j) {
    if (res.primal[j] == 0) continue;
    mult[dc.origin[j].first] += res.primal[j] * dc.origin[j].second;
  }
  out.status = Feasibility::Infeasible;
  out.certificate = to_row_vector(sys, pre.expand(mult));
  return out;
}

void fill_stats(SolveStats& st, const LinearSystem& sys, const Reduction& red) {
  st.original_rows = sys.constraints().size();
  st.original_coordinates = sys.ground().coordinate_count();
  st.reduced_rows = red.rows.size();
  st.reduced_coordinates = red.classes.size();
}

}  // namespace

FeasibilityResult solve_feasibility(const LinearSystem& sys, const SolveOptions& options) {
  sys.validate();
  Presolver pre(sys, options.presolve);
  FeasibilityCore core = feasibility(sys, pre);
  FeasibilityResult out;
  out.status = core.status;
  out.witness = std::move(core.witness);
  out.certificate = std::move(core.certificate);
  fill_stats(out.stats, sys, pre.reduction());
  out.stats.pivots = core.pivots;
  if (!verify_certificate(sys, out)) throw std::logic_error("solver produced an unverifiable result");
  return out;
}

OptimizeResult minimize(const LinearSystem& sys, const LinearFunctional& objective, const SolveOptions& options) {
  sys.validate();
  if (!is_subset_of(objective.support(), sys.ground().full())) {
    throw DomainError("objective mentions variables outside the ground set");
  }
  Presolver pre(sys, options.presolve);
  const Reduction& red = pre.reduction();
  OptimizeResult out;
  fill_stats(out.stats, sys, red);

  auto from_feasibility = [&](OptimizeStatus if_feasible) {
    FeasibilityCore core = feasibility(sys, pre);
    out.stats.pivots += core.pivots;
    if (core.status == Feasibility::Infeasible) {
      out.status = OptimizeStatus::Infeasible;
      out.certificate = std::move(core.certificate);
      if (!verify_farkas(sys, out.certificate)) throw std::logic_error("unverifiable certificate");
    } else {
      out.status = if_feasible;
    }
    return out;
  };
  if (red.certificate) return from_feasibility(OptimizeStatus::Unbounded);

  const int k = static_cast<int>(red.classes.size());
  std::vector<Rational> phi(static_cast<std::size_t>(k));
  for (const Term& t : objective.terms()) phi[static_cast<std::size_t>(red.coordinate_of[t.subset])] += t.coeff;

  // dual: max d.w  s.t.  sum w_r c_r = phi, w >= 0
  DualColumns dc = dual_columns(red, k, -1);
  std::vector<int> flip(static_cast<std::size_t>(k), 1);
  dc.lp.rhs = phi;
  for (int i = 0; i < k; ++i) {
    if (phi[static_cast<std::size_t>(i)] < 0) {
      flip[static_cast<std::size_t>(i)] = -1;
      dc.lp.rhs[static_cast<std::size_t>(i)] = -phi[static_cast<std::size_t>(i)];
    }
  }
  for (auto& col : dc.lp.columns) {
    for (auto& [r, v] : col.entries) {
      if (flip[static_cast<std::size_t>(r)] < 0) v = -v;
    }
  }
  const auto res = detail::solve_standard(dc.lp);
  out.stats.pivots = res.pivots;
  if (res.status == SimplexStatus::Infeasible) return from_feasibility(OptimizeStatus::Unbounded);
  if (res.status == SimplexStatus::Unbounded) {
    auto r = from_feasibility(OptimizeStatus::Optimal);
    if (r.status != OptimizeStatus::Infeasible) throw std::logic_error("unbounded dual with feasible primal");
    return r;
  }
  std::vector<Rational> y(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) y[static_cast<std::size_t>(i)] = res.dual[static_cast<std::size_t>(i)] * flip[static_cast<std::size_t>(i)];
  out.status = OptimizeStatus::Optimal;
  out.value = res.value;
  out.witness = expand_witness(sys, red, y);
  if (!verify_witness(sys, *out.witness) || objective.evaluate(*out.witness) != out.value) {
    throw std::logic_error("solver produced an unverifiable optimum");
  }
  return out;
}

bool verify_witness(const LinearSystem& sys, const EntropyVector& h) {
  if (!(h.ground() == sys.ground())) return false;
  for (const Constraint& c : sys.constraints()) {
    const Rational v = c.functional.evaluate(h);
    switch (c.relation) {
      case Relation::GreaterEq:
        if (v < c.rhs) return false;
        break;
      case Relation::LessEq:
        if (v > c.rhs) return false;
        break;
      case Relation::Equal:
        if (v != c.rhs) return false;
        break;
    }
  }
  return true;
}

bool verify_farkas(const LinearSystem& sys, const std::vector<Rational>& multipliers) {
  const auto& cons = sys.constraints();
  if (multipliers.size() != cons.size()) return false;
  std::map<Subset, Rational> combo;
  Rational constant = 0;
  for (std::size_t i = 0; i < cons.size(); ++i) {
    const Rational& l = multipliers[i];
    if (l == 0) continue;
    if (cons[i].relation != Relation::Equal && l < 0) return false;
    const int s = sign_of(cons[i].relation);
    for (const Term& t : cons[i].functional.terms()) combo[t.subset] += l * s * t.coeff;
    constant += l * s * cons[i].rhs;
  }
  for (const auto& [subset, v] : combo) {
    if (v != 0) return false;
  }
  return constant > 0;
}

bool verify_certificate(const LinearSystem& sys, const FeasibilityResult& result) {
  if (result.status == Feasibility::Feasible) return result.witness && verify_witness(sys, *result.witness);
  return verify_farkas(sys, result.certificate);
}

}  // namespace entrolab::lp
