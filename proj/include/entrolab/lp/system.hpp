#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entrolab/functional.hpp"
#include "entrolab/ground_set.hpp"

namespace entrolab::lp {

enum class Relation { GreaterEq, LessEq, Equal };

const char* relation_symbol(Relation r);

struct Constraint {
  LinearFunctional functional;
  Relation relation = Relation::GreaterEq;
  Rational rhs;
  std::string label;  // free text, e.g. "decode Y1 at 3"
};

/// Constraints over the joint-entropy coordinates of one ground set.
class LinearSystem {
 public:
  LinearSystem() = default;
  explicit LinearSystem(GroundSet ground) : ground_(std::move(ground)) {}

  const GroundSet& ground() const { return ground_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::optional<LinearFunctional>& objective() const { return objective_; }

  void add(Constraint c);
  void add(LinearFunctional f, Relation r, Rational rhs, std::string label = {});
  /// Appends every elemental inequality of the ground set (label "elemental").
  void add_elementals();
  void set_objective(LinearFunctional f) { objective_ = std::move(f); }

  /// Throws DomainError if a row or the objective mentions a variable
  /// outside the ground set.
  void validate() const;

  std::string describe(std::size_t row, const std::string& sep = ",") const;

 private:
  GroundSet ground_;
  std::vector<Constraint> constraints_;
  std::optional<LinearFunctional> objective_;
};

}  // namespace entrolab::lp
