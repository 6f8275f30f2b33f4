#include "entrolab/lp/system.hpp"

#include "entrolab/entropy.hpp"
#include "entrolab/errors.hpp"

namespace entrolab::lp {

const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::GreaterEq:
      return ">=";
    case Relation::LessEq:
      return "<=";
    case Relation::Equal:
      return "=";
  }
  return "?";
}

void LinearSystem::add(Constraint c) {
  c.rhs.canonicalize();
  constraints_.push_back(std::move(c));
}

void LinearSystem::add(LinearFunctional f, Relation r, Rational rhs, std::string label) {
  add(Constraint{std::move(f), r, std::move(rhs), std::move(label)});
}

void LinearSystem::add_elementals() {
  for (auto& f : elemental_inequalities(ground_.size())) add(std::move(f), Relation::GreaterEq, 0, "elemental");
}

void LinearSystem::validate() const {
  const Subset all = ground_.full();
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    if (!is_subset_of(constraints_[i].functional.support(), all)) {
      throw DomainError("row " + std::to_string(i) + " mentions variables outside the ground set");
    }
  }
  if (objective_ && !is_subset_of(objective_->support(), all)) {
    throw DomainError("objective mentions variables outside the ground set");
  }
}

std::string LinearSystem::describe(std::size_t row, const std::string& sep) const {
  const Constraint& c = constraints_.at(row);
  std::string out = c.functional.to_string(ground_, sep) + " " + relation_symbol(c.relation) + " " + format_rational(c.rhs);
  if (!c.label.empty()) out += "  [" + c.label + "]";
  return out;
}

}  // namespace entrolab::lp
