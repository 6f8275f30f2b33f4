#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entrolab/ground_set.hpp"
#include "entrolab/rational.hpp"

namespace entrolab {

struct Variable {
  std::string name;
  std::vector<std::string> alphabet;
};

struct Outcome {
  std::vector<std::uint32_t> symbols;  // index into each variable's alphabet
  Rational probability;
};

/// Exact pmf over a finite product alphabet. Zero-probability outcomes are
/// dropped on construction; the remaining ones sum to exactly 1.
class JointDistribution {
 public:
  JointDistribution(std::vector<Variable> variables, std::vector<Outcome> outcomes);

  int arity() const { return static_cast<int>(variables_.size()); }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  GroundSet ground() const;

  /// Atom probabilities of the marginal on `set` (positive, unordered).
  std::vector<Rational> marginal(Subset set) const;

  /// Appends variables computed as functions of each outcome.
  template <typename Fn>
  JointDistribution with_derived(const std::vector<Variable>& extra, Fn&& symbols_of) const {
    std::vector<Variable> vars = variables_;
    vars.insert(vars.end(), extra.begin(), extra.end());
    std::vector<Outcome> outs;
    outs.reserve(outcomes_.size());
    for (const Outcome& o : outcomes_) {
      Outcome next = o;
      const std::vector<std::uint32_t> added = symbols_of(o);
      next.symbols.insert(next.symbols.end(), added.begin(), added.end());
      outs.push_back(std::move(next));
    }
    return JointDistribution(std::move(vars), std::move(outs));
  }

  /// Projection onto the listed variables (in the given order).
  JointDistribution project(const std::vector<int>& indices) const;

 private:
  std::vector<Variable> variables_;
  std::vector<Outcome> outcomes_;
};

}  // namespace entrolab
