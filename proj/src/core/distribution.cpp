#include "entrolab/distribution.hpp"

#include <map>

#include "entrolab/errors.hpp"

namespace entrolab {

JointDistribution::JointDistribution(std::vector<Variable> variables, std::vector<Outcome> outcomes)
    : variables_(std::move(variables)) {
  if (variables_.empty()) throw DomainError("distribution needs at least one variable");
  GroundSet check(ground());
  for (const auto& v : variables_) {
    if (v.alphabet.empty()) throw DomainError("variable '" + v.name + "' has an empty alphabet");
  }
  std::map<std::vector<std::uint32_t>, Rational> merged;
  Rational total = 0;
  for (auto& o : outcomes) {
    if (o.symbols.size() != variables_.size()) throw DomainError("outcome arity does not match variables");
    for (std::size_t i = 0; i < o.symbols.size(); ++i) {
      if (o.symbols[i] >= variables_[i].alphabet.size()) {
        throw DomainError("outcome symbol outside the alphabet of '" + variables_[i].name + "'");
      }
    }
    o.probability.canonicalize();
    if (o.probability < 0) throw DomainError("negative probability");
    total += o.probability;
    if (o.probability == 0) continue;
    merged[o.symbols] += o.probability;
  }
  if (total != 1) throw DomainError("probabilities sum to " + format_rational(total) + ", not 1");
  outcomes_.reserve(merged.size());
  for (auto& [symbols, p] : merged) outcomes_.push_back(Outcome{symbols, p});
}

GroundSet JointDistribution::ground() const {
  std::vector<std::string> names;
  names.reserve(variables_.size());
  for (const auto& v : variables_) names.push_back(v.name);
  return GroundSet(std::move(names));
}

std::vector<Rational> JointDistribution::marginal(Subset set) const {
  const std::vector<int> idx = members(set);
  std::map<std::vector<std::uint32_t>, Rational> acc;
  std::vector<std::uint32_t> key(idx.size());
  for (const auto& o : outcomes_) {
    for (std::size_t k = 0; k < idx.size(); ++k) key[k] = o.symbols[static_cast<std::size_t>(idx[k])];
    acc[key] += o.probability;
  }
  std::vector<Rational> out;
  out.reserve(acc.size());
  for (auto& [k, p] : acc) out.push_back(p);
  return out;
}

JointDistribution JointDistribution::project(const std::vector<int>& indices) const {
  std::vector<Variable> vars;
  for (int i : indices) vars.push_back(variables_.at(static_cast<std::size_t>(i)));
  std::vector<Outcome> outs;
  outs.reserve(outcomes_.size());
  for (const auto& o : outcomes_) {
    Outcome n;
    n.probability = o.probability;
    for (int i : indices) n.symbols.push_back(o.symbols[static_cast<std::size_t>(i)]);
    outs.push_back(std::move(n));
  }
  return JointDistribution(std::move(vars), std::move(outs));
}

}  // namespace entrolab
