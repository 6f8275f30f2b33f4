#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "entrolab/io.hpp"
#include "entrolab/recovery/indicators.hpp"

namespace entrolab::recovery {

/// Entropy values are compared with these tolerances in float mode.
inline constexpr long double kPositive = 1e-9L;
inline constexpr long double kTie = 1e-12L;

/// An entropy query: some members, optionally Y itself, optionally some axis
/// variables (multi-variable families only).
struct Query {
  std::vector<std::size_t> members;
  bool with_y = false;
  std::vector<int> axes;
};

/// Black-box access to the entropy function of (Y, Y_a). Labels are opaque.
class EntropyOracle {
 public:
  virtual ~EntropyOracle() = default;
  virtual int atoms() const = 0;
  virtual std::size_t member_count() const = 0;
  virtual std::string label(std::size_t member) const = 0;
  virtual bool has_y() const { return false; }
  virtual int axis_count() const { return 0; }
  /// Bits; throws DomainError when the value is not available.
  virtual long double entropy(const Query& query) const = 0;
};

/// Oracle computed from an explicit pmf and, per member, the value the member
/// takes on each atom. Indicator members use 0/1; anything else is allowed so
/// that inconsistent inputs can be simulated.
class ComputedOracle : public EntropyOracle {
 public:
  ComputedOracle(std::vector<long double> pmf, std::vector<std::vector<int>> member_values,
                 std::vector<std::string> labels, std::vector<std::vector<int>> axis_values = {});
  int atoms() const override { return static_cast<int>(pmf_.size()); }
  std::size_t member_count() const override { return values_.size(); }
  std::string label(std::size_t member) const override { return labels_.at(member); }
  bool has_y() const override { return true; }
  int axis_count() const override { return static_cast<int>(axes_.size()); }
  long double entropy(const Query& query) const override;

 private:
  std::vector<long double> pmf_;
  std::vector<std::vector<int>> values_;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> axes_;
};

/// The oracle of an indicator family with members listed in the order given
/// by `order` (a permutation of member positions) and labelled A1, A2, ...
ComputedOracle family_oracle(const IndicatorFamily& family, const std::vector<std::size_t>& order);
/// Same, with a uniformly shuffled order.
ComputedOracle shuffled_family_oracle(const IndicatorFamily& family, std::mt19937_64& rng);

/// Oracle read from a table:
///   {"n": 3, "members": [{"id": "A1", "H": 0.81}, ...],
///    "joints": [{"set": ["A1", "A2"], "H": 1.5}, ...],
///    "conditionals": [{"of": "A1", "given": ["A2"], "H": 0.7}, ...]}
/// Conditionals are turned into joints when the conditioning joint is known.
class TableOracle : public EntropyOracle {
 public:
  explicit TableOracle(const Json& json);
  int atoms() const override { return n_; }
  std::size_t member_count() const override { return labels_.size(); }
  std::string label(std::size_t member) const override { return labels_.at(member); }
  long double entropy(const Query& query) const override;

 private:
  int n_ = 0;
  std::vector<std::string> labels_;
  std::map<std::vector<std::size_t>, long double> joints_;
};

class NotIndicatorConsistent : public std::runtime_error {
 public:
  NotIndicatorConsistent(const std::string& step, const std::string& what)
      : std::runtime_error(step + ": " + what), step_(step) {}
  const std::string& step() const noexcept { return step_; }

 private:
  std::string step_;
};

struct RecoveredDistribution {
  std::vector<long double> probabilities;  // nonincreasing
  /// member[i] is the member identified as the indicator of atom i + 1;
  /// atom 1 has none (its mass is the remainder).
  std::vector<std::optional<std::size_t>> member;
  std::size_t queries = 0;
};

/// Recovers the atom probabilities from entropy values alone. Gates, in
/// order: member count, distinctness, binarity (refinement chains of length
/// n - 2 from every member), then the argmin identification of the atoms
/// from the smallest upward. Throws NotIndicatorConsistent naming the step.
RecoveredDistribution recover_distribution(const EntropyOracle& oracle);

/// Same multiset up to `tolerance` per atom; false on length mismatch.
bool check_permutation_equivalence(std::vector<long double> p, std::vector<long double> q,
                                   long double tolerance = 1e-9L);

}  // namespace entrolab::recovery
