#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "entrolab/distribution.hpp"
#include "entrolab/entropy.hpp"
#include "entrolab/subset.hpp"

namespace entrolab::recovery {

/// Indicators X*_a of a positive n-ary X with p(1) >= ... >= p(n) > 0.
/// A member a is a nonempty subset of {2..n}, stored as a mask where bit k
/// stands for atom k + 1 (bit 0, the atom 1, is never set).
struct IndicatorFamily {
  std::vector<Rational> pmf;
  std::vector<Subset> members;  // increasing mask order, 2^(n-1) - 1 entries

  int n() const { return static_cast<int>(pmf.size()); }
  /// The atom set in 1-based notation, e.g. "{2,3}".
  static std::string label(Subset member);
  /// (X, X*_a for every member) as one distribution; n <= 8.
  JointDistribution joint() const;
};

/// Requires a positive pmf sorted in nonincreasing order that sums to 1 and
/// n in [2, 16]; DomainError otherwise.
IndicatorFamily build_indicator_family(const std::vector<Rational>& pmf);

/// Sorts the atoms of a single-variable distribution by decreasing mass
/// (stable in alphabet order) and builds the family. Zero-probability
/// symbols of the alphabet are rejected.
IndicatorFamily build_indicator_family(const JointDistribution& dist);

/// Exact entropy oracle on the family: H(X*_a, a in `members`), plus X when
/// `with_x`. Members may be arbitrary atom masks here.
EntropyValue family_entropy(const std::vector<Rational>& pmf, const std::vector<Subset>& members,
                            bool with_x = false);

/// H(X*_a | X*_b, b in `given`).
Rational family_conditional(const std::vector<Rational>& pmf, Subset a, const std::vector<Subset>& given);

struct Violation {
  int property = 0;  // 1..5
  std::string detail;
};

struct PropertyReport {
  std::vector<Violation> violations;
  std::vector<std::string> ties;  // non-unique minimizers, not violations
  int checks = 0;                 // inequalities evaluated
};

PropertyReport check_distinct(const IndicatorFamily& family);     // P1
PropertyReport check_subset(const IndicatorFamily& family);       // P2
PropertyReport check_partition(const IndicatorFamily& family);    // P3
PropertyReport check_smallest_atom(const IndicatorFamily& family);  // P4
PropertyReport check_singleton(const IndicatorFamily& family);    // P5
/// All five, concatenated in order.
PropertyReport verify_properties(const IndicatorFamily& family);

/// Random positive pmf on n atoms sorted nonincreasing: integer weights in
/// [1, 1000], normalized exactly.
std::vector<Rational> random_sorted_pmf(std::mt19937_64& rng, int n);

}  // namespace entrolab::recovery
