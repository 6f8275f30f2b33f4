#pragma once

#include <span>
#include <vector>

#include "entrolab/distribution.hpp"
#include "entrolab/functional.hpp"

namespace entrolab {

/// Joint entropies of every nonempty subset of a ground set, in bits.
/// h(empty) = 0 is implicit and never stored.
class EntropyVector {
 public:
  EntropyVector() = default;
  /// `values` holds 2^n - 1 entries indexed by coordinate(subset).
  EntropyVector(GroundSet ground, std::vector<Rational> values, bool exact);

  static EntropyVector zeros(GroundSet ground);

  const GroundSet& ground() const { return ground_; }
  /// True when every coordinate is the exact entropy (no rounded logarithms).
  bool exact() const { return exact_; }
  Rational operator[](Subset s) const;
  std::span<const Rational> values() const { return values_; }

  bool operator==(const EntropyVector& other) const;

 private:
  GroundSet ground_;
  std::vector<Rational> values_;
  bool exact_ = true;
};

struct EntropyValue {
  Rational bits;
  bool exact = true;
};

/// Shannon entropy of a pmf given by its atom probabilities.
///
/// Every log2 is expanded over the prime factors of the probability's
/// numerator and denominator, and each log2(prime) is replaced by one fixed
/// rational approximation (ENTROLAB_PRECISION_BITS fractional bits plus
/// guard bits, default 64 + 32). Values that are equal or linearly related
/// for the true entropies therefore stay exactly equal or related, so
/// functional dependence and independence survive as exact identities.
/// Dyadic pmfs produce exact results.
EntropyValue entropy_of_pmf(std::span<const Rational> probabilities);

/// The fixed rational stand-in for log2(x) used by entropy_of_pmf.
Rational log2_constant(const Integer& x);

/// H(X_S) for a nonempty subset; throws DomainError on the empty set.
Rational entropy_of(const JointDistribution& dist, Subset subset);
EntropyValue entropy_of_detailed(const JointDistribution& dist, Subset subset);

EntropyVector entropy_vector_of(const JointDistribution& dist);

/// Elemental Shannon inequalities on n variables, each required >= 0:
/// h(N) - h(N - i) for every i, then I(i;j|K) for i < j and K a subset of
/// the remaining variables. n + C(n,2) 2^(n-2) rows (1 row for n = 1).
std::vector<LinearFunctional> elemental_inequalities(int n);
std::size_t elemental_count(int n);

struct PolymatroidCheck {
  bool ok = true;
  std::vector<LinearFunctional> violated;
};
PolymatroidCheck is_polymatroid(const EntropyVector& h);

/// h(A|B)
Rational eval_conditional(const EntropyVector& h, Subset a, Subset b);
/// I(A;B|C)
Rational eval_mutual(const EntropyVector& h, Subset a, Subset b, Subset c = 0);

/// h_b(q) = -q log2 q - (1-q) log2 (1-q), h_b(0) = h_b(1) = 0.
double binary_entropy(double q);
long double binary_entropy(long double q);
/// The unique q in [0, 1/2] with h_b(q) = delta, by bisection.
double binary_entropy_inverse(double delta);
long double binary_entropy_inverse(long double delta);

}  // namespace entrolab
