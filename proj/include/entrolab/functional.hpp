#pragma once

#include <span>
#include <string>
#include <vector>

#include "entrolab/ground_set.hpp"
#include "entrolab/rational.hpp"
#include "entrolab/subset.hpp"

namespace entrolab {

class EntropyVector;

struct Term {
  Subset subset;
  Rational coeff;
  bool operator==(const Term& other) const = default;
};

/// Linear combination of joint entropies, sum_k c_k h(S_k). Terms are kept
/// sorted by subset with no zero coefficients; h(empty) = 0 terms vanish.
class LinearFunctional {
 public:
  LinearFunctional() = default;
  explicit LinearFunctional(std::vector<Term> terms);

  /// h(A)
  static LinearFunctional entropy(Subset a);
  /// h(A|B) = h(A u B) - h(B)
  static LinearFunctional conditional(Subset a, Subset b);
  /// I(A;B|C) = h(A u C) + h(B u C) - h(A u B u C) - h(C)
  static LinearFunctional mutual(Subset a, Subset b, Subset c = 0);

  std::span<const Term> terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  Subset support() const;

  Rational coefficient(Subset s) const;
  Rational evaluate(const EntropyVector& h) const;
  /// Evaluates against a dense coordinate vector indexed by coordinate().
  Rational evaluate(std::span<const Rational> coords) const;

  LinearFunctional& operator+=(const LinearFunctional& other);
  LinearFunctional& operator-=(const LinearFunctional& other);
  LinearFunctional& operator*=(const Rational& scale);
  friend LinearFunctional operator+(LinearFunctional a, const LinearFunctional& b) { return a += b; }
  friend LinearFunctional operator-(LinearFunctional a, const LinearFunctional& b) { return a -= b; }
  friend LinearFunctional operator*(const Rational& s, LinearFunctional a) { return a *= s; }
  LinearFunctional operator-() const;

  bool operator==(const LinearFunctional& other) const = default;

  /// Renders with entropy notation, e.g. "h(U1|Z0,Z1)" or "I(Y1;Y2)" when the
  /// functional has one of those shapes; otherwise a signed sum of h terms.
  std::string to_string(const GroundSet& ground, const std::string& sep = ",") const;

 private:
  std::vector<Term> terms_;
};

}  // namespace entrolab
