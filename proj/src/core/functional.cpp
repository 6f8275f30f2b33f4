#include "entrolab/functional.hpp"

#include <algorithm>
#include <map>

#include "entrolab/entropy.hpp"

namespace entrolab {
namespace {

std::vector<Term> normalize(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.subset < b.subset; });
  std::vector<Term> out;
  for (auto& t : terms) {
    if (t.subset == 0) continue;
    t.coeff.canonicalize();
    if (!out.empty() && out.back().subset == t.subset) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
  return out;
}

}  // namespace

LinearFunctional::LinearFunctional(std::vector<Term> terms) : terms_(normalize(std::move(terms))) {}

LinearFunctional LinearFunctional::entropy(Subset a) { return LinearFunctional({{a, 1}}); }

LinearFunctional LinearFunctional::conditional(Subset a, Subset b) {
  return LinearFunctional({{a | b, 1}, {b, -1}});
}

LinearFunctional LinearFunctional::mutual(Subset a, Subset b, Subset c) {
  return LinearFunctional({{a | c, 1}, {b | c, 1}, {a | b | c, -1}, {c, -1}});
}

Subset LinearFunctional::support() const {
  Subset s = 0;
  for (const auto& t : terms_) s |= t.subset;
  return s;
}

Rational LinearFunctional::coefficient(Subset s) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), s,
                             [](const Term& t, Subset v) { return t.subset < v; });
  return it != terms_.end() && it->subset == s ? it->coeff : Rational(0);
}

Rational LinearFunctional::evaluate(const EntropyVector& h) const {
  Rational sum = 0;
  for (const auto& t : terms_) sum += t.coeff * h[t.subset];
  return sum;
}

Rational LinearFunctional::evaluate(std::span<const Rational> coords) const {
  Rational sum = 0;
  for (const auto& t : terms_) sum += t.coeff * coords[coordinate(t.subset)];
  return sum;
}

LinearFunctional& LinearFunctional::operator+=(const LinearFunctional& other) {
  std::vector<Term> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  terms_ = normalize(std::move(all));
  return *this;
}

LinearFunctional& LinearFunctional::operator-=(const LinearFunctional& other) { return *this += -other; }

LinearFunctional& LinearFunctional::operator*=(const Rational& scale) {
  if (scale == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= scale;
  return *this;
}

LinearFunctional LinearFunctional::operator-() const {
  LinearFunctional out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

std::string LinearFunctional::to_string(const GroundSet& ground, const std::string& sep) const {
  auto names = [&](Subset s) { return ground.format(s, sep); };
  auto coeff_of = [&](Subset s) { return coefficient(s); };
  if (terms_.empty()) return "0";
  if (terms_.size() == 1 && terms_[0].coeff == 1) return "h(" + names(terms_[0].subset) + ")";
  if (terms_.size() == 2) {
    const Term& small = terms_[0].coeff < 0 ? terms_[0] : terms_[1];
    const Term& big = terms_[0].coeff < 0 ? terms_[1] : terms_[0];
    if (big.coeff == 1 && small.coeff == -1 && is_subset_of(small.subset, big.subset) && small.subset != big.subset) {
      return "h(" + names(big.subset & ~small.subset) + "|" + names(small.subset) + ")";
    }
  }
  // I(A;B|C): +h(P) +h(Q) -h(P u Q) [-h(P n Q)]
  std::vector<Subset> plus, minus;
  bool unit = true;
  for (const auto& t : terms_) {
    if (t.coeff == 1) {
      plus.push_back(t.subset);
    } else if (t.coeff == -1) {
      minus.push_back(t.subset);
    } else {
      unit = false;
    }
  }
  if (unit && plus.size() == 2) {
    const Subset p = plus[0], q = plus[1], c = p & q;
    const bool shape = (c == 0 && minus.size() == 1 && minus[0] == (p | q)) ||
                       (c != 0 && minus.size() == 2 && coeff_of(p | q) == -1 && coeff_of(c) == -1);
    if (shape && (p & ~c) != 0 && (q & ~c) != 0) {
      std::string out = "I(" + names(p & ~c) + ";" + names(q & ~c);
      if (c != 0) out += "|" + names(c);
      return out + ")";
    }
  }
  std::string out;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    if (out.empty()) {
      if (c < 0) {
        out += "-";
        c = -c;
      }
    } else {
      out += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    if (c != 1) out += format_rational(c) + "*";
    out += "h(" + names(t.subset) + ")";
  }
  return out;
}

}  // namespace entrolab
