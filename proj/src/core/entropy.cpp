#include "entrolab/entropy.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <utility>

#include "entrolab/errors.hpp"

namespace entrolab {
namespace {

using Factorization = std::vector<std::pair<Integer, int>>;

int precision_bits() {
  static const int bits = [] {
    const char* env = std::getenv("ENTROLAB_PRECISION_BITS");
    if (env == nullptr) return 64;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || v < 16) return 64;
    return static_cast<int>(std::min(v, 4096L));
  }();
  return bits;
}

constexpr int kGuardBits = 32;
constexpr unsigned long kTrialLimit = 65536;

Factorization factor_uncached(Integer x) {
  Factorization out;
  auto take = [&](unsigned long p) {
    int e = 0;
    while (mpz_divisible_ui_p(x.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
      ++e;
    }
    if (e > 0) out.emplace_back(Integer(p), e);
  };
  take(2);
  for (unsigned long p = 3; p < kTrialLimit && x > 1; p += 2) {
    if (Integer(p) * p > x) break;
    take(p);
  }
  if (x > 1) out.emplace_back(x, 1);  // prime, or a cofactor with no small factor
  return out;
}

std::mutex cache_mutex;

Factorization factor(const Integer& x) {
  static std::map<Integer, Factorization> cache;
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(x); it != cache.end()) return it->second;
  }
  Factorization f = factor_uncached(x);
  std::lock_guard lock(cache_mutex);
  if (cache.size() > 100000) cache.clear();
  cache.emplace(x, f);
  return f;
}

/// Fixed rational approximation of log2(symbol), symbol > 2.
Rational symbol_log2(const Integer& symbol) {
  static std::map<Integer, Rational> cache;
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(symbol); it != cache.end()) return it->second;
  }
  const long frac_bits = precision_bits() + kGuardBits;
  mpfr_t v;
  mpfr_init2(v, static_cast<mpfr_prec_t>(frac_bits + 64 + mpz_sizeinbase(symbol.get_mpz_t(), 2)));
  mpfr_set_z(v, symbol.get_mpz_t(), MPFR_RNDN);
  mpfr_log2(v, v, MPFR_RNDN);
  mpfr_mul_2si(v, v, frac_bits, MPFR_RNDN);
  Integer scaled;
  mpfr_get_z(scaled.get_mpz_t(), v, MPFR_RNDN);
  mpfr_clear(v);
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(frac_bits));
  Rational out(scaled, den);
  out.canonicalize();
  std::lock_guard lock(cache_mutex);
  cache.emplace(symbol, out);
  return out;
}

// log2 x = two_exponent + sum coef * log2(symbol)
void accumulate_log2(const Integer& x, const Rational& weight, Rational& two_part,
                     std::map<Integer, Rational>& symbols) {
  for (const auto& [p, e] : factor(x)) {
    if (p == 2) {
      two_part += weight * e;
    } else {
      symbols[p] += weight * e;
    }
  }
}

}  // namespace

Rational log2_constant(const Integer& x) {
  if (x <= 0) throw DomainError("log2 of a nonpositive integer");
  Rational two_part = 0;
  std::map<Integer, Rational> symbols;
  accumulate_log2(x, 1, two_part, symbols);
  Rational out = two_part;
  for (const auto& [s, c] : symbols) out += c * symbol_log2(s);
  return out;
}

EntropyValue entropy_of_pmf(std::span<const Rational> probabilities) {
  std::vector<Rational> ps;
  ps.reserve(probabilities.size());
  for (const auto& p : probabilities) {
    if (p < 0) throw DomainError("negative probability");
    if (p > 0) ps.push_back(p);
  }
  std::sort(ps.begin(), ps.end());
  Rational two_part = 0;
  std::map<Integer, Rational> symbols;
  for (std::size_t i = 0; i < ps.size();) {
    std::size_t j = i;
    while (j < ps.size() && ps[j] == ps[i]) ++j;
    const Rational mass = ps[i] * static_cast<long>(j - i);
    // -p log2 p = p (log2 den - log2 num)
    accumulate_log2(ps[i].get_den(), mass, two_part, symbols);
    accumulate_log2(ps[i].get_num(), -mass, two_part, symbols);
    i = j;
  }
  EntropyValue out{two_part, true};
  for (const auto& [s, c] : symbols) {
    if (c == 0) continue;
    out.exact = false;
    out.bits += c * symbol_log2(s);
  }
  return out;
}

EntropyValue entropy_of_detailed(const JointDistribution& dist, Subset subset) {
  if (subset == 0) throw DomainError("entropy of the empty set is not a coordinate");
  if (!is_subset_of(subset, full_subset(dist.arity()))) throw DomainError("subset outside the ground set");
  const std::vector<Rational> m = dist.marginal(subset);
  return entropy_of_pmf(m);
}

Rational entropy_of(const JointDistribution& dist, Subset subset) {
  return entropy_of_detailed(dist, subset).bits;
}

EntropyVector entropy_vector_of(const JointDistribution& dist) {
  const int n = dist.arity();
  std::vector<Rational> values(full_subset(n));
  bool exact = true;
  for (Subset s = 1; s <= full_subset(n); ++s) {
    EntropyValue v = entropy_of_detailed(dist, s);
    exact = exact && v.exact;
    values[coordinate(s)] = std::move(v.bits);
  }
  return EntropyVector(dist.ground(), std::move(values), exact);
}

EntropyVector::EntropyVector(GroundSet ground, std::vector<Rational> values, bool exact)
    : ground_(std::move(ground)), values_(std::move(values)), exact_(exact) {
  if (values_.size() != ground_.coordinate_count()) {
    throw DomainError("entropy vector needs " + std::to_string(ground_.coordinate_count()) + " values");
  }
}

EntropyVector EntropyVector::zeros(GroundSet ground) {
  std::vector<Rational> v(ground.coordinate_count());
  return EntropyVector(std::move(ground), std::move(v), true);
}

Rational EntropyVector::operator[](Subset s) const {
  if (s == 0) return 0;
  if (!is_subset_of(s, ground_.full())) throw DomainError("subset outside the ground set");
  return values_[coordinate(s)];
}

bool EntropyVector::operator==(const EntropyVector& other) const {
  return ground_ == other.ground_ && values_ == other.values_;
}

std::size_t elemental_count(int n) {
  if (n <= 0) throw DomainError("elemental inequalities need n >= 1");
  if (n == 1) return 1;
  const std::size_t pairs = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  return static_cast<std::size_t>(n) + pairs * (std::size_t{1} << (n - 2));
}

std::vector<LinearFunctional> elemental_inequalities(int n) {
  if (n <= 0) throw DomainError("elemental inequalities need n >= 1");
  if (n > kMaxGroundSize) throw DomainError("ground set too large");
  std::vector<LinearFunctional> out;
  out.reserve(elemental_count(n));
  const Subset all = full_subset(n);
  for (int i = 0; i < n; ++i) out.push_back(LinearFunctional::conditional(singleton(i), all & ~singleton(i)));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Subset rest = all & ~singleton(i) & ~singleton(j);
      // every K subset of rest, in increasing mask order
      for (Subset k = 0;; k = (k - rest) & rest) {
        out.push_back(LinearFunctional::mutual(singleton(i), singleton(j), k));
        if (k == rest) break;
      }
    }
  }
  return out;
}

PolymatroidCheck is_polymatroid(const EntropyVector& h) {
  PolymatroidCheck out;
  if (h.ground().size() == 0) return out;
  for (auto& f : elemental_inequalities(h.ground().size())) {
    if (f.evaluate(h) < 0) {
      out.ok = false;
      out.violated.push_back(std::move(f));
    }
  }
  return out;
}

Rational eval_conditional(const EntropyVector& h, Subset a, Subset b) { return h[a | b] - h[b]; }

Rational eval_mutual(const EntropyVector& h, Subset a, Subset b, Subset c) {
  return h[a | c] + h[b | c] - h[a | b | c] - h[c];
}

long double binary_entropy(long double q) {
  if (!(q >= 0.0L && q <= 1.0L)) throw DomainError("binary entropy needs q in [0,1]");
  if (q == 0.0L || q == 1.0L) return 0.0L;
  return -q * std::log2(q) - (1.0L - q) * std::log2(1.0L - q);
}

double binary_entropy(double q) { return static_cast<double>(binary_entropy(static_cast<long double>(q))); }

long double binary_entropy_inverse(long double delta) {
  if (!(delta >= 0.0L && delta <= 1.0L)) throw DomainError("binary entropy inverse needs delta in [0,1]");
  if (delta == 0.0L) return 0.0L;
  if (delta == 1.0L) return 0.5L;
  long double lo = 0.0L, hi = 0.5L;
  for (int it = 0; it < 200 && hi - lo > 1e-18L; ++it) {
    const long double mid = (lo + hi) / 2;
    if (binary_entropy(mid) < delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

double binary_entropy_inverse(double delta) {
  return static_cast<double>(binary_entropy_inverse(static_cast<long double>(delta)));
}

}  // namespace entrolab
