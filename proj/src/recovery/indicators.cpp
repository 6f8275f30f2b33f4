#include "entrolab/recovery/indicators.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "entrolab/errors.hpp"

namespace entrolab::recovery {
namespace {

// exact values that should coincide always do; this only absorbs the
// rounding of distinct logarithm expansions
const Rational& slack() {
  static const Rational s(Integer(1), Integer(1) << 50);
  return s;
}

bool positive(const Rational& v) { return v > slack(); }

std::string describe(const char* what, const std::vector<Subset>& sets) {
  std::string out = what;
  for (Subset s : sets) out += " " + IndicatorFamily::label(s);
  return out;
}

}  // namespace

std::string IndicatorFamily::label(Subset member) {
  std::string out = "{";
  for (int k : entrolab::members(member)) out += (out.size() > 1 ? "," : "") + std::to_string(k + 1);
  return out + "}";
}

JointDistribution IndicatorFamily::joint() const {
  if (n() > 5) throw DomainError("explicit joint of the family limited to n <= 5");
  std::vector<Variable> vars;
  Variable x{"X", {}};
  for (int k = 1; k <= n(); ++k) x.alphabet.push_back(std::to_string(k));
  vars.push_back(x);
  std::vector<Variable> extra;
  for (Subset a : members) {
    std::string name = "A";
    for (int k : entrolab::members(a)) name += std::to_string(k + 1);
    extra.push_back({name, {"0", "1"}});
  }
  std::vector<Outcome> outs;
  for (int k = 0; k < n(); ++k) outs.push_back({{static_cast<std::uint32_t>(k)}, pmf[static_cast<std::size_t>(k)]});
  return JointDistribution(vars, outs).with_derived(extra, [&](const Outcome& o) {
    std::vector<std::uint32_t> bits;
    for (Subset a : members) bits.push_back(contains(a, static_cast<int>(o.symbols[0])) ? 1u : 0u);
    return bits;
  });
}

IndicatorFamily build_indicator_family(const std::vector<Rational>& pmf) {
  const int n = static_cast<int>(pmf.size());
  if (n < 2 || n > 16) throw DomainError("indicator families need 2 <= n <= 16");
  Rational total = 0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    if (pmf[k] <= 0) throw DomainError("atom " + std::to_string(k + 1) + " has no positive probability");
    if (k > 0 && pmf[k] > pmf[k - 1]) throw DomainError("atoms must be sorted by nonincreasing probability");
    total += pmf[k];
  }
  if (total != 1) throw DomainError("probabilities sum to " + format_rational(total));
  IndicatorFamily f;
  f.pmf = pmf;
  for (Subset m = 2; m <= full_subset(n); m += 2) f.members.push_back(m);
  return f;
}

IndicatorFamily build_indicator_family(const JointDistribution& dist) {
  if (dist.arity() != 1) throw DomainError("expected a single variable");
  std::vector<Rational> mass(dist.variables()[0].alphabet.size(), 0);
  for (const auto& o : dist.outcomes()) mass[o.symbols[0]] += o.probability;
  for (std::size_t k = 0; k < mass.size(); ++k) {
    if (mass[k] == 0) throw DomainError("symbol '" + dist.variables()[0].alphabet[k] + "' has zero probability");
  }
  std::stable_sort(mass.begin(), mass.end(), [](const Rational& a, const Rational& b) { return a > b; });
  return build_indicator_family(mass);
}

EntropyValue family_entropy(const std::vector<Rational>& pmf, const std::vector<Subset>& members, bool with_x) {
  if (with_x) return entropy_of_pmf(pmf);
  std::map<std::vector<bool>, Rational> cells;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    std::vector<bool> sig;
    sig.reserve(members.size());
    for (Subset a : members) sig.push_back(contains(a, static_cast<int>(k)));
    cells[sig] += pmf[k];
  }
  std::vector<Rational> masses;
  for (auto& [sig, m] : cells) masses.push_back(m);
  return entropy_of_pmf(masses);
}

Rational family_conditional(const std::vector<Rational>& pmf, Subset a, const std::vector<Subset>& given) {
  std::vector<Subset> all = given;
  all.push_back(a);
  return family_entropy(pmf, all).bits - family_entropy(pmf, given).bits;
}

PropertyReport check_distinct(const IndicatorFamily& f) {
  PropertyReport r;
  for (Subset a : f.members) {
    for (Subset b : f.members) {
      if (a == b) continue;
      ++r.checks;
      if (!positive(family_conditional(f.pmf, a, {b}))) {
        r.violations.push_back({1, "H(X*" + IndicatorFamily::label(a) + " | X*" + IndicatorFamily::label(b) + ") = 0"});
      }
    }
  }
  return r;
}

PropertyReport check_subset(const IndicatorFamily& f) {
  PropertyReport r;
  for (Subset a : f.members) {
    for (Subset b : f.members) {
      std::vector<Subset> given;
      for (int k : members(b)) given.push_back(singleton(k));
      ++r.checks;
      const bool pos = positive(family_conditional(f.pmf, a, given));
      if (pos != ((a & ~b) != 0)) {
        r.violations.push_back({2, "H(X*" + IndicatorFamily::label(a) + " | singletons of " + IndicatorFamily::label(b) +
                                       ") is " + (pos ? "positive" : "zero")});
      }
    }
  }
  return r;
}

PropertyReport check_partition(const IndicatorFamily& f) {
  PropertyReport r;
  for (Subset a : f.members) {
    // a relabelled copy of the chain X*_2, ..., X*_{n-1}: singletons of
    // every atom in {2..n} except the smallest one in a
    const int keep = members(a).front();
    std::vector<Subset> given{a};
    std::vector<Subset> chain;
    for (int k = 1; k < f.n(); ++k) {
      if (k != keep) chain.push_back(singleton(k));
    }
    for (Subset b : chain) {
      ++r.checks;
      if (!positive(family_conditional(f.pmf, b, given))) {
        r.violations.push_back({3, describe("chain from", {a}) + describe(" stalls at", {b})});
        break;
      }
      given.push_back(b);
    }
  }
  return r;
}

PropertyReport check_smallest_atom(const IndicatorFamily& f) {
  PropertyReport r;
  const Subset last = singleton(f.n() - 1);
  const Rational target = family_entropy(f.pmf, {last}).bits;
  std::vector<Subset> minimizers;
  for (Subset a : f.members) {
    ++r.checks;
    const Rational h = family_entropy(f.pmf, {a}).bits;
    if (h < target - slack()) {
      r.violations.push_back({4, "H(X*" + IndicatorFamily::label(a) + ") below H(X*" + IndicatorFamily::label(last) + ")"});
    }
    if (h <= target + slack()) minimizers.push_back(a);
  }
  if (minimizers.size() > 1) r.ties.push_back(describe("minimum entropy attained by", minimizers));
  return r;
}

PropertyReport check_singleton(const IndicatorFamily& f) {
  PropertyReport r;
  const int n = f.n();
  for (int i = 2; i <= n - 1; ++i) {
    std::vector<Subset> rest;
    for (int k = i + 1; k <= n; ++k) rest.push_back(singleton(k - 1));
    const Subset si = singleton(i - 1);
    const Rational ci = family_conditional(f.pmf, si, rest);
    const Rational hi = family_entropy(f.pmf, {si}).bits;
    ++r.checks;
    if (!positive(ci)) r.violations.push_back({5, "H(X*{" + std::to_string(i) + "} | later singletons) = 0"});
    for (Subset a : f.members) {
      const Rational ca = family_conditional(f.pmf, a, rest);
      if (!positive(ca)) continue;
      r.checks += 2;
      if (ci > ca + slack()) {
        r.violations.push_back({5, "conditional of X*{" + std::to_string(i) + "} exceeds that of X*" + IndicatorFamily::label(a)});
      }
      if (hi > family_entropy(f.pmf, {a}).bits + slack()) {
        r.violations.push_back({5, "H(X*{" + std::to_string(i) + "}) exceeds H(X*" + IndicatorFamily::label(a) + ")"});
      }
    }
  }
  return r;
}

PropertyReport verify_properties(const IndicatorFamily& f) {
  PropertyReport all;
  for (auto check : {check_distinct, check_subset, check_partition, check_smallest_atom, check_singleton}) {
    PropertyReport r = check(f);
    all.checks += r.checks;
    all.violations.insert(all.violations.end(), r.violations.begin(), r.violations.end());
    all.ties.insert(all.ties.end(), r.ties.begin(), r.ties.end());
  }
  return all;
}

std::vector<Rational> random_sorted_pmf(std::mt19937_64& rng, int n) {
  if (n < 1) throw DomainError("need at least one atom");
  std::uniform_int_distribution<int> weight(1, 1000);
  std::vector<long> w(static_cast<std::size_t>(n));
  for (auto& x : w) x = weight(rng);
  std::sort(w.begin(), w.end(), std::greater<>());
  const long total = std::accumulate(w.begin(), w.end(), 0L);
  std::vector<Rational> p;
  for (long x : w) {
    Rational q{Integer(x), Integer(total)};
    q.canonicalize();
    p.push_back(q);
  }
  return p;
}

}  // namespace entrolab::recovery
