#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "entrolab/errors.hpp"
#include "entrolab/recovery/indicators.hpp"
#include "entrolab/recovery/multivar.hpp"
#include "entrolab/recovery/recover.hpp"
#include "support/oracles.hpp"

using namespace entrolab;
using namespace entrolab::recovery;

namespace {

std::vector<Rational> pmf(std::initializer_list<std::pair<long, long>> xs) {
  std::vector<Rational> out;
  for (auto [a, b] : xs) out.emplace_back(a, b);
  for (auto& q : out) q.canonicalize();
  return out;
}

std::vector<long double> as_long_double(const std::vector<Rational>& p) {
  std::vector<long double> out;
  for (const auto& x : p) out.push_back(to_long_double(x));
  return out;
}

std::vector<std::size_t> identity(std::size_t n) {
  std::vector<std::size_t> o(n);
  std::iota(o.begin(), o.end(), std::size_t{0});
  return o;
}

// Indicator values per atom, for building oracles by hand.
std::vector<std::vector<int>> member_values(const IndicatorFamily& f) {
  std::vector<std::vector<int>> out;
  for (Subset m : f.members) {
    std::vector<int> v;
    for (int k = 0; k < f.n(); ++k) v.push_back(contains(m, k) ? 1 : 0);
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("A" + std::to_string(i + 1));
  return out;
}

JointDistribution grid(const std::vector<std::vector<long>>& w) {
  long total = 0;
  for (const auto& r : w)
    for (long x : r) total += x;
  std::vector<Variable> vars{{"X1", {}}, {"X2", {}}};
  for (std::size_t i = 0; i < w.size(); ++i) vars[0].alphabet.push_back(std::to_string(i));
  for (std::size_t j = 0; j < w[0].size(); ++j) vars[1].alphabet.push_back(std::to_string(j));
  std::vector<Outcome> outs;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j < w[i].size(); ++j)
      outs.push_back({{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)}, Rational(w[i][j], total)});
  return JointDistribution(vars, outs);
}

}  // namespace

TEST_CASE("indicator family entropies") {
  auto f = build_indicator_family(pmf({{1, 2}, {1, 4}, {1, 4}}));
  REQUIRE(f.members.size() == 3);
  CHECK(IndicatorFamily::label(f.members[0]) == "{2}");
  CHECK(IndicatorFamily::label(f.members[2]) == "{2,3}");
  CHECK(family_entropy(f.pmf, {f.members[2]}).bits == 1);
  CHECK(to_double(family_entropy(f.pmf, {f.members[0]}).bits) ==
        doctest::Approx(oracle::plain_binary_entropy(0.25)).epsilon(1e-15));
  // every indicator is a function of X
  for (Subset m : f.members) CHECK(family_entropy(f.pmf, {m}, true).bits == family_entropy(f.pmf, {}, true).bits);
  CHECK(family_conditional(f.pmf, f.members[0], {f.members[1]}) ==
        family_entropy(f.pmf, {f.members[0], f.members[1]}).bits - family_entropy(f.pmf, {f.members[1]}).bits);
}

TEST_CASE("indicator families against a plain joint evaluation") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 4;
    auto f = build_indicator_family(random_sorted_pmf(rng, n));
    CHECK(f.members.size() == (std::size_t{1} << (n - 1)) - 1);
    auto j = f.joint();
    CHECK(j.arity() == static_cast<int>(f.members.size()) + 1);
    for (std::size_t a = 0; a < f.members.size(); ++a)
      for (std::size_t b = a; b < f.members.size(); ++b) {
        const Subset s = singleton(static_cast<int>(a) + 1) | singleton(static_cast<int>(b) + 1);
        CHECK(to_double(family_entropy(f.pmf, {f.members[a], f.members[b]}).bits) ==
              doctest::Approx(oracle::plain_joint_entropy(j, s)).epsilon(1e-12));
      }
  }
}

TEST_CASE("family preconditions") {
  CHECK_THROWS_AS(build_indicator_family(pmf({{1, 4}, {3, 4}})), DomainError);
  CHECK_THROWS_AS(build_indicator_family(pmf({{1, 1}, {0, 1}})), DomainError);
  CHECK_THROWS_AS(build_indicator_family(pmf({{1, 1}})), DomainError);
  CHECK_THROWS_AS(build_indicator_family(pmf({{1, 2}, {1, 4}})), DomainError);
  std::vector<Variable> v{{"X", {"a", "b", "c"}}};
  JointDistribution d(v, {{{0}, Rational(1, 4)}, {{1}, Rational(1, 2)}, {{2}, Rational(1, 4)}});
  auto f = build_indicator_family(d);
  CHECK(f.pmf == pmf({{1, 2}, {1, 4}, {1, 4}}));
}

TEST_CASE("properties hold on random pmfs") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 60; ++t) {
    auto f = build_indicator_family(random_sorted_pmf(rng, 3 + t % 3));
    auto rep = verify_properties(f);
    CHECK(rep.violations.empty());
    CHECK(rep.checks > 0);
  }
}

TEST_CASE("properties on special pmfs") {
  SUBCASE("n = 2") { CHECK(verify_properties(build_indicator_family(pmf({{2, 3}, {1, 3}}))).violations.empty()); }
  SUBCASE("uniform has ties but no violations") {
    auto rep = verify_properties(build_indicator_family(pmf({{1, 3}, {1, 3}, {1, 3}})));
    CHECK(rep.violations.empty());
    CHECK_FALSE(rep.ties.empty());
  }
  SUBCASE("distinct masses") {
    auto f = build_indicator_family(pmf({{5, 10}, {3, 10}, {2, 10}}));
    for (auto* check : {check_distinct, check_subset, check_partition, check_smallest_atom, check_singleton})
      CHECK(check(f).violations.empty());
  }
}

TEST_CASE("recovery of a known pmf") {
  auto f = build_indicator_family(pmf({{1, 2}, {1, 4}, {1, 4}}));
  std::mt19937_64 rng(1);
  auto r = recover_distribution(shuffled_family_oracle(f, rng));
  REQUIRE(r.probabilities.size() == 3);
  CHECK(static_cast<double>(r.probabilities[0]) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(static_cast<double>(r.probabilities[2]) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_FALSE(r.member[0].has_value());
  CHECK(r.member[1].has_value());
  CHECK(r.queries > 0);
}

TEST_CASE("recovery from a table") {
  Json t = {{"n", 2}, {"members", Json::array({{{"id", "A1"}, {"H", 1.0}}})}};
  auto r = recover_distribution(TableOracle(t));
  REQUIRE(r.probabilities.size() == 2);
  CHECK(static_cast<double>(r.probabilities[0]) == doctest::Approx(0.5));
  Json missing = {{"n", 3}, {"members", Json::array({{{"id", "A1"}, {"H", 0.8}}})}};
  CHECK_THROWS_AS(recover_distribution(TableOracle(missing)), NotIndicatorConsistent);
}

TEST_CASE("round trip on random pmfs with shuffled labels") {
  std::mt19937_64 rng(123);
  for (int t = 0; t < 120; ++t) {
    const int n = 2 + t % 4;
    auto p = random_sorted_pmf(rng, n);
    auto f = build_indicator_family(p);
    auto r = recover_distribution(shuffled_family_oracle(f, rng));
    const auto want = as_long_double(p);
    REQUIRE(r.probabilities.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i)
      CHECK(static_cast<double>(std::fabs(r.probabilities[i] - want[i])) <= 1e-9);
  }
}

TEST_CASE("recovery does not depend on the labelling") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    auto f = build_indicator_family(random_sorted_pmf(rng, 4));
    auto a = recover_distribution(family_oracle(f, identity(f.members.size())));
    auto b = recover_distribution(shuffled_family_oracle(f, rng));
    CHECK(check_permutation_equivalence(a.probabilities, b.probabilities, 1e-12L));
  }
}

TEST_CASE("uniform pmfs recover despite ties") {
  for (int n : {3, 4, 5}) {
    std::vector<Rational> p(static_cast<std::size_t>(n), Rational(1, n));
    auto r = recover_distribution(family_oracle(build_indicator_family(p), identity((1u << (n - 1)) - 1)));
    for (long double x : r.probabilities) CHECK(static_cast<double>(x) == doctest::Approx(1.0 / n).epsilon(1e-12));
  }
}

TEST_CASE("inconsistent oracles are rejected at the right gate") {
  auto f = build_indicator_family(pmf({{4, 10}, {3, 10}, {2, 10}, {1, 10}}));
  const auto p = as_long_double(f.pmf);
  auto values = member_values(f);
  SUBCASE("missing member") {
    values.pop_back();
    try {
      recover_distribution(ComputedOracle(p, values, labels(values.size())));
      FAIL("accepted");
    } catch (const NotIndicatorConsistent& e) {
      CHECK(e.step() == "support");
    }
  }
  SUBCASE("ternary member") {
    values[3] = {0, 1, 2, 2};
    try {
      recover_distribution(ComputedOracle(p, values, labels(values.size())));
      FAIL("accepted");
    } catch (const NotIndicatorConsistent& e) {
      CHECK(e.step() == "binarity");
    }
  }
  SUBCASE("duplicated member") {
    values[3] = values[2];
    CHECK_THROWS_AS(recover_distribution(ComputedOracle(p, values, labels(values.size()))), NotIndicatorConsistent);
  }
}

TEST_CASE("permutation equivalence") {
  CHECK(check_permutation_equivalence({0.5L, 0.3L, 0.2L}, {0.2L, 0.5L, 0.3L}));
  CHECK_FALSE(check_permutation_equivalence({0.5L, 0.3L, 0.2L}, {0.5L, 0.25L, 0.25L}));
  CHECK_FALSE(check_permutation_equivalence({0.5L, 0.5L}, {0.5L, 0.25L, 0.25L}));
}

TEST_CASE("multivariate recovery of a correlated 3x3 pmf") {
  auto d = grid({{6, 3, 1}, {2, 5, 4}, {1, 2, 8}});
  auto mf = build_multivar_indicators(d);
  CHECK(mf.dims == std::vector<int>{3, 3});
  CHECK(mf.family.members.size() == 255);
  std::mt19937_64 rng(3);
  std::vector<std::size_t> order = identity(mf.family.members.size());
  std::shuffle(order.begin(), order.end(), rng);
  auto rec = recover_multivar(multivar_oracle(mf, order), mf.dims);
  std::vector<long double> truth;
  for (const auto& o : d.outcomes()) truth.push_back(to_long_double(o.probability));
  auto aligned = align_axes(rec.joint, truth, mf.dims);
  REQUIRE(aligned.size() == 1);
  // check the certificate cell by cell
  const auto& pi = aligned[0];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const long double q = rec.joint[static_cast<std::size_t>(3 * a + b)];
      const long double p = truth[static_cast<std::size_t>(3 * pi[0][static_cast<std::size_t>(a)] + pi[1][static_cast<std::size_t>(b)])];
      CHECK(static_cast<double>(std::fabs(q - p)) <= 1e-9);
    }
}

TEST_CASE("multivariate recovery of a product pmf with tied atoms") {
  auto d = grid({{4, 2, 2}, {2, 1, 1}, {2, 1, 1}});
  auto mf = build_multivar_indicators(d);
  auto rec = recover_multivar(multivar_oracle(mf, identity(mf.family.members.size())), mf.dims);
  std::vector<long double> truth;
  for (const auto& o : d.outcomes()) truth.push_back(to_long_double(o.probability));
  CHECK_FALSE(align_axes(rec.joint, truth, mf.dims).empty());
}

TEST_CASE("multivariate preconditions") {
  CHECK_THROWS_AS(build_multivar_indicators(grid({{1, 1}, {1, 1}})), PreconditionError);
  CHECK_THROWS_AS(build_multivar_indicators(grid({{1, 1, 0}, {1, 1, 1}, {1, 1, 1}})), DomainError);
}
