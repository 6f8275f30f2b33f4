#include <doctest.h>

#include <random>
#include <set>

#include "entrolab/entropy.hpp"
#include "entrolab/errors.hpp"
#include "entrolab/io.hpp"
#include "support/oracles.hpp"

using namespace entrolab;

TEST_CASE("subset helpers") {
  CHECK(full_subset(3) == 7u);
  CHECK(cardinality(0b1011) == 3);
  CHECK(members(0b1010) == std::vector<int>{1, 3});
  CHECK(is_subset_of(0b0010, 0b0110));
  CHECK_FALSE(is_subset_of(0b1000, 0b0110));
  CHECK(coordinate(1) == 0);
}

TEST_CASE("ground set rejects duplicates and formats members") {
  CHECK_THROWS_AS(GroundSet({"A", "A"}), DomainError);
  GroundSet g({"Y1", "Y2", "U1"});
  CHECK(g.subset_of({"U1", "Y1"}) == 0b101u);
  CHECK(g.format(0b101) == "Y1,U1");
  CHECK(g.format(0b101, " ") == "Y1 U1");
  CHECK_THROWS_AS(g.subset_of({"Z"}), DomainError);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("1.5e-3") == Rational(3, 2000));
  CHECK(format_rational(Rational(6, 4)) == "3/2");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("distribution construction") {
  std::vector<Variable> v{{"X", {"0", "1"}}};
  SUBCASE("probabilities must sum to one") {
    CHECK_THROWS_AS(JointDistribution(v, {{{0}, Rational(1, 2)}}), DomainError);
  }
  SUBCASE("duplicate outcomes merge and zero outcomes vanish") {
    JointDistribution d(v, {{{0}, Rational(1, 4)}, {{0}, Rational(1, 4)}, {{1}, Rational(1, 2)}, {{1}, Rational(0)}});
    CHECK(d.outcomes().size() == 2);
  }
  SUBCASE("symbols outside the alphabet") {
    CHECK_THROWS_AS(JointDistribution(v, {{{2}, Rational(1)}}), DomainError);
  }
}

TEST_CASE("dyadic entropies are exact") {
  std::vector<Rational> uniform4(4, Rational(1, 4));
  auto e = entropy_of_pmf(uniform4);
  CHECK(e.exact);
  CHECK(e.bits == 2);
  std::vector<Rational> p{Rational(1, 2), Rational(1, 4), Rational(1, 4)};
  CHECK(entropy_of_pmf(p).bits == Rational(3, 2));
  std::vector<Rational> third(3, Rational(1, 3));
  CHECK_FALSE(entropy_of_pmf(third).exact);
}

TEST_CASE("entropy agrees with a plain floating point evaluation") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> nv(1, 3), sz(2, 4);
    std::vector<int> sizes;
    for (int i = nv(rng); i > 0; --i) sizes.push_back(sz(rng));
    auto d = oracle::random_distribution(rng, sizes, trial % 2 == 1);
    for (Subset s = 1; s <= full_subset(d.arity()); ++s) {
      CHECK(to_double(entropy_of(d, s)) == doctest::Approx(oracle::plain_joint_entropy(d, s)).epsilon(1e-12));
    }
  }
}

TEST_CASE("functional dependence and independence hold exactly for non-dyadic pmfs") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto base = oracle::random_distribution(rng, {3, 5});
    // third variable = first symbol mod 2, a function of X1
    auto d = base.with_derived({{"F", {"0", "1"}}}, [](const Outcome& o) {
      return std::vector<std::uint32_t>{o.symbols[0] % 2};
    });
    CHECK(entropy_of(d, 0b101) == entropy_of(d, 0b001));
    CHECK(entropy_of(d, 0b111) == entropy_of(d, 0b011));
  }
  // product of two marginals: H(X1,X2) = H(X1) + H(X2) exactly
  std::vector<Variable> vars{{"A", {"0", "1", "2"}}, {"B", {"0", "1"}}};
  std::vector<Outcome> outs;
  const Rational pa[3] = {Rational(1, 3), Rational(1, 6), Rational(1, 2)};
  const Rational pb[2] = {Rational(2, 7), Rational(5, 7)};
  for (std::uint32_t a = 0; a < 3; ++a)
    for (std::uint32_t b = 0; b < 2; ++b) outs.push_back({{a, b}, pa[a] * pb[b]});
  JointDistribution prod(vars, outs);
  CHECK(entropy_of(prod, 0b11) == entropy_of(prod, 0b01) + entropy_of(prod, 0b10));
}

TEST_CASE("elemental counts match the closed form") {
  for (int n = 1; n <= 10; ++n) {
    CHECK(elemental_inequalities(n).size() == oracle::closed_form_elemental_count(n));
    CHECK(elemental_count(n) == oracle::closed_form_elemental_count(n));
  }
}

TEST_CASE("elemental rows are distinct") {
  for (int n = 2; n <= 5; ++n) {
    auto rows = elemental_inequalities(n);
    std::set<std::vector<std::pair<Subset, std::string>>> seen;
    for (const auto& r : rows) {
      std::vector<std::pair<Subset, std::string>> key;
      for (const auto& t : r.terms()) key.emplace_back(t.subset, t.coeff.get_str());
      CHECK(seen.insert(key).second);
    }
  }
}

TEST_CASE("entropy vectors of random distributions are polymatroids") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<int> nv(2, 4), sz(2, 3);
    std::vector<int> sizes;
    for (int i = nv(rng); i > 0; --i) sizes.push_back(sz(rng));
    auto h = entropy_vector_of(oracle::random_distribution(rng, sizes, true));
    CHECK(is_polymatroid(h).ok);
  }
  // h(1) = 2 but h(1,2) = 1 breaks monotonicity
  EntropyVector bad(GroundSet({"A", "B"}), {2, 1, 1}, true);
  CHECK_FALSE(is_polymatroid(bad).ok);
}

TEST_CASE("binary entropy and its inverse") {
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.1) == doctest::Approx(oracle::plain_binary_entropy(0.1)).epsilon(1e-14));
  for (double q : {0.01, 0.1, 0.25, 0.4, 0.5}) {
    CHECK(binary_entropy_inverse(binary_entropy(q)) == doctest::Approx(q).epsilon(1e-12));
  }
  CHECK_THROWS_AS(binary_entropy_inverse(1.5), DomainError);
  CHECK_THROWS_AS(binary_entropy(-0.1), DomainError);
}

TEST_CASE("functional rendering") {
  GroundSet g({"A", "B", "C"});
  CHECK(LinearFunctional::entropy(0b011).to_string(g) == "h(A,B)");
  CHECK(LinearFunctional::conditional(0b001, 0b110).to_string(g) == "h(A|B,C)");
  CHECK(LinearFunctional::mutual(0b001, 0b010, 0b100).to_string(g) == "I(A;B|C)");
  CHECK(LinearFunctional::mutual(0b001, 0b010).to_string(g) == "I(A;B)");
  CHECK((LinearFunctional::entropy(1) - LinearFunctional::entropy(1)).empty());
}

TEST_CASE("json round trips") {
  std::mt19937_64 rng(3);
  auto d = oracle::random_distribution(rng, {2, 3});
  auto back = distribution_from_json(distribution_to_json(d));
  CHECK(entropy_vector_of(back) == entropy_vector_of(d));
  auto h = entropy_vector_of(d);
  auto h2 = entropy_vector_from_json(entropy_vector_to_json(h));
  CHECK(h2.ground() == h.ground());
  CHECK(std::equal(h2.values().begin(), h2.values().end(), h.values().begin(), h.values().end()));
  Json missing = {{"variables", {"A", "B"}}, {"entropies", {{"A", "1"}}}};
  CHECK_THROWS_AS(entropy_vector_from_json(missing), ParseError);
}
