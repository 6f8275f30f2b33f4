#include <doctest.h>

#include <deque>
#include <filesystem>
#include <random>

#include "entrolab/errors.hpp"
#include "entrolab/lp/dump.hpp"
#include "entrolab/network/bounds.hpp"
#include "entrolab/network/example1.hpp"
#include "support/networks.hpp"
#include "support/oracles.hpp"

using namespace entrolab;
using namespace entrolab::network;

namespace {

CapacityTuple uniform_caps(const NetworkProblem& p, const Rational& c) {
  CapacityTuple t;
  for (const auto& e : p.edges)
    if (!e.infinite && !e.capacity) t[e.id] = c;
  return t;
}

CapacityTuple scaled(CapacityTuple t, const Rational& s) {
  for (auto& [id, c] : t)
    if (c) *c *= s;
  return t;
}

// Max flow by shortest augmenting paths over exact rationals.
Rational max_flow(const NetworkProblem& p, const CapacityTuple& c, const std::string& from, const std::string& to) {
  const std::size_t n = p.nodes.size();
  auto index = [&](const std::string& u) {
    return static_cast<std::size_t>(std::find(p.nodes.begin(), p.nodes.end(), u) - p.nodes.begin());
  };
  std::vector<std::vector<Rational>> cap(n, std::vector<Rational>(n, 0));
  Rational big = 1;
  for (const auto& [id, v] : c)
    if (v) big += *v;
  for (std::size_t e = 0; e < p.edges.size(); ++e) {
    auto v = capacity_of(p, c, e);
    cap[index(p.edges[e].tail)][index(p.edges[e].head)] += v ? *v : big;
  }
  const std::size_t s = index(from), t = index(to);
  Rational flow = 0;
  while (true) {
    std::vector<int> parent(n, -1);
    parent[s] = static_cast<int>(s);
    std::deque<std::size_t> q{s};
    while (!q.empty() && parent[t] < 0) {
      auto u = q.front();
      q.pop_front();
      for (std::size_t v = 0; v < n; ++v)
        if (parent[v] < 0 && cap[u][v] > 0) {
          parent[v] = static_cast<int>(u);
          q.push_back(v);
        }
    }
    if (parent[t] < 0) return flow;
    Rational push = big;
    for (auto v = t; v != s; v = static_cast<std::size_t>(parent[v])) push = std::min(push, cap[static_cast<std::size_t>(parent[v])][v]);
    for (auto v = t; v != s; v = static_cast<std::size_t>(parent[v])) {
      cap[static_cast<std::size_t>(parent[v])][v] -= push;
      cap[v][static_cast<std::size_t>(parent[v])] += push;
    }
    flow += push;
  }
}

// Random single-source multicast network on a DAG over nodes 0..k-1.
NetworkProblem random_multicast(std::mt19937_64& rng) {
  NetworkProblem p;
  const int k = 3 + static_cast<int>(rng() % 3);
  for (int i = 0; i < k; ++i) p.nodes.push_back("n" + std::to_string(i));
  int id = 0;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (rng() % 3 != 0) p.edges.push_back(fixtures::free_edge("e" + std::to_string(id++), p.nodes[a], p.nodes[b]));
  if (p.edges.empty()) p.edges.push_back(fixtures::free_edge("e0", p.nodes[0], p.nodes[1]));
  Source y{"Y", "n0", {p.nodes.back()}};
  if (k > 3 && rng() % 2) y.demanded_at.push_back(p.nodes[static_cast<std::size_t>(k - 2)]);
  p.sources = {y};
  const int alphabet = 2 + static_cast<int>(rng() % 3);
  std::vector<std::string> symbols;
  std::vector<Outcome> outs;
  for (int i = 0; i < alphabet; ++i) {
    symbols.push_back(std::to_string(i));
    outs.push_back({{static_cast<std::uint32_t>(i)}, Rational(1, alphabet)});
  }
  p.model.distribution = JointDistribution({{"Y", symbols}}, outs);
  return p;
}

}  // namespace

TEST_CASE("example 1 source entropies") {
  auto p = example1_problem();
  auto h = p.source_entropy_vector();
  CHECK(h.exact());
  const std::vector<Rational> expected{2, 2, 3, 2, 3, 3, 3};
  CHECK(std::equal(h.values().begin(), h.values().end(), expected.begin(), expected.end()));
}

TEST_CASE("example 1 base bound accepts (1,1,1,1) and the explicit witness satisfies every row") {
  auto p = example1_problem();
  auto caps = parse_capacities(p, "1,1,1,1");
  auto res = check_lp_bound(p, caps);
  CHECK(res.verdict == Verdict::MaybeAchievable);
  CHECK(lp::verify_certificate(res.system, res.lp));
  fixtures::CodedInstance ex{p, example1_witness_distribution()};
  CHECK(lp::verify_witness(res.system, fixtures::witness_vector(ex, res.system.ground())));
}

TEST_CASE("example 1 improved bounds") {
  auto p = example1_problem();
  auto caps = parse_capacities(p, "1,1,1,1");
  SUBCASE("selected rows") {
    auto res = check_improved_bound(p, caps, example1_aux_selected());
    CHECK(res.verdict == Verdict::NotAchievable);
    CHECK(lp::verify_farkas(res.system, res.lp.certificate));
  }
  SUBCASE("functional Z0 Z1 Z2") {
    auto res = check_improved_bound(p, caps, example1_aux_functional());
    CHECK(res.verdict == Verdict::NotAchievable);
    CHECK(lp::verify_certificate(res.system, res.lp));
  }
  SUBCASE("Z0 alone") {
    auto res = check_improved_bound(p, caps, example1_aux_z0());
    CHECK(res.verdict == Verdict::NotAchievable);
    CHECK(lp::verify_certificate(res.system, res.lp));
  }
  SUBCASE("larger capacities are accepted again") {
    auto res = check_improved_bound(p, parse_capacities(p, "2,2,2,2"), example1_aux_selected());
    CHECK(res.verdict == Verdict::MaybeAchievable);
    CHECK(lp::verify_certificate(res.system, res.lp));
  }
}

TEST_CASE("an empty auxiliary spec reproduces the base rows") {
  for (const auto& inst : fixtures::regression_suite()) {
    if (inst.problem.name == "example1") continue;
    auto caps = fixtures::witness_capacities(inst);
    CHECK(lp::dump_string(build_lp_constraints(inst.problem, caps)) ==
          lp::dump_string(build_improved_constraints(inst.problem, caps, AuxSpec{})));
  }
}

TEST_CASE("presolve on and off agree on the regression networks") {
  for (const auto& inst : fixtures::regression_suite()) {
    // without presolve the dense exact simplex is only practical on small grounds
    if (inst.witness.arity() > 6) continue;
    CAPTURE(inst.problem.name);
    for (const Rational& s : {Rational(1), Rational(1, 2)}) {
      auto caps = scaled(fixtures::witness_capacities(inst), s);
      auto on = check_lp_bound(inst.problem, caps, {true});
      auto off = check_lp_bound(inst.problem, caps, {false});
      CHECK(on.verdict == off.verdict);
      CHECK(lp::verify_certificate(on.system, on.lp));
      CHECK(lp::verify_certificate(off.system, off.lp));
    }
  }
}

TEST_CASE("the base bound is monotone in the capacities") {
  for (const auto& inst : fixtures::regression_suite()) {
    if (inst.problem.name == "example1") continue;
    CAPTURE(inst.problem.name);
    auto caps = fixtures::witness_capacities(inst);
    CHECK(check_lp_bound(inst.problem, caps).verdict == Verdict::MaybeAchievable);
    CHECK(check_lp_bound(inst.problem, scaled(caps, 2)).verdict == Verdict::MaybeAchievable);
  }
}

TEST_CASE("single edge") {
  auto inst = fixtures::regression_suite()[1];
  auto& p = inst.problem;
  CHECK(check_lp_bound(p, parse_capacities(p, "1")).verdict == Verdict::MaybeAchievable);
  auto below = check_lp_bound(p, parse_capacities(p, "e=1/2"));
  CHECK(below.verdict == Verdict::NotAchievable);
  CHECK(lp::verify_certificate(below.system, below.lp));
  auto cut = cutset_check(p, parse_capacities(p, "1/2"));
  CHECK_FALSE(cut.passes);
  CHECK(cut.lhs == 1);
  CHECK(cut.rhs == Rational(1, 2));
  auto fd = fd_bound(p, parse_capacities(p, "1/2"));
  CHECK_FALSE(fd.passes);
  CHECK(fd.edge_set == std::vector<std::string>{"e"});
  CHECK(fd_bound(p, uniform_caps(p, 1)).passes);
}

TEST_CASE("cut-set bound agrees with max flow on random multicast networks") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 60; ++t) {
    auto p = random_multicast(rng);
    CapacityTuple caps;
    for (const auto& e : p.edges) caps[e.id] = Rational(static_cast<long>(rng() % 5), 2);
    const Rational h = p.source_entropy({1});
    Rational flow = -1;
    for (const auto& u : p.sources[0].demanded_at) {
      Rational f = max_flow(p, caps, "n0", u);
      if (flow < 0 || f < flow) flow = f;
    }
    CHECK(cutset_check(p, caps).passes == (h <= flow));
  }
}

TEST_CASE("cut-set needs every sink to demand every source") {
  auto p = example1_problem();
  CHECK_THROWS_AS(cutset_check(p, parse_capacities(p, "1,1,1,1")), PreconditionError);
}

TEST_CASE("functional dependence bound on example 1") {
  auto p = example1_problem();
  auto fd = fd_bound(p, parse_capacities(p, "1,1,1,1"));
  CHECK(fd.passes);
  auto tight = fd_bound(p, parse_capacities(p, "1/2,1/2,1/2,1/2"));
  CHECK_FALSE(tight.passes);
  CHECK(tight.lhs > tight.rhs);
}

TEST_CASE("infinite capacities everywhere leave the bounds vacuous") {
  auto inst = fixtures::regression_suite()[2];
  CapacityTuple inf;
  for (const auto& e : inst.problem.edges) inf[e.id] = std::nullopt;
  CHECK(cutset_check(inst.problem, inf).passes);
  auto fd = fd_bound(inst.problem, inf);
  CHECK(fd.passes);
  CHECK_FALSE(fd.warnings.empty());
  CHECK(check_lp_bound(inst.problem, inf).verdict == Verdict::MaybeAchievable);
}

TEST_CASE("minimum total edge entropy on example 1 with loose capacities") {
  auto p = example1_problem();
  auto sys = build_lp_constraints(p, uniform_caps(p, 10));
  LinearFunctional total;
  for (const char* u : {"U1", "U2", "U3", "U4"}) total += LinearFunctional::entropy(sys.ground().subset_of({u}));
  auto r = lp::minimize(sys, total);
  REQUIRE(r.status == lp::OptimizeStatus::Optimal);
  CHECK(r.value <= 4);
  CHECK(r.value >= 2);
  CHECK(lp::verify_witness(sys, *r.witness));
  CHECK(total.evaluate(*r.witness) == r.value);
}

TEST_CASE("problem files") {
  auto p = example1_problem();
  const auto path = std::filesystem::temp_directory_path() / "entrolab_problem_roundtrip.json";
  save_problem(p, path);
  auto back = load_problem(path);
  std::filesystem::remove(path);
  CHECK(back.edges.size() == p.edges.size());
  CHECK(back.source_entropy_vector() == p.source_entropy_vector());
  CHECK(lp::dump_string(build_lp_constraints(back, parse_capacities(back, "1,1,1,1"))) ==
        lp::dump_string(build_lp_constraints(p, parse_capacities(p, "1,1,1,1"))));

  Json bad = problem_to_json(p);
  bad["distribution"]["pmf"][0]["p"] = "1/4";
  CHECK_THROWS(problem_from_json(bad));
  Json loop = problem_to_json(p);
  loop["edges"][0]["head"] = loop["edges"][0]["tail"];
  CHECK_THROWS_AS(problem_from_json(loop), ParseError);
  CHECK_THROWS_AS(load_problem(ENTROLAB_TEST_DATA "/does_not_exist.json"), ParseError);
}

TEST_CASE("capacity parsing") {
  auto p = example1_problem();
  auto c = parse_capacities(p, "U1=1/2,U2=inf,U3=1,U4=0.25");
  CHECK(*c.at("U1") == Rational(1, 2));
  CHECK_FALSE(c.at("U2").has_value());
  CHECK(*c.at("U4") == Rational(1, 4));
  CHECK_THROWS_AS(parse_capacities(p, "1,1"), ParseError);
  CHECK_THROWS_AS(parse_capacities(p, "Q=1"), ParseError);
  CHECK_THROWS_AS(parse_capacities(p, "-1,1,1,1"), ParseError);
}
