// Acceptance checks, one line per criterion. Exit status is nonzero when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "entrolab/auxvar/common_information.hpp"
#include "entrolab/entropy.hpp"
#include "entrolab/errors.hpp"
#include "entrolab/io.hpp"
#include "entrolab/network/bounds.hpp"
#include "entrolab/network/example1.hpp"
#include "entrolab/recovery/multivar.hpp"
#include "entrolab/recovery/recover.hpp"
#include "support/networks.hpp"
#include "support/oracles.hpp"

using namespace entrolab;

namespace {

constexpr double kRecoveryTol = 1e-9;
constexpr double kDeltaSlack = 1e-6;

struct Check {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

Check c1_example1_base() {
  const auto t0 = std::chrono::steady_clock::now();
  auto p = network::example1_problem();
  auto res = network::check_lp_bound(p, network::parse_capacities(p, "1,1,1,1"));
  const bool feasible = res.verdict == network::Verdict::MaybeAchievable && lp::verify_certificate(res.system, res.lp);
  fixtures::CodedInstance ex{p, network::example1_witness_distribution()};
  const auto h = fixtures::witness_vector(ex, res.system.ground());
  const bool witness = h.exact() && lp::verify_witness(res.system, h);
  const double s = seconds_since(t0);
  return {feasible && witness && s < 10.0, "feasible=" + std::to_string(feasible) + " witness_exact=" +
                                               std::to_string(witness) + " rows=" +
                                               std::to_string(res.system.constraints().size()) + " time=" + fmt(s) + "s"};
}

Check c2_example1_improved() {
  const auto t0 = std::chrono::steady_clock::now();
  auto p = network::example1_problem();
  auto res = network::check_improved_bound(p, network::parse_capacities(p, "1,1,1,1"), network::example1_aux_selected());
  const bool infeasible = res.verdict == network::Verdict::NotAchievable;
  const bool verified = lp::verify_certificate(res.system, res.lp);
  std::size_t support = 0;
  for (const auto& m : res.lp.certificate) support += m != 0;
  const double s = seconds_since(t0);
  return {infeasible && verified && s < 600.0, "infeasible=" + std::to_string(infeasible) + " certificate_verified=" +
                                                   std::to_string(verified) + " certificate_rows=" +
                                                   std::to_string(support) + " time=" + fmt(s) + "s"};
}

Check c3_elemental_counts() {
  bool ok = true;
  std::string detail;
  for (int n = 2; n <= 10; ++n) {
    const auto got = elemental_inequalities(n).size();
    const auto want = oracle::closed_form_elemental_count(n);
    ok = ok && got == want;
    detail += (detail.empty() ? "" : " ") + std::to_string(n) + ":" + std::to_string(got);
  }
  return {ok, detail};
}

Check c4_source_entropies() {
  auto h = network::example1_problem().source_entropy_vector();
  const std::vector<Rational> want{2, 2, 3, 2, 3, 3, 3};  // Y1 Y2 Y12 Y3 Y13 Y23 Y123
  const bool ok = h.exact() && std::equal(h.values().begin(), h.values().end(), want.begin(), want.end());
  std::string got;
  for (const auto& v : h.values()) got += (got.empty() ? "" : ",") + format_rational(v);
  return {ok, "h=(" + got + ")"};
}

Check c5_gk() {
  auto p = network::example1_problem();
  auto dist = p.source_distribution();
  bool ok = true;
  std::string detail;
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  const std::size_t shared_pos[3] = {0, 1, 1};  // b0 in Y1, b1 in Y1, b2 in Y2
  for (int k = 0; k < 3; ++k) {
    auto d = dist.project({pairs[k][0], pairs[k][1]});
    auto gk = auxvar::gk_common_information(d);
    auto joint = d.with_derived({{"K", {"0", "1"}}, {"B", {"0", "1"}}}, [&](const entrolab::Outcome& o) {
      const std::string& a = d.variables()[0].alphabet[o.symbols[0]];
      return std::vector<std::uint32_t>{static_cast<std::uint32_t>(gk.x_component[o.symbols[0]]),
                                        static_cast<std::uint32_t>(a[shared_pos[k]] - '0')};
    });
    // K and the shared bit determine each other, and K is common to both sources
    const bool same = entropy_of(joint, 0b1100) == entropy_of(joint, 0b0100) &&
                      entropy_of(joint, 0b1100) == entropy_of(joint, 0b1000) &&
                      entropy_of(joint, 0b0101) == entropy_of(joint, 0b0001) &&
                      entropy_of(joint, 0b0110) == entropy_of(joint, 0b0010);
    ok = ok && gk.entropy == 1 && same;
    detail += "H(K" + std::to_string(pairs[k][0] + 1) + std::to_string(pairs[k][1] + 1) + ")=" +
              format_rational(gk.entropy) + " ";
  }
  auto aux = auxvar::pairwise_aux_for_network(p);
  auto res = network::check_improved_bound(p, network::parse_capacities(p, "1,1,1,1"), aux.spec);
  const bool infeasible = res.verdict == network::Verdict::NotAchievable && lp::verify_certificate(res.system, res.lp);
  return {ok && infeasible, detail + "improved_infeasible=" + std::to_string(infeasible)};
}

Check c6_delta() {
  auto d = distribution_from_json(read_json_file(ENTROLAB_TEST_DATA "/perturbed_pair.json"));
  auxvar::DeltaSearchOptions opt;
  opt.seed = 1;
  auto r = auxvar::delta_star_search(d, opt);
  const double hb = oracle::plain_binary_entropy(0.1);
  auto gk = auxvar::gk_common_information(d);
  const bool ok = r.delta.get_d() <= hb + kDeltaSlack && gk.entropy == 0;
  return {ok, "delta=" + fmt(r.delta.get_d(), 6) + " h_b(0.1)=" + fmt(hb, 6) + " gk_H=" + format_rational(gk.entropy)};
}

Check c7_round_trip() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240607);
  int failures = 0;
  long double worst = 0;
  for (int t = 0; t < 500; ++t) {
    const int n = 2 + static_cast<int>(rng() % 4);
    auto p = recovery::random_sorted_pmf(rng, n);
    auto f = recovery::build_indicator_family(p);
    try {
      auto r = recovery::recover_distribution(recovery::shuffled_family_oracle(f, rng));
      bool ok = r.probabilities.size() == p.size();
      for (std::size_t i = 0; ok && i < p.size(); ++i) {
        const long double err = std::fabs(r.probabilities[i] - to_long_double(p[i]));
        worst = std::max(worst, err);
        ok = err <= kRecoveryTol;
      }
      failures += !ok;
    } catch (const std::exception&) {
      ++failures;
    }
  }
  const double s = seconds_since(t0);
  return {failures == 0 && s < 60.0, "trials=500 failures=" + std::to_string(failures) + " max_error=" +
                                         sci(static_cast<double>(worst)) + " time=" + fmt(s) + "s"};
}

Check c8_properties() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(777);
  std::size_t violations = 0, checks = 0;
  for (int t = 0; t < 200; ++t) {
    auto rep = recovery::verify_properties(recovery::build_indicator_family(recovery::random_sorted_pmf(rng, 3 + t % 2)));
    violations += rep.violations.size();
    checks += static_cast<std::size_t>(rep.checks);
  }
  const double s = seconds_since(t0);
  return {violations == 0 && s < 60.0, "pmfs=200 checks=" + std::to_string(checks) + " violations=" +
                                           std::to_string(violations) + " time=" + fmt(s) + "s"};
}

Check c9_multivar() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(4242);
  int verified = 0;
  for (int t = 0; t < 20; ++t) {
    std::vector<entrolab::Outcome> outs;
    std::vector<long> w(9);
    long total = 0;
    for (auto& x : w) total += x = 1 + static_cast<long>(rng() % 1000);
    for (std::uint32_t c = 0; c < 9; ++c) outs.push_back({{c / 3, c % 3}, Rational(w[c], total)});
    for (auto& o : outs) o.probability.canonicalize();
    JointDistribution d({{"X1", {"0", "1", "2"}}, {"X2", {"0", "1", "2"}}}, outs);
    try {
      auto mf = recovery::build_multivar_indicators(d);
      std::vector<std::size_t> order(mf.family.members.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::shuffle(order.begin(), order.end(), rng);
      auto rec = recovery::recover_multivar(recovery::multivar_oracle(mf, order), mf.dims);
      std::vector<long double> truth;
      for (const auto& o : d.outcomes()) truth.push_back(to_long_double(o.probability));
      auto sigmas = recovery::align_axes(rec.joint, truth, mf.dims);
      if (sigmas.empty()) continue;
      // independent re-check of the first certificate, cell by cell
      const auto& pi = sigmas.front();
      bool ok = true;
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) {
          const auto pa = static_cast<std::size_t>(pi[0][a]), pb = static_cast<std::size_t>(pi[1][b]);
          ok = ok && std::fabs(rec.joint[3 * a + b] - truth[3 * pa + pb]) <= kRecoveryTol;
        }
      verified += ok;
    } catch (const std::exception&) {
    }
  }
  return {verified == 20, "verified=" + std::to_string(verified) + "/20 time=" + fmt(seconds_since(t0)) + "s"};
}

Check c10_bound_ordering() {
  const auto t0 = std::chrono::steady_clock::now();
  int witness_conflicts = 0, ordering_conflicts = 0, tuples = 0, unverified = 0;
  for (const auto& inst : fixtures::regression_suite()) {
    const auto& p = inst.problem;
    const auto base_caps = fixtures::witness_capacities(inst);
    network::AuxSpec aux;
    if (p.sources.size() >= 2) aux = auxvar::pairwise_aux_for_network(p).spec;
    std::vector<network::CapacityTuple> caps_list{base_caps};
    for (const Rational& s : {Rational(1, 2), Rational(3, 4)}) {
      auto c = base_caps;
      for (auto& [id, v] : c)
        if (v) *v *= s;
      caps_list.push_back(c);
    }
    for (std::size_t k = 0; k < caps_list.size(); ++k) {
      const auto& caps = caps_list[k];
      ++tuples;
      auto base = network::check_lp_bound(p, caps);
      auto improved = network::check_improved_bound(p, caps, aux);
      unverified += !lp::verify_certificate(base.system, base.lp);
      unverified += !lp::verify_certificate(improved.system, improved.lp);
      if (base.verdict == network::Verdict::NotAchievable && improved.verdict == network::Verdict::MaybeAchievable)
        ++ordering_conflicts;
      if (k != 0) continue;
      // the witness tuple: the base LP accepts the code's entropy vector
      const bool carries = base.verdict == network::Verdict::MaybeAchievable &&
                           lp::verify_witness(base.system, fixtures::witness_vector(inst, base.system.ground()));
      if (!carries) {
        ++witness_conflicts;
        continue;
      }
      bool cut_ok = true;
      try {
        cut_ok = network::cutset_check(p, caps).passes;
      } catch (const PreconditionError&) {
      }
      if (!cut_ok || !network::fd_bound(p, caps).passes) ++witness_conflicts;
    }
  }
  const bool ok = witness_conflicts == 0 && ordering_conflicts == 0 && unverified == 0;
  return {ok, "instances=10 tuples=" + std::to_string(tuples) + " witness_conflicts=" + std::to_string(witness_conflicts) +
                  " ordering_conflicts=" + std::to_string(ordering_conflicts) + " unverified=" +
                  std::to_string(unverified) + " time=" + fmt(seconds_since(t0)) + "s"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"example 1 base bound feasible at (1,1,1,1) with exact explicit witness", c1_example1_base},
      {"example 1 improved bound infeasible with verified Farkas certificate", c2_example1_improved},
      {"elemental inequality counts n=2..10", c3_elemental_counts},
      {"example 1 source entropy vector (2,2,2,3,3,3,3)", c4_source_entropies},
      {"pairwise common parts are the shared bits and reproduce infeasibility", c5_gk},
      {"delta search on the perturbed pair", c6_delta},
      {"recovery round trip on 500 pmfs", c7_round_trip},
      {"indicator properties on 200 pmfs", c8_properties},
      {"multi-variable recovery of 20 3x3 pmfs", c9_multivar},
      {"bound ordering on the regression suite", c10_bound_ordering},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %2zu %s: %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
