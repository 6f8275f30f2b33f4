#include "entrolab/cli/app.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "entrolab/auxvar/common_information.hpp"
#include "entrolab/auxvar/linear.hpp"
#include "entrolab/entropy.hpp"
#include "entrolab/errors.hpp"
#include "entrolab/io.hpp"
#include "entrolab/lp/dump.hpp"
#include "entrolab/lp/solver.hpp"
#include "entrolab/network/bounds.hpp"
#include "entrolab/network/example1.hpp"
#include "entrolab/recovery/multivar.hpp"

namespace entrolab::cli {
namespace {

using network::AuxSpec;
using network::NetworkProblem;

struct Output {
  Json result = Json::object();
  std::string text;
};

struct Options {
  std::string format = "text";
  bool no_timing = false;
  std::string output;

  std::string problem;
  std::string capacities;
  std::string aux;
  std::string aux_subsets;
  bool no_presolve = false;

  std::string distribution;
  std::string model;
  std::optional<std::uint64_t> seed;
  int resolution = 8;
  int restarts = 4;
  int k_alphabet = 0;
  std::string delta_mode = "per-pair";

  std::string entropies;
  int n = 0;
  bool self_test = false;
  int trials = 100;

  std::string improved;
};

std::string rat(const Rational& r) { return format_rational(r); }

std::string decimal(long double v, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lf", digits, v);
  return buf;
}

std::string bits(const Rational& r) { return decimal(to_long_double(r), 9); }

NetworkProblem load_network(const std::string& path) {
  if (path == "example1") return network::example1_problem();
  return network::load_problem(path);
}

Json capacities_json(const NetworkProblem& p, const network::CapacityTuple& c) {
  Json out = Json::object();
  for (std::size_t e = 0; e < p.edges.size(); ++e) {
    const auto cap = network::capacity_of(p, c, e);
    out[p.edges[e].id] = cap ? rat(*cap) : "inf";
  }
  return out;
}

std::string capacities_text(const NetworkProblem& p, const network::CapacityTuple& c) {
  std::string out;
  for (std::size_t e = 0; e < p.edges.size(); ++e) {
    const auto cap = network::capacity_of(p, c, e);
    out += (out.empty() ? "" : " ") + p.edges[e].id + "=" + (cap ? rat(*cap) : "inf");
  }
  return out;
}

Json witness_json(const EntropyVector& h) {
  Json out = Json::object();
  const GroundSet& g = h.ground();
  for (Subset s = 1; s <= g.full(); ++s) {
    const Rational v = h[s];
    if (v != 0) out[g.format(s)] = rat(v);
  }
  return out;
}

// machine-readable LP outcome plus its text rendering
Output lp_output(const lp::LinearSystem& sys, const lp::FeasibilityResult& r) {
  Output o;
  const bool verified = lp::verify_certificate(sys, r);
  const bool feasible = r.status == lp::Feasibility::Feasible;
  o.result["status"] = feasible ? "Feasible" : "Infeasible";
  o.result["verified"] = verified;
  o.result["system"] = {{"variables", sys.ground().names()},
                        {"rows", sys.constraints().size()},
                        {"digest", digest(lp::dump_string(sys))}};
  o.result["stats"] = {{"original_rows", r.stats.original_rows},
                       {"original_coordinates", r.stats.original_coordinates},
                       {"reduced_rows", r.stats.reduced_rows},
                       {"reduced_coordinates", r.stats.reduced_coordinates},
                       {"pivots", r.stats.pivots}};
  std::ostringstream t;
  t << "lp: " << (feasible ? "Feasible" : "Infeasible") << (verified ? " (verified)" : " (NOT verified)") << "\n";
  t << "rows: " << sys.constraints().size() << " over " << sys.ground().size() << " variables, reduced to "
    << r.stats.reduced_rows << " rows on " << r.stats.reduced_coordinates << " coordinates, " << r.stats.pivots
    << " pivots\n";
  t << "digest: " << o.result["system"]["digest"].get<std::string>() << "\n";
  if (feasible && r.witness) {
    o.result["witness"] = witness_json(*r.witness);
  } else {
    Json cert = Json::array();
    std::size_t used = 0;
    for (std::size_t i = 0; i < r.certificate.size(); ++i) {
      if (r.certificate[i] != 0) ++used;
    }
    t << "certificate: " << used << " rows\n";
    for (std::size_t i = 0; i < r.certificate.size(); ++i) {
      if (r.certificate[i] == 0) continue;
      cert.push_back({{"row", i}, {"multiplier", rat(r.certificate[i])}, {"constraint", sys.describe(i)}});
      t << "  " << rat(r.certificate[i]) << " x  " << sys.describe(i, " ") << "\n";
    }
    o.result["certificate"] = std::move(cert);
  }
  o.text = t.str();
  return o;
}

Output bound_output(const NetworkProblem& p, const network::CapacityTuple& c, const network::LpBoundResult& r) {
  Output lp = lp_output(r.system, r.lp);
  Output o;
  const char* verdict = r.verdict == network::Verdict::MaybeAchievable ? "MaybeAchievable" : "NotAchievable";
  o.result["problem"] = p.name;
  o.result["capacities"] = capacities_json(p, c);
  o.result["verdict"] = verdict;
  o.result["lp"] = std::move(lp.result);
  o.text = "problem: " + p.name + "\ncapacities: " + capacities_text(p, c) + "\nverdict: " + verdict + "\n" + lp.text;
  return o;
}

lp::SolveOptions solve_options(const Options& opt) { return lp::SolveOptions{!opt.no_presolve}; }

AuxSpec load_aux(const Options& opt) {
  AuxSpec spec = network::aux_spec_from_json(read_json_file(opt.aux));
  if (opt.aux_subsets == "all") {
    spec.fixing = network::AuxFixing::All;
  } else if (opt.aux_subsets == "none") {
    spec.fixing = network::AuxFixing::None;
  } else if (opt.aux_subsets == "selected") {
    if (spec.selected.empty()) throw ParseError("aux.fix_subsets", "selected mode needs a list of subsets");
    spec.fixing = network::AuxFixing::Selected;
  }
  return spec;
}

Output cmd_bound_check(const Options& opt) {
  const NetworkProblem p = load_network(opt.problem);
  const auto c = network::parse_capacities(p, opt.capacities);
  return bound_output(p, c, network::check_lp_bound(p, c, solve_options(opt)));
}

Output cmd_bound_improve(const Options& opt) {
  const NetworkProblem p = load_network(opt.problem);
  const auto c = network::parse_capacities(p, opt.capacities);
  const AuxSpec aux = load_aux(opt);
  Output o = bound_output(p, c, network::check_improved_bound(p, c, aux, solve_options(opt)));
  o.result["aux"] = network::aux_spec_to_json(aux);
  return o;
}

Output cmd_bound_cutset(const Options& opt) {
  const NetworkProblem p = load_network(opt.problem);
  const auto c = network::parse_capacities(p, opt.capacities);
  const auto r = network::cutset_check(p, c);
  Output o;
  o.result["problem"] = p.name;
  o.result["capacities"] = capacities_json(p, c);
  o.result["verdict"] = r.passes ? "PassesCutset" : "FailsCutset";
  o.text = "problem: " + p.name + "\ncapacities: " + capacities_text(p, c) + "\nverdict: " +
           (r.passes ? "PassesCutset" : "FailsCutset") + "\n";
  if (!r.passes) {
    std::vector<std::string> w;
    for (int i : members(r.sources)) w.push_back(p.sources[static_cast<std::size_t>(i)].id);
    o.result["cut"] = {{"sources", w}, {"source_side", r.source_side}, {"lhs", rat(r.lhs)}, {"rhs", rat(r.rhs)}};
    std::string ws, ts;
    for (const auto& s : w) ws += (ws.empty() ? "" : " ") + s;
    for (const auto& s : r.source_side) ts += (ts.empty() ? "" : " ") + s;
    o.text += "violated cut: W = {" + ws + "}, T = {" + ts + "}: H(Y_W|Y_W^c) = " + rat(r.lhs) + " > " + rat(r.rhs) + "\n";
  }
  return o;
}

Output cmd_bound_fd(const Options& opt) {
  const NetworkProblem p = load_network(opt.problem);
  const auto c = network::parse_capacities(p, opt.capacities);
  const auto r = network::fd_bound(p, c);
  Output o;
  o.result["problem"] = p.name;
  o.result["capacities"] = capacities_json(p, c);
  o.result["verdict"] = r.passes ? "PassesFD" : "FailsFD";
  o.result["warnings"] = r.warnings;
  o.text = "problem: " + p.name + "\ncapacities: " + capacities_text(p, c) + "\nverdict: " +
           (r.passes ? "PassesFD" : "FailsFD") + "\n";
  if (!r.passes) {
    std::vector<std::string> w;
    for (int i : members(r.sources)) w.push_back(p.sources[static_cast<std::size_t>(i)].id);
    o.result["witness"] = {{"sources", w}, {"edge_set", r.edge_set}, {"lhs", rat(r.lhs)}, {"rhs", rat(r.rhs)}};
    std::string es;
    for (const auto& e : r.edge_set) es += (es.empty() ? "" : " ") + e;
    o.text += "resolving set {" + es + "}: H(Y_W|Y_W^c) = " + rat(r.lhs) + " > " + rat(r.rhs) + "\n";
  }
  for (const auto& w : r.warnings) o.text += "warning: " + w + "\n";
  return o;
}

void maybe_write_spec(const Options& opt, const AuxSpec& spec, Output& o) {
  if (opt.output.empty()) return;
  write_json_file(opt.output, network::aux_spec_to_json(spec));
  o.result["written"] = opt.output;
  o.text += "aux spec written to " + opt.output + "\n";
}

Output pairwise_output(const auxvar::PairwiseAux& aux, const NetworkProblem& p, bool delta) {
  Output o;
  Json pairs = Json::array();
  for (const auto& pi : aux.pairs) {
    Json j = {{"aux", pi.aux_id}, {"first", p.sources[pi.first].id}, {"second", p.sources[pi.second].id}};
    if (delta) {
      j["delta"] = rat(pi.delta);
      j["delta_bits"] = bits(pi.delta);
    } else {
      j["H"] = rat(pi.entropy);
      j["H_bits"] = bits(pi.entropy);
    }
    o.text += pi.aux_id + " for (" + p.sources[pi.first].id + ", " + p.sources[pi.second].id + "): " +
              (delta ? "delta = " + bits(pi.delta) : "H = " + bits(pi.entropy)) + " bits\n";
    pairs.push_back(std::move(j));
  }
  o.result["problem"] = p.name;
  o.result["pairs"] = std::move(pairs);
  o.result["aux_spec"] = network::aux_spec_to_json(aux.spec);
  return o;
}

Output cmd_aux_gk(const Options& opt) {
  if (!opt.distribution.empty()) {
    const JointDistribution d = distribution_from_json(read_json_file(opt.distribution));
    const auto gk = auxvar::gk_common_information(d);
    Output o;
    Json masses = Json::array();
    for (const auto& m : gk.component_mass) masses.push_back(rat(m));
    o.result = {{"components", gk.components}, {"component_mass", masses}, {"x_component", gk.x_component},
                {"y_component", gk.y_component}, {"H", rat(gk.entropy)}, {"H_bits", bits(gk.entropy)}, {"exact", gk.exact}};
    o.text = "components: " + std::to_string(gk.components) + "\nH(K) = " + bits(gk.entropy) + " bits\n";
    return o;
  }
  const NetworkProblem p = load_network(opt.problem);
  auto aux = auxvar::pairwise_aux_for_network(p, {auxvar::PairwiseMode::Gk, {}, true});
  Output o = pairwise_output(aux, p, false);
  maybe_write_spec(opt, aux.spec, o);
  return o;
}

Output cmd_aux_delta(const Options& opt) {
  auxvar::DeltaSearchOptions search{opt.k_alphabet, opt.resolution, opt.restarts, *opt.seed};
  if (!opt.distribution.empty()) {
    const JointDistribution d = distribution_from_json(read_json_file(opt.distribution));
    const auto r = auxvar::delta_star_search(d, search);
    const auto gk = auxvar::gk_common_information(d);
    Output o;
    Json cond = Json::array();
    for (const auto& row : r.conditional) {
      Json j = Json::array();
      for (const auto& v : row) j.push_back(rat(v));
      cond.push_back(std::move(j));
    }
    o.result = {{"k_alphabet", r.k_alphabet},
                {"resolution", r.resolution},
                {"start", r.start},
                {"delta_achieved", rat(r.delta)},
                {"delta_bits", bits(r.delta)},
                {"H(K|X)", bits(r.h_k_given_x)},
                {"H(K|Y)", bits(r.h_k_given_y)},
                {"I(X;Y|K)", bits(r.i_xy_given_k)},
                {"gk_H", bits(gk.entropy)},
                {"conditional", cond}};
    o.text = "delta achieved: " + bits(r.delta) + " bits (start " + r.start + ", grid 1/" + std::to_string(r.resolution) +
             ")\nH(K|X) = " + bits(r.h_k_given_x) + "\nH(K|Y) = " + bits(r.h_k_given_y) + "\nI(X;Y|K) = " +
             bits(r.i_xy_given_k) + "\nGacs-Korner H(K) = " + bits(gk.entropy) + "\n";
    return o;
  }
  if (opt.delta_mode != "per-pair" && opt.delta_mode != "common") {
    throw ParseError("--delta-mode", "expected per-pair or common");
  }
  const NetworkProblem p = load_network(opt.problem);
  auto aux = auxvar::pairwise_aux_for_network(p, {auxvar::PairwiseMode::Delta, search, opt.delta_mode == "per-pair"});
  Output o = pairwise_output(aux, p, true);
  maybe_write_spec(opt, aux.spec, o);
  return o;
}

auxvar::SubspaceModel model_from_json(const Json& j) {
  auxvar::SubspaceModel m;
  if (!j.contains("q") || !j.contains("m") || !j.contains("sources")) throw ParseError("model", "needs q, m and sources");
  m.q = j.at("q").get<int>();
  m.m = j.at("m").get<int>();
  for (const auto& s : j.at("sources")) {
    if (!s.contains("id") || !s.contains("generator")) throw ParseError("model.sources", "needs id and generator");
    m.sources.push_back(s.at("id").get<std::string>());
    m.generators.push_back(s.at("generator").get<auxvar::Matrix>());
  }
  return m;
}

Output cmd_aux_linear(const Options& opt) {
  const auto model = model_from_json(read_json_file(opt.model));
  const auto aux = auxvar::linear_basis_aux(model);
  Output o;
  o.result["q"] = model.q;
  o.result["dimension"] = aux.reduced.m;
  o.result["warnings"] = aux.warnings;
  o.result["aux_spec"] = network::aux_spec_to_json(aux.spec);
  o.text = "basis K1..K" + std::to_string(aux.reduced.m) + " over GF(" + std::to_string(model.q) + ")\n";
  for (const auto& c : aux.spec.constraints) o.text += "  " + network::format_aux_constraint(c) + "\n";
  for (const auto& w : aux.warnings) o.text += "warning: " + w + "\n";
  maybe_write_spec(opt, aux.spec, o);
  return o;
}

Json probabilities_json(const std::vector<long double>& p) {
  Json out = Json::array();
  for (long double v : p) out.push_back(decimal(v));
  return out;
}

std::string probabilities_text(const std::vector<long double>& p) {
  std::string out;
  for (long double v : p) out += (out.empty() ? "" : " ") + decimal(v);
  return out;
}

Output recovery_output(const recovery::EntropyOracle& oracle, const std::vector<long double>* truth) {
  Output o;
  try {
    const auto r = recovery::recover_distribution(oracle);
    Json prov = Json::array();
    for (const auto& m : r.member) prov.push_back(m ? Json(oracle.label(*m)) : Json(nullptr));
    o.result = {{"consistent", true}, {"probabilities", probabilities_json(r.probabilities)}, {"indicators", prov}};
    o.text = "recovered: " + probabilities_text(r.probabilities) + "\n";
    if (truth) {
      const bool same = recovery::check_permutation_equivalence(*truth, r.probabilities);
      o.result["matches_input"] = same;
      o.text += std::string("matches input up to permutation: ") + (same ? "yes" : "no") + "\n";
    }
  } catch (const recovery::NotIndicatorConsistent& e) {
    o.result = {{"consistent", false}, {"step", e.step()}, {"reason", e.what()}};
    o.text = std::string("NotIndicatorConsistent at ") + e.what() + "\n";
  }
  return o;
}

std::vector<long double> to_long_doubles(const std::vector<Rational>& p) {
  std::vector<long double> out;
  for (const auto& v : p) out.push_back(to_long_double(v));
  return out;
}

Output cmd_recover(const Options& opt) {
  if (opt.self_test) {
    if (!opt.seed) throw ParseError("--seed", "self-test needs an explicit seed");
    if (opt.n < 2 || opt.n > 8) throw ParseError("--n", "self-test supports 2 <= n <= 8");
    std::mt19937_64 rng(*opt.seed);
    int passed = 0;
    long double worst = 0;
    for (int t = 0; t < opt.trials; ++t) {
      const auto p = recovery::random_sorted_pmf(rng, opt.n);
      const auto oracle = recovery::shuffled_family_oracle(recovery::build_indicator_family(p), rng);
      const auto truth = to_long_doubles(p);
      try {
        const auto r = recovery::recover_distribution(oracle);
        if (recovery::check_permutation_equivalence(truth, r.probabilities)) ++passed;
        for (std::size_t k = 0; k < truth.size(); ++k) worst = std::max(worst, std::fabs(truth[k] - r.probabilities[k]));
      } catch (const recovery::NotIndicatorConsistent&) {
      }
    }
    Output o;
    o.result = {{"n", opt.n}, {"trials", opt.trials}, {"passed", passed}, {"failed", opt.trials - passed},
                {"max_error", decimal(worst, 15)}};
    o.text = "self-test n=" + std::to_string(opt.n) + ": " + std::to_string(passed) + "/" + std::to_string(opt.trials) +
             " recovered, max error " + decimal(worst, 15) + "\n";
    return o;
  }
  if (!opt.entropies.empty()) {
    Json j = read_json_file(opt.entropies);
    if (opt.n > 0) j["n"] = opt.n;
    const recovery::TableOracle oracle(j);
    return recovery_output(oracle, nullptr);
  }
  if (opt.distribution.empty()) throw ParseError("recover", "give --entropies, --distribution or --self-test");
  const JointDistribution d = distribution_from_json(read_json_file(opt.distribution));
  std::mt19937_64 rng(opt.seed.value_or(0));
  if (d.arity() == 1) {
    const auto family = recovery::build_indicator_family(d);
    const auto truth = to_long_doubles(family.pmf);
    if (opt.seed) return recovery_output(recovery::shuffled_family_oracle(family, rng), &truth);
    std::vector<std::size_t> order(family.members.size());
    std::iota(order.begin(), order.end(), 0);
    return recovery_output(recovery::family_oracle(family, order), &truth);
  }
  const auto family = recovery::build_multivar_indicators(d);
  std::vector<std::size_t> order(family.family.members.size());
  std::iota(order.begin(), order.end(), 0);
  if (opt.seed) std::shuffle(order.begin(), order.end(), rng);
  Output o;
  try {
    const auto r = recovery::recover_multivar(recovery::multivar_oracle(family, order), family.dims);
    std::vector<long double> original(r.joint.size());
    for (std::size_t a = 0; a < family.coords.size(); ++a) {
      std::size_t idx = 0;
      for (std::size_t i = 0; i < family.dims.size(); ++i) {
        idx = idx * static_cast<std::size_t>(family.dims[i]) + static_cast<std::size_t>(family.coords[a][i]);
      }
      original[idx] = to_long_double(family.family.pmf[a]);
    }
    const auto aligned = recovery::align_axes(r.joint, original, family.dims);
    o.result = {{"consistent", true}, {"dims", r.dims}, {"joint", probabilities_json(r.joint)}, {"fibers", r.fibers},
                {"alignments", aligned.size()}};
    if (!aligned.empty()) o.result["permutations"] = aligned.front();
    o.text = "recovered joint (row-major): " + probabilities_text(r.joint) + "\naxis alignments with the input: " +
             std::to_string(aligned.size()) + "\n";
  } catch (const recovery::NotIndicatorConsistent& e) {
    o.result = {{"consistent", false}, {"step", e.step()}, {"reason", e.what()}};
    o.text = std::string("NotIndicatorConsistent at ") + e.what() + "\n";
  }
  return o;
}

Output cmd_verify_properties(const Options& opt) {
  const JointDistribution d = distribution_from_json(read_json_file(opt.distribution));
  const auto family = recovery::build_indicator_family(d);
  const auto rep = recovery::verify_properties(family);
  Output o;
  Json v = Json::array();
  for (const auto& x : rep.violations) v.push_back({{"property", x.property}, {"detail", x.detail}});
  o.result = {{"n", family.n()}, {"checks", rep.checks}, {"violations", v}, {"ties", rep.ties}};
  o.text = "n = " + std::to_string(family.n()) + ", " + std::to_string(rep.checks) + " checks, " +
           std::to_string(rep.violations.size()) + " violations\n";
  for (const auto& x : rep.violations) o.text += "  P" + std::to_string(x.property) + ": " + x.detail + "\n";
  for (const auto& t : rep.ties) o.text += "  tie: " + t + "\n";
  return o;
}

Output cmd_dump_lp(const Options& opt) {
  const NetworkProblem p = load_network(opt.problem);
  const auto c = network::parse_capacities(p, opt.capacities);
  const lp::LinearSystem sys =
      opt.aux.empty() ? network::build_lp_constraints(p, c) : network::build_improved_constraints(p, c, load_aux(opt));
  const std::string dump = lp::dump_string(sys);
  Output o;
  o.result = {{"problem", p.name}, {"rows", sys.constraints().size()}, {"digest", digest(dump)}};
  if (opt.output.empty()) {
    o.result["dump"] = dump;
    o.text = dump;
  } else {
    std::ofstream f(opt.output);
    if (!f) throw ParseError(opt.output, "cannot write");
    f << dump;
    o.result["written"] = opt.output;
    o.text = "dump written to " + opt.output + " (" + std::to_string(sys.constraints().size()) + " rows)\n";
  }
  return o;
}

Output cmd_example1(const Options& opt) {
  const NetworkProblem p = network::example1_problem();
  const auto c = network::parse_capacities(p, opt.capacities);
  const auto base = network::check_lp_bound(p, c, solve_options(opt));
  Output o;
  Output b = bound_output(p, c, base);
  // the explicit code of the example, checked against every base row
  const auto witness = entropy_vector_of(network::example1_witness_distribution());
  const auto sys_ground = base.system.ground();
  std::vector<int> idx;
  for (const auto& name : sys_ground.names()) idx.push_back(*witness.ground().index_of(name));
  const JointDistribution projected = network::example1_witness_distribution().project(idx);
  const bool witness_ok = lp::verify_witness(base.system, entropy_vector_of(projected));
  o.result["base"] = std::move(b.result);
  o.result["explicit_witness_satisfies_base"] = witness_ok;
  o.text = "== base LP ==\n" + b.text + "explicit code witness satisfies every row: " + (witness_ok ? "yes" : "no") + "\n";
  if (!opt.improved.empty()) {
    AuxSpec aux;
    if (opt.improved == "gk") {
      aux = auxvar::pairwise_aux_for_network(p, {auxvar::PairwiseMode::Gk, {}, true}).spec;
    } else if (opt.improved == "selected") {
      aux = network::example1_aux_selected();
    } else if (opt.improved == "functional") {
      aux = network::example1_aux_functional();
    } else if (opt.improved == "z0") {
      aux = network::example1_aux_z0();
    } else {
      throw ParseError("--improved", "expected gk, selected, functional or z0");
    }
    Output i = bound_output(p, c, network::check_improved_bound(p, c, aux, solve_options(opt)));
    i.result["aux_mode"] = opt.improved;
    o.result["improved"] = std::move(i.result);
    o.text += "== improved LP (" + opt.improved + ") ==\n" + i.text;
  }
  return o;
}

void add_common(CLI::App* app, Options& opt) {
  app->add_option("--format", opt.format, "report format")->check(CLI::IsMember({"json", "text"}));
  app->add_flag("--no-timing", opt.no_timing, "omit timing from the report");
}

void add_network(CLI::App* app, Options& opt, bool need_capacities = true) {
  app->add_option("--problem", opt.problem, "problem file (or 'example1')")->required();
  auto* cap = app->add_option("--capacities", opt.capacities, "e1=1,e2=inf,... or positional values");
  if (need_capacities) cap->required();
  app->add_flag("--no-presolve", opt.no_presolve, "solve the LP without reductions");
}

}  // namespace

std::string digest(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Entropy LP bounds for network coding with correlated sources", "entrolab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto* bound = app.add_subcommand("bound", "LP, cut-set and functional-dependence bounds");
  bound->require_subcommand(1);
  auto* check = bound->add_subcommand("check", "base LP bound");
  add_network(check, opt);
  add_common(check, opt);
  auto* improve = bound->add_subcommand("improve", "LP bound with auxiliary variables");
  add_network(improve, opt);
  improve->add_option("--aux", opt.aux, "aux spec file")->required();
  improve->add_option("--aux-subsets", opt.aux_subsets, "override subset fixing")
      ->check(CLI::IsMember({"all", "selected", "none"}));
  add_common(improve, opt);
  auto* cutset = bound->add_subcommand("cutset", "cut-set bound");
  add_network(cutset, opt);
  add_common(cutset, opt);
  auto* fd = bound->add_subcommand("fd", "functional-dependence bound");
  add_network(fd, opt);
  add_common(fd, opt);

  auto* aux = app.add_subcommand("aux", "construct auxiliary random variables");
  aux->require_subcommand(1);
  auto* gk = aux->add_subcommand("gk", "Gacs-Korner common information");
  auto* gk_src = gk->add_option("--problem", opt.problem, "problem file: pairwise aux for every source pair");
  gk->add_option("--distribution", opt.distribution, "two-variable distribution")->excludes(gk_src);
  gk->add_option("--output", opt.output, "write the aux spec here");
  add_common(gk, opt);
  auto* delta = aux->add_subcommand("delta", "relaxed common information search");
  auto* delta_src = delta->add_option("--problem", opt.problem, "problem file: pairwise aux for every source pair");
  delta->add_option("--distribution", opt.distribution, "two-variable distribution")->excludes(delta_src);
  delta->add_option("--seed", opt.seed, "search seed")->required();
  delta->add_option("--resolution", opt.resolution, "largest grid denominator")->check(CLI::Range(2, 64));
  delta->add_option("--restarts", opt.restarts, "random starts per grid")->check(CLI::Range(0, 1000));
  delta->add_option("--k-alphabet", opt.k_alphabet, "alphabet size of K (0: automatic)")->check(CLI::Range(0, 64));
  delta->add_option("--delta-mode", opt.delta_mode, "per-pair or common")->check(CLI::IsMember({"per-pair", "common"}));
  delta->add_option("--output", opt.output, "write the aux spec here");
  add_common(delta, opt);
  auto* linear = aux->add_subcommand("linear", "global basis of linearly correlated sources");
  linear->add_option("--model", opt.model, "subspace model file")->required();
  linear->add_option("--output", opt.output, "write the aux spec here");
  add_common(linear, opt);

  auto* recover = app.add_subcommand("recover", "recover a distribution from indicator entropies");
  recover->add_option("--entropies", opt.entropies, "entropy table");
  recover->add_option("--distribution", opt.distribution, "distribution to round-trip");
  recover->add_option("--n", opt.n, "alphabet size")->check(CLI::Range(2, 16));
  recover->add_flag("--self-test", opt.self_test, "round-trip random distributions");
  recover->add_option("--trials", opt.trials, "self-test trials")->check(CLI::Range(1, 100000));
  recover->add_option("--seed", opt.seed, "seed for label shuffles and random distributions");
  add_common(recover, opt);

  auto* props = app.add_subcommand("verify-properties", "check the indicator family properties");
  props->add_option("--distribution", opt.distribution, "single-variable distribution")->required();
  add_common(props, opt);

  auto* dump = app.add_subcommand("dump-lp", "write the LP in text form");
  add_network(dump, opt);
  dump->add_option("--aux", opt.aux, "aux spec file for the improved LP");
  dump->add_option("--aux-subsets", opt.aux_subsets, "override subset fixing")
      ->check(CLI::IsMember({"all", "selected", "none"}));
  dump->add_option("--output", opt.output, "write the dump here");
  add_common(dump, opt);

  auto* ex1 = app.add_subcommand("example1", "the bundled three-source example");
  ex1->add_option("--capacities", opt.capacities, "capacities of U1..U4")->required();
  ex1->add_option("--improved", opt.improved, "also run an improved LP: gk, selected, functional or z0")
      ->check(CLI::IsMember({"gk", "selected", "functional", "z0"}));
  ex1->add_flag("--no-presolve", opt.no_presolve, "solve the LP without reductions");
  add_common(ex1, opt);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  Json report;
  report["tool"] = "entrolab";
  report["version"] = kVersion;
  report["command"] = args;
  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  Output o;
  try {
    if (check->parsed()) {
      o = cmd_bound_check(opt);
    } else if (improve->parsed()) {
      o = cmd_bound_improve(opt);
    } else if (cutset->parsed()) {
      o = cmd_bound_cutset(opt);
    } else if (fd->parsed()) {
      o = cmd_bound_fd(opt);
    } else if (gk->parsed()) {
      if (opt.problem.empty() && opt.distribution.empty()) throw ParseError("aux gk", "give --problem or --distribution");
      o = cmd_aux_gk(opt);
    } else if (delta->parsed()) {
      if (opt.problem.empty() && opt.distribution.empty()) throw ParseError("aux delta", "give --problem or --distribution");
      o = cmd_aux_delta(opt);
    } else if (linear->parsed()) {
      o = cmd_aux_linear(opt);
    } else if (recover->parsed()) {
      o = cmd_recover(opt);
    } else if (props->parsed()) {
      o = cmd_verify_properties(opt);
    } else if (dump->parsed()) {
      o = cmd_dump_lp(opt);
    } else if (ex1->parsed()) {
      o = cmd_example1(opt);
    }
    report["status"] = "ok";
    report["result"] = std::move(o.result);
  } catch (const ParseError& e) {
    code = 1;
    report["status"] = "input-error";
    report["error"] = e.what();
  } catch (const DomainError& e) {
    code = 1;
    report["status"] = "input-error";
    report["error"] = e.what();
  } catch (const PreconditionError& e) {
    code = 1;
    report["status"] = "refused";
    report["error"] = e.what();
  } catch (const nlohmann::json::exception& e) {
    code = 1;
    report["status"] = "input-error";
    report["error"] = e.what();
  } catch (const std::exception& e) {
    code = 2;
    report["status"] = "internal-error";
    report["error"] = e.what();
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!opt.no_timing) report["timing"] = {{"seconds", seconds}};

  if (code != 0) err << "error: " << report["error"].get<std::string>() << "\n";
  if (opt.format == "json") {
    out << report.dump(2) << "\n";
  } else if (code == 0) {
    out << o.text;
    if (!opt.no_timing) out << "time: " << decimal(seconds, 3) << " s\n";
  }
  return code;
}

}  // namespace entrolab::cli
