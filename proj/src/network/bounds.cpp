#include "entrolab/network/bounds.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "entrolab/errors.hpp"

namespace entrolab::network {
namespace {

using lp::Relation;

struct AuxData {
  std::vector<std::string> functional_ids;
  std::optional<JointDistribution> extended;  // sources then functional aux
};

AuxData evaluate_aux(const NetworkProblem& p, const AuxSpec& aux) {
  AuxData out;
  std::vector<const AuxVariable*> fns;
  for (const auto& v : aux.variables) {
    if (v.function) fns.push_back(&v);
  }
  if (fns.empty()) return out;
  if (!p.model.distribution) throw PreconditionError("functional auxiliaries need an explicit source distribution");
  const JointDistribution src = p.source_distribution();
  const GroundSet g = src.ground();
  // symbol strings of every aux at every outcome
  std::vector<std::vector<std::string>> symbols(src.outcomes().size());
  std::vector<Variable> extra;
  for (const AuxVariable* v : fns) {
    std::vector<int> args;
    for (const auto& name : v->function->of) {
      auto i = g.index_of(name);
      if (!i) throw DomainError("auxiliary '" + v->id + "' is a function of unknown source '" + name + "'");
      args.push_back(*i);
    }
    std::set<std::string> alphabet;
    for (std::size_t k = 0; k < src.outcomes().size(); ++k) {
      std::string key;
      for (std::size_t a = 0; a < args.size(); ++a) {
        if (a) key += '|';
        const auto& var = src.variables()[static_cast<std::size_t>(args[a])];
        key += var.alphabet[src.outcomes()[k].symbols[static_cast<std::size_t>(args[a])]];
      }
      auto it = v->function->table.find(key);
      if (it == v->function->table.end()) {
        throw DomainError("auxiliary '" + v->id + "' is undefined at '" + key + "'");
      }
      symbols[k].push_back(it->second);
      alphabet.insert(it->second);
    }
    extra.push_back(Variable{v->id, std::vector<std::string>(alphabet.begin(), alphabet.end())});
    out.functional_ids.push_back(v->id);
  }
  std::vector<std::map<std::string, std::uint32_t>> index(extra.size());
  for (std::size_t i = 0; i < extra.size(); ++i) {
    for (std::size_t k = 0; k < extra[i].alphabet.size(); ++k) index[i][extra[i].alphabet[k]] = static_cast<std::uint32_t>(k);
  }
  std::size_t cursor = 0;
  out.extended = src.with_derived(extra, [&](const Outcome&) {
    std::vector<std::uint32_t> s;
    for (std::size_t i = 0; i < extra.size(); ++i) s.push_back(index[i].at(symbols[cursor][i]));
    ++cursor;
    return s;
  });
  return out;
}

lp::LinearSystem assemble(const NetworkProblem& p, const CapacityTuple& c, const AuxSpec* aux) {
  p.validate();
  std::vector<std::string> names;
  for (const auto& s : p.sources) names.push_back(s.id);
  if (aux) {
    for (const auto& v : aux->variables) names.push_back(v.id);
  }
  const std::size_t aux_count = aux ? aux->variables.size() : 0;
  for (const auto& e : p.edges) names.push_back(e.id);
  GroundSet ground(names);  // throws DomainError on an id collision
  const int ns = static_cast<int>(p.sources.size());
  auto source_var = [&](std::size_t s) { return singleton(static_cast<int>(s)); };
  auto edge_var = [&](std::size_t e) { return singleton(ns + static_cast<int>(aux_count) + static_cast<int>(e)); };

  std::vector<std::optional<Rational>> caps;
  for (std::size_t e = 0; e < p.edges.size(); ++e) caps.push_back(capacity_of(p, c, e));

  lp::LinearSystem sys(ground);
  const EntropyVector hv = p.source_entropy_vector();
  for (Subset w = 1; w <= full_subset(ns); ++w) {
    sys.add(LinearFunctional::entropy(w), Relation::Equal, hv[w], "source entropy");
  }

  if (aux) {
    const AuxData data = evaluate_aux(p, *aux);
    if (data.extended) {
      const GroundSet eg = data.extended->ground();
      auto to_ground = [&](Subset m) {
        return ground.subset_of([&] {
          std::vector<std::string> v;
          for (int i : members(m)) v.push_back(eg.name(i));
          return v;
        }());
      };
      const Subset src_mask = full_subset(ns);
      auto fix = [&](Subset m) {
        sys.add(LinearFunctional::entropy(to_ground(m)), Relation::Equal, entropy_of(*data.extended, m),
                "auxiliary entropy");
      };
      if (aux->fixing == AuxFixing::All) {
        for (Subset m = 1; m <= eg.full(); ++m) {
          if (!is_subset_of(m, src_mask)) fix(m);
        }
      } else if (aux->fixing == AuxFixing::Selected) {
        for (const auto& list : aux->selected) {
          const Subset m = eg.subset_of(list);
          if (m == 0) throw DomainError("empty subset in the selected fixing list");
          fix(m);
        }
      }
    }
    for (const AuxConstraint& row : aux->constraints) {
      std::vector<Term> terms;
      for (const AuxTerm& t : row.terms) terms.push_back({ground.subset_of(t.names), t.coeff});
      sys.add(LinearFunctional(std::move(terms)), row.relation, row.rhs, row.label.empty() ? "auxiliary row" : row.label);
    }
  }

  auto inputs_of_node = [&](const std::string& node) {
    Subset in = 0;
    for (std::size_t s : p.sources_at(node)) in |= source_var(s);
    for (std::size_t f : p.in_edges(node)) in |= edge_var(f);
    return in;
  };

  for (std::size_t e = 0; e < p.edges.size(); ++e) {
    const Subset in = inputs_of_node(p.edges[e].tail);
    sys.add(LinearFunctional::conditional(edge_var(e), in), Relation::Equal, 0, "encode " + p.edges[e].id);
  }
  for (std::size_t s = 0; s < p.sources.size(); ++s) {
    for (const auto& u : p.sources[s].demanded_at) {
      LinearFunctional f = LinearFunctional::conditional(source_var(s), inputs_of_node(u));
      if (f.empty()) continue;
      sys.add(std::move(f), Relation::Equal, 0, "decode " + p.sources[s].id + " at " + u);
    }
  }
  for (std::size_t e = 0; e < p.edges.size(); ++e) {
    if (caps[e]) sys.add(LinearFunctional::entropy(edge_var(e)), Relation::LessEq, *caps[e], "capacity " + p.edges[e].id);
  }
  for (std::size_t e = 0; e < p.edges.size(); ++e) {
    if (caps[e]) continue;
    const Subset in = inputs_of_node(p.edges[e].tail);
    if (in == 0) continue;
    sys.add(LinearFunctional::conditional(in, edge_var(e)), Relation::Equal, 0, "forward " + p.edges[e].id);
  }
  sys.add_elementals();
  return sys;
}

LpBoundResult run(lp::LinearSystem sys, const lp::SolveOptions& options) {
  LpBoundResult out;
  out.lp = lp::solve_feasibility(sys, options);
  out.system = std::move(sys);
  out.verdict = out.lp.status == lp::Feasibility::Feasible ? Verdict::MaybeAchievable : Verdict::NotAchievable;
  return out;
}

Rational conditional_source_entropy(const EntropyVector& hv, Subset w) {
  const Subset all = hv.ground().full();
  return hv[all] - hv[all & ~w];
}

}  // namespace

lp::LinearSystem build_lp_constraints(const NetworkProblem& p, const CapacityTuple& c) { return assemble(p, c, nullptr); }

lp::LinearSystem build_improved_constraints(const NetworkProblem& p, const CapacityTuple& c, const AuxSpec& aux) {
  return assemble(p, c, &aux);
}

LpBoundResult check_lp_bound(const NetworkProblem& p, const CapacityTuple& c, const lp::SolveOptions& options) {
  return run(build_lp_constraints(p, c), options);
}

LpBoundResult check_improved_bound(const NetworkProblem& p, const CapacityTuple& c, const AuxSpec& aux,
                                   const lp::SolveOptions& options) {
  return run(build_improved_constraints(p, c, aux), options);
}

CutsetResult cutset_check(const NetworkProblem& p, const CapacityTuple& c) {
  p.validate();
  if (p.nodes.size() > 20) throw PreconditionError("cut enumeration is limited to 20 nodes");
  std::set<std::string> sinks;
  for (const auto& s : p.sources) sinks.insert(s.demanded_at.begin(), s.demanded_at.end());
  for (const auto& u : sinks) {
    for (const auto& s : p.sources) {
      if (std::find(s.demanded_at.begin(), s.demanded_at.end(), u) == s.demanded_at.end()) {
        throw PreconditionError("the cut-set condition needs every sink to demand every source; node " + u +
                                " does not demand " + s.id);
      }
    }
  }
  std::vector<std::optional<Rational>> caps;
  for (std::size_t e = 0; e < p.edges.size(); ++e) caps.push_back(capacity_of(p, c, e));
  std::map<std::string, int> node_index;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) node_index[p.nodes[i]] = static_cast<int>(i);
  Subset sink_mask = 0;
  for (const auto& u : sinks) sink_mask |= singleton(node_index[u]);

  const EntropyVector hv = p.source_entropy_vector();
  const int ns = static_cast<int>(p.sources.size());
  const Subset all_nodes = full_subset(static_cast<int>(p.nodes.size()));
  CutsetResult out;
  for (Subset w = 1; w <= full_subset(ns); ++w) {
    const Rational lhs = conditional_source_entropy(hv, w);
    if (lhs == 0) continue;
    Subset need = 0;
    for (int s : members(w)) need |= singleton(node_index[p.sources[static_cast<std::size_t>(s)].at]);
    for (Subset t = 1; t < all_nodes; ++t) {
      if (!is_subset_of(need, t) || (sink_mask & ~t) == 0) continue;
      Rational rhs = 0;
      bool infinite = false;
      for (std::size_t e = 0; e < p.edges.size(); ++e) {
        const bool crosses = contains(t, node_index[p.edges[e].tail]) && !contains(t, node_index[p.edges[e].head]);
        if (!crosses) continue;
        if (!caps[e]) {
          infinite = true;
          break;
        }
        rhs += *caps[e];
      }
      if (infinite || lhs <= rhs) continue;
      out.passes = false;
      out.sources = w;
      for (int i : members(t)) out.source_side.push_back(p.nodes[static_cast<std::size_t>(i)]);
      out.lhs = lhs;
      out.rhs = rhs;
      return out;
    }
  }
  return out;
}

FdResult fd_bound(const NetworkProblem& p, const CapacityTuple& c) {
  p.validate();
  std::vector<std::optional<Rational>> caps;
  std::vector<std::size_t> finite;
  for (std::size_t e = 0; e < p.edges.size(); ++e) {
    caps.push_back(capacity_of(p, c, e));
    if (caps.back()) finite.push_back(e);
  }
  if (finite.size() > 20) throw PreconditionError("edge-set enumeration is limited to 20 finite-capacity edges");

  const std::size_t ns = p.sources.size(), ne = p.edges.size();
  std::vector<std::vector<std::size_t>> edge_src(ne), edge_in(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    edge_src[e] = p.sources_at(p.edges[e].tail);
    edge_in[e] = p.in_edges(p.edges[e].tail);
  }

  // Does U_A together with Y_{W^c} determine every source in W?
  auto resolves = [&](Subset w, Subset a) {
    std::vector<bool> src(ns), edge(ne, false);
    for (std::size_t s = 0; s < ns; ++s) src[s] = !contains(w, static_cast<int>(s));
    for (std::size_t i = 0; i < finite.size(); ++i) {
      if (contains(a, static_cast<int>(i))) edge[finite[i]] = true;
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t e = 0; e < ne; ++e) {
        if (edge[e]) continue;
        const bool ok = std::all_of(edge_src[e].begin(), edge_src[e].end(), [&](std::size_t s) { return src[s]; }) &&
                        std::all_of(edge_in[e].begin(), edge_in[e].end(), [&](std::size_t f) { return edge[f]; });
        if (ok) edge[e] = changed = true;
      }
      for (std::size_t s = 0; s < ns; ++s) {
        if (src[s]) continue;
        for (const auto& u : p.sources[s].demanded_at) {
          const auto at_u = p.sources_at(u);
          if (std::find(at_u.begin(), at_u.end(), s) != at_u.end()) continue;
          const auto in_u = p.in_edges(u);
          const bool ok = std::all_of(at_u.begin(), at_u.end(), [&](std::size_t t) { return src[t]; }) &&
                          std::all_of(in_u.begin(), in_u.end(), [&](std::size_t f) { return edge[f]; });
          if (ok) {
            src[s] = changed = true;
            break;
          }
        }
      }
    }
    for (int s : members(w)) {
      if (!src[static_cast<std::size_t>(s)]) return false;
    }
    return true;
  };

  const EntropyVector hv = p.source_entropy_vector();
  FdResult out;
  for (Subset w = 1; w <= full_subset(static_cast<int>(ns)); ++w) {
    const Rational lhs = conditional_source_entropy(hv, w);
    if (lhs == 0) continue;
    std::optional<Rational> best;
    Subset best_set = 0;
    for (Subset a = 0; a <= full_subset(static_cast<int>(finite.size())); ++a) {
      Rational cost = 0;
      for (int i : members(a)) cost += *caps[finite[static_cast<std::size_t>(i)]];
      if (best && cost >= *best) continue;
      if (!resolves(w, a)) continue;
      best = cost;
      best_set = a;
    }
    std::string wname;
    for (int s : members(w)) wname += (wname.empty() ? "" : ",") + p.sources[static_cast<std::size_t>(s)].id;
    if (!best) {
      out.warnings.push_back("no finite-capacity edge set determines {" + wname + "}; bound is vacuous");
      continue;
    }
    if (lhs > *best) {
      out.passes = false;
      out.sources = w;
      for (int i : members(best_set)) out.edge_set.push_back(p.edges[finite[static_cast<std::size_t>(i)]].id);
      out.lhs = lhs;
      out.rhs = *best;
      return out;
    }
  }
  return out;
}

}  // namespace entrolab::network
