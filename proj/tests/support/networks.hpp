#pragma once

// Small networks with hand-written codes, used by the bound regression
// tests. Every variable is a function of a few independent uniform bits.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "entrolab/entropy.hpp"
#include "entrolab/network/example1.hpp"
#include "entrolab/network/problem.hpp"

namespace fixtures {

using entrolab::JointDistribution;
using entrolab::Rational;
using entrolab::network::Edge;
using entrolab::network::NetworkProblem;
using entrolab::network::Source;

using Bits = std::vector<int>;
using Symbol = std::function<std::string(const Bits&)>;

struct CodedInstance {
  NetworkProblem problem;
  // Distribution over the sources and every edge variable whose entropy
  // vector satisfies all base LP rows at the witness capacities.
  JointDistribution witness;
};

inline JointDistribution from_bits(int bits, const std::vector<std::pair<std::string, Symbol>>& vars) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::set<std::string>> alphabets(vars.size());
  for (int w = 0; w < (1 << bits); ++w) {
    Bits b(static_cast<std::size_t>(bits));
    for (int i = 0; i < bits; ++i) b[static_cast<std::size_t>(i)] = (w >> i) & 1;
    std::vector<std::string> row;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      row.push_back(vars[v].second(b));
      alphabets[v].insert(row.back());
    }
    rows.push_back(std::move(row));
  }
  std::vector<entrolab::Variable> variables;
  for (std::size_t v = 0; v < vars.size(); ++v)
    variables.push_back({vars[v].first, {alphabets[v].begin(), alphabets[v].end()}});
  std::map<std::vector<std::uint32_t>, Rational> mass;
  for (const auto& row : rows) {
    std::vector<std::uint32_t> sym;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      const auto& a = variables[v].alphabet;
      sym.push_back(static_cast<std::uint32_t>(std::find(a.begin(), a.end(), row[v]) - a.begin()));
    }
    mass[sym] += Rational(1, 1 << bits);
  }
  std::vector<entrolab::Outcome> outs;
  for (auto& [s, p] : mass) outs.push_back({s, p});
  return JointDistribution(std::move(variables), std::move(outs));
}

inline Symbol bit(int i) {
  return [i](const Bits& b) { return std::to_string(b[static_cast<std::size_t>(i)]); };
}
inline Symbol bits(std::vector<int> idx) {
  return [idx](const Bits& b) {
    std::string s;
    for (int i : idx) s += std::to_string(b[static_cast<std::size_t>(i)]);
    return s;
  };
}
inline Symbol xor_of(int i, int j) {
  return [i, j](const Bits& b) {
    return std::to_string(b[static_cast<std::size_t>(i)] ^ b[static_cast<std::size_t>(j)]);
  };
}

inline Edge free_edge(std::string id, std::string tail, std::string head) {
  return {std::move(id), std::move(tail), std::move(head), std::nullopt, false};
}
inline Edge open_edge(std::string id, std::string tail, std::string head) {
  return {std::move(id), std::move(tail), std::move(head), std::nullopt, true};
}

inline CodedInstance make(std::string name, std::vector<std::string> nodes, std::vector<Edge> edges,
                          std::vector<Source> sources, int nbits,
                          const std::vector<std::pair<std::string, Symbol>>& vars) {
  CodedInstance c{{}, from_bits(nbits, vars)};
  c.problem.name = std::move(name);
  c.problem.nodes = std::move(nodes);
  c.problem.edges = std::move(edges);
  c.problem.sources = std::move(sources);
  std::vector<int> idx;
  for (std::size_t i = 0; i < c.problem.sources.size(); ++i) idx.push_back(static_cast<int>(i));
  c.problem.model.distribution = c.witness.project(idx);
  c.problem.validate();
  return c;
}

// Example 1 first, then nine synthetic instances.
inline std::vector<CodedInstance> regression_suite() {
  std::vector<CodedInstance> out;
  out.push_back({entrolab::network::example1_problem(), entrolab::network::example1_witness_distribution()});

  out.push_back(make("single-edge", {"s", "t"}, {free_edge("e", "s", "t")}, {{"Y1", "s", {"t"}}}, 1,
                     {{"Y1", bit(0)}, {"e", bit(0)}}));

  out.push_back(make("line", {"s", "r", "t"}, {free_edge("e1", "s", "r"), free_edge("e2", "r", "t")},
                     {{"Y1", "s", {"t"}}}, 2, {{"Y1", bits({0, 1})}, {"e1", bits({0, 1})}, {"e2", bits({0, 1})}}));

  out.push_back(make("butterfly", {"a", "b", "c", "d", "t1", "t2"},
                     {free_edge("e1", "a", "t1"), free_edge("e2", "a", "c"), free_edge("e3", "b", "c"),
                      free_edge("e4", "b", "t2"), free_edge("e5", "c", "d"), free_edge("e6", "d", "t1"),
                      free_edge("e7", "d", "t2")},
                     {{"Y1", "a", {"t1", "t2"}}, {"Y2", "b", {"t1", "t2"}}}, 2,
                     {{"Y1", bit(0)}, {"Y2", bit(1)}, {"e1", bit(0)}, {"e2", bit(0)}, {"e3", bit(1)},
                      {"e4", bit(1)}, {"e5", xor_of(0, 1)}, {"e6", xor_of(0, 1)}, {"e7", xor_of(0, 1)}}));

  out.push_back(make("parallel", {"s", "t"}, {free_edge("e1", "s", "t"), free_edge("e2", "s", "t")},
                     {{"Y1", "s", {"t"}}}, 2, {{"Y1", bits({0, 1})}, {"e1", bit(0)}, {"e2", bit(1)}}));

  out.push_back(make("diamond", {"s", "a", "b", "t"},
                     {free_edge("e1", "s", "a"), free_edge("e2", "s", "b"), free_edge("e3", "a", "t"),
                      free_edge("e4", "b", "t")},
                     {{"Y1", "s", {"t"}}}, 2,
                     {{"Y1", bits({0, 1})}, {"e1", bit(0)}, {"e2", bit(1)}, {"e3", bit(0)}, {"e4", bit(1)}}));

  out.push_back(make("correlated-pair", {"n1", "n2", "t"}, {free_edge("e1", "n1", "t"), free_edge("e2", "n2", "t")},
                     {{"Y1", "n1", {"t"}}, {"Y2", "n2", {"t"}}}, 3,
                     {{"Y1", bits({0, 1})}, {"Y2", bits({0, 2})}, {"e1", bits({0, 1})}, {"e2", bit(2)}}));

  out.push_back(make("open-relay", {"s", "r", "t"}, {free_edge("e1", "s", "r"), open_edge("e2", "r", "t")},
                     {{"Y1", "s", {"t"}}}, 1, {{"Y1", bit(0)}, {"e1", bit(0)}, {"e2", bit(0)}}));

  out.push_back(make("shared-part", {"s", "m", "t1", "t2"},
                     {free_edge("e0", "s", "m"), open_edge("e1", "m", "t1"), open_edge("e2", "m", "t2"),
                      free_edge("e3", "s", "t1"), free_edge("e4", "s", "t2")},
                     {{"Y1", "s", {"t1"}}, {"Y2", "s", {"t2"}}}, 3,
                     {{"Y1", bits({0, 1})}, {"Y2", bits({0, 2})}, {"e0", bit(0)}, {"e1", bit(0)}, {"e2", bit(0)},
                      {"e3", bit(1)}, {"e4", bit(2)}}));

  out.push_back(make("relayed-multicast", {"s", "t1", "t2"},
                     {free_edge("e1", "s", "t1"), free_edge("e2", "s", "t2"), free_edge("e3", "t1", "t2")},
                     {{"Y1", "s", {"t1", "t2"}}}, 2,
                     {{"Y1", bits({0, 1})}, {"e1", bits({0, 1})}, {"e2", bit(1)}, {"e3", bit(0)}}));
  return out;
}

// C_e = H(U_e) of the witness on every edge without a fixed capacity.
inline entrolab::network::CapacityTuple witness_capacities(const CodedInstance& c) {
  entrolab::network::CapacityTuple t;
  const auto ground = c.witness.ground();
  for (const auto& e : c.problem.edges) {
    if (e.infinite || e.capacity) continue;
    t[e.id] = entrolab::entropy_of(c.witness, ground.subset_of({e.id}));
  }
  return t;
}

// Entropy vector of the witness on the given ground set (names must exist).
inline entrolab::EntropyVector witness_vector(const CodedInstance& c, const entrolab::GroundSet& ground) {
  const auto names = c.witness.ground();
  std::vector<int> idx;
  for (const auto& n : ground.names()) idx.push_back(*names.index_of(n));
  return entrolab::entropy_vector_of(c.witness.project(idx));
}

}  // namespace fixtures
