#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entrolab/distribution.hpp"
#include "entrolab/entropy.hpp"
#include "entrolab/io.hpp"

namespace entrolab::network {

struct Edge {
  std::string id;  // also the name of the edge variable U_e
  std::string tail;
  std::string head;
  /// Fixed capacity from the problem file. nullopt with `infinite` false
  /// means the capacity is a free parameter supplied per query.
  std::optional<Rational> capacity;
  bool infinite = false;
};

struct Source {
  std::string id;  // name of the source variable
  std::string at;
  std::vector<std::string> demanded_at;
};

/// Either an explicit joint pmf of the sources (variables named by source
/// id) or just their entropy vector.
struct SourceModel {
  std::optional<JointDistribution> distribution;
  std::optional<EntropyVector> entropies;
};

struct NetworkProblem {
  std::string name;
  std::vector<std::string> nodes;
  std::vector<Edge> edges;
  std::vector<Source> sources;
  SourceModel model;

  /// Throws DomainError when ids collide, an edge is a self loop, a node is
  /// unknown, or the source model does not cover the sources.
  void validate() const;

  std::vector<std::size_t> in_edges(const std::string& node) const;
  std::vector<std::size_t> sources_at(const std::string& node) const;

  /// H(Y_W) for a nonempty mask over `sources` (bit i = sources[i]).
  Rational source_entropy(Subset w) const;
  EntropyVector source_entropy_vector() const;
  /// Distribution with variables reordered to match `sources`.
  JointDistribution source_distribution() const;
};

/// Capacity per edge id; nullopt is an infinite capacity.
using CapacityTuple = std::map<std::string, std::optional<Rational>>;

/// Capacity of edge e under C: C overrides the file, nullopt = infinite.
/// Throws DomainError for a free edge missing from C.
std::optional<Rational> capacity_of(const NetworkProblem& p, const CapacityTuple& c, std::size_t e);

/// "e1=1,e2=1/2,e3=inf" or a positional list "1,1,inf" assigned to the
/// edges whose capacity is free, in file order.
CapacityTuple parse_capacities(const NetworkProblem& p, const std::string& text);

NetworkProblem problem_from_json(const Json& value);
Json problem_to_json(const NetworkProblem& p);
NetworkProblem load_problem(const std::filesystem::path& path);
void save_problem(const NetworkProblem& p, const std::filesystem::path& path);

}  // namespace entrolab::network
