#include "entrolab/network/problem.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "entrolab/errors.hpp"

namespace entrolab::network {
namespace {

std::string node_name(const Json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long>());
  throw ParseError(where, "expected a node name");
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where, std::string("missing field '") + key + "'");
  return obj.at(key);
}

bool is_infinite_text(const std::string& s) { return s == "inf" || s == "infinity" || s == "∞"; }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, sep);) {
    part.erase(0, part.find_first_not_of(" \t"));
    part.erase(part.find_last_not_of(" \t") + 1);
    out.push_back(part);
  }
  return out;
}

}  // namespace

void NetworkProblem::validate() const {
  std::set<std::string> node_set;
  for (const auto& n : nodes) {
    if (n.empty() || !node_set.insert(n).second) throw DomainError("node names must be unique and nonempty");
  }
  std::set<std::string> ids;
  for (const auto& e : edges) {
    if (!ids.insert(e.id).second) throw DomainError("duplicate variable id '" + e.id + "'");
    if (!node_set.count(e.tail) || !node_set.count(e.head)) throw DomainError("edge '" + e.id + "' has an unknown endpoint");
    if (e.tail == e.head) throw DomainError("edge '" + e.id + "' is a self loop");
    if (e.capacity && *e.capacity < 0) throw DomainError("edge '" + e.id + "' has a negative capacity");
  }
  if (sources.empty()) throw DomainError("network has no sources");
  for (const auto& s : sources) {
    if (!ids.insert(s.id).second) throw DomainError("duplicate variable id '" + s.id + "'");
    if (!node_set.count(s.at)) throw DomainError("source '" + s.id + "' placed at an unknown node");
    for (const auto& u : s.demanded_at) {
      if (!node_set.count(u)) throw DomainError("source '" + s.id + "' demanded at an unknown node");
    }
  }
  if (sources.size() + edges.size() > static_cast<std::size_t>(kMaxGroundSize)) {
    throw DomainError("too many random variables for the LP");
  }
  if (model.distribution.has_value() == model.entropies.has_value()) {
    throw DomainError("exactly one of a distribution or an entropy vector is required");
  }
  std::set<std::string> want;
  for (const auto& s : sources) want.insert(s.id);
  std::set<std::string> have;
  if (model.distribution) {
    for (const auto& v : model.distribution->variables()) have.insert(v.name);
  } else {
    for (const auto& v : model.entropies->ground().names()) have.insert(v);
    if (!is_polymatroid(*model.entropies).ok) throw DomainError("source entropy vector is not a polymatroid");
  }
  if (have != want) throw DomainError("source model variables do not match the source ids");
}

std::vector<std::size_t> NetworkProblem::in_edges(const std::string& node) const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].head == node) out.push_back(e);
  }
  return out;
}

std::vector<std::size_t> NetworkProblem::sources_at(const std::string& node) const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < sources.size(); ++s) {
    if (sources[s].at == node) out.push_back(s);
  }
  return out;
}

JointDistribution NetworkProblem::source_distribution() const {
  if (!model.distribution) throw PreconditionError("an explicit source distribution is required");
  const GroundSet g = model.distribution->ground();
  std::vector<int> idx;
  for (const auto& s : sources) idx.push_back(*g.index_of(s.id));
  return model.distribution->project(idx);
}

EntropyVector NetworkProblem::source_entropy_vector() const {
  if (model.distribution) return entropy_vector_of(source_distribution());
  const EntropyVector& h = *model.entropies;
  std::vector<std::string> names;
  for (const auto& s : sources) names.push_back(s.id);
  GroundSet g(names);
  std::vector<Rational> values(g.coordinate_count());
  for (Subset w = 1; w <= g.full(); ++w) {
    Subset m = 0;
    for (int i : members(w)) m |= singleton(*h.ground().index_of(names[static_cast<std::size_t>(i)]));
    values[coordinate(w)] = h[m];
  }
  return EntropyVector(std::move(g), std::move(values), h.exact());
}

Rational NetworkProblem::source_entropy(Subset w) const { return source_entropy_vector()[w]; }

std::optional<Rational> capacity_of(const NetworkProblem& p, const CapacityTuple& c, std::size_t e) {
  const Edge& edge = p.edges.at(e);
  if (auto it = c.find(edge.id); it != c.end()) return it->second;
  if (edge.infinite) return std::nullopt;
  if (edge.capacity) return edge.capacity;
  throw DomainError("no capacity given for edge '" + edge.id + "'");
}

CapacityTuple parse_capacities(const NetworkProblem& p, const std::string& text) {
  CapacityTuple out;
  if (text.empty()) return out;
  auto value = [](const std::string& v) -> std::optional<Rational> {
    if (is_infinite_text(v)) return std::nullopt;
    Rational r = parse_rational(v);
    if (r < 0) throw ParseError(v, "negative capacity");
    return r;
  };
  const auto parts = split(text, ',');
  if (text.find('=') != std::string::npos) {
    for (const auto& part : parts) {
      const auto eq = part.find('=');
      if (eq == std::string::npos) throw ParseError(part, "expected edge=value");
      const std::string id = part.substr(0, eq);
      const bool known = std::any_of(p.edges.begin(), p.edges.end(), [&](const Edge& e) { return e.id == id; });
      if (!known) throw ParseError(part, "unknown edge '" + id + "'");
      out[id] = value(part.substr(eq + 1));
    }
    return out;
  }
  std::vector<std::string> free_edges;
  for (const auto& e : p.edges) {
    if (!e.infinite && !e.capacity) free_edges.push_back(e.id);
  }
  if (parts.size() != free_edges.size()) {
    throw ParseError(text, "expected " + std::to_string(free_edges.size()) + " capacities");
  }
  for (std::size_t i = 0; i < parts.size(); ++i) out[free_edges[i]] = value(parts[i]);
  return out;
}

NetworkProblem problem_from_json(const Json& value) {
  NetworkProblem p;
  if (value.contains("name")) p.name = value.at("name").get<std::string>();
  const Json& nodes = field(value, "nodes", "problem");
  if (!nodes.is_array()) throw ParseError("problem.nodes", "expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) p.nodes.push_back(node_name(nodes[i], "problem.nodes[" + std::to_string(i) + "]"));
  const Json& edges = field(value, "edges", "problem");
  if (!edges.is_array()) throw ParseError("problem.edges", "expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string w = "problem.edges[" + std::to_string(i) + "]";
    Edge e;
    e.id = field(edges[i], "id", w).get<std::string>();
    e.tail = node_name(field(edges[i], "tail", w), w + ".tail");
    e.head = node_name(field(edges[i], "head", w), w + ".head");
    if (edges[i].contains("capacity") && !edges[i].at("capacity").is_null()) {
      const Json& c = edges[i].at("capacity");
      if (c.is_string() && is_infinite_text(c.get<std::string>())) {
        e.infinite = true;
      } else {
        e.capacity = rational_from_json(c, w + ".capacity");
      }
    }
    p.edges.push_back(std::move(e));
  }
  const Json& sources = field(value, "sources", "problem");
  if (!sources.is_array()) throw ParseError("problem.sources", "expected an array");
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const std::string w = "problem.sources[" + std::to_string(i) + "]";
    Source s;
    s.id = field(sources[i], "id", w).get<std::string>();
    s.at = node_name(field(sources[i], "at", w), w + ".at");
    if (sources[i].contains("demanded_at")) {
      for (const auto& u : sources[i].at("demanded_at")) s.demanded_at.push_back(node_name(u, w + ".demanded_at"));
    }
    p.sources.push_back(std::move(s));
  }
  if (value.contains("distribution")) {
    p.model.distribution = distribution_from_json(value.at("distribution"), "problem.distribution");
  } else if (value.contains("entropies")) {
    p.model.entropies = entropy_vector_from_json(value.at("entropies"), "problem.entropies");
  } else {
    throw ParseError("problem", "missing 'distribution' or 'entropies'");
  }
  try {
    p.validate();
  } catch (const DomainError& e) {
    throw ParseError("problem", e.what());
  }
  return p;
}

Json problem_to_json(const NetworkProblem& p) {
  Json out = Json::object();
  if (!p.name.empty()) out["name"] = p.name;
  out["nodes"] = p.nodes;
  Json edges = Json::array();
  for (const auto& e : p.edges) {
    Json j = {{"id", e.id}, {"tail", e.tail}, {"head", e.head}};
    if (e.infinite) {
      j["capacity"] = "inf";
    } else if (e.capacity) {
      j["capacity"] = format_rational(*e.capacity);
    }
    edges.push_back(std::move(j));
  }
  out["edges"] = edges;
  Json sources = Json::array();
  for (const auto& s : p.sources) sources.push_back({{"id", s.id}, {"at", s.at}, {"demanded_at", s.demanded_at}});
  out["sources"] = sources;
  if (p.model.distribution) out["distribution"] = distribution_to_json(*p.model.distribution);
  if (p.model.entropies) out["entropies"] = entropy_vector_to_json(*p.model.entropies);
  return out;
}

NetworkProblem load_problem(const std::filesystem::path& path) { return problem_from_json(read_json_file(path)); }

void save_problem(const NetworkProblem& p, const std::filesystem::path& path) { write_json_file(path, problem_to_json(p)); }

}  // namespace entrolab::network
