#include "entrolab/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "entrolab/errors.hpp"

namespace entrolab {

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), "cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string(), e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& value) {
  std::ofstream out(path);
  if (!out) throw ParseError(path.string(), "cannot write file");
  out << value.dump(2) << "\n";
}

Rational rational_from_json(const Json& value, const std::string& where) {
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where, e.what());
    }
  }
  if (value.is_number_integer()) return Rational(value.get<long>());
  if (value.is_number_float()) {
    // decimal text of the number, not its binary expansion
    return parse_rational(value.dump());
  }
  throw ParseError(where, "expected a number or rational string");
}

namespace {

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where, std::string("missing field '") + key + "'");
  return obj.at(key);
}

}  // namespace

JointDistribution distribution_from_json(const Json& value, const std::string& where) {
  const Json& vars = field(value, "variables", where);
  if (!vars.is_array() || vars.empty()) throw ParseError(where + ".variables", "expected a nonempty array");
  std::vector<Variable> variables;
  std::vector<std::map<std::string, std::uint32_t>> lookup;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string w = where + ".variables[" + std::to_string(i) + "]";
    Variable v;
    const Json& name = field(vars[i], "name", w);
    if (!name.is_string()) throw ParseError(w + ".name", "expected a string");
    v.name = name.get<std::string>();
    const Json& alpha = field(vars[i], "alphabet", w);
    if (!alpha.is_array() || alpha.empty()) throw ParseError(w + ".alphabet", "expected a nonempty array");
    std::map<std::string, std::uint32_t> idx;
    for (const auto& a : alpha) {
      const std::string sym = a.is_string() ? a.get<std::string>() : a.dump();
      if (!idx.emplace(sym, static_cast<std::uint32_t>(v.alphabet.size())).second) {
        throw ParseError(w + ".alphabet", "duplicate symbol '" + sym + "'");
      }
      v.alphabet.push_back(sym);
    }
    variables.push_back(std::move(v));
    lookup.push_back(std::move(idx));
  }
  const Json& pmf = field(value, "pmf", where);
  if (!pmf.is_array()) throw ParseError(where + ".pmf", "expected an array");
  std::vector<Outcome> outcomes;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    const std::string w = where + ".pmf[" + std::to_string(k) + "]";
    const Json& out = field(pmf[k], "outcome", w);
    if (!out.is_array() || out.size() != variables.size()) {
      throw ParseError(w + ".outcome", "expected " + std::to_string(variables.size()) + " symbols");
    }
    Outcome o;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const std::string sym = out[i].is_string() ? out[i].get<std::string>() : out[i].dump();
      auto it = lookup[i].find(sym);
      if (it == lookup[i].end()) throw ParseError(w + ".outcome", "symbol '" + sym + "' not in alphabet");
      o.symbols.push_back(it->second);
    }
    o.probability = rational_from_json(field(pmf[k], "p", w), w + ".p");
    outcomes.push_back(std::move(o));
  }
  try {
    return JointDistribution(std::move(variables), std::move(outcomes));
  } catch (const DomainError& e) {
    throw ParseError(where, e.what());
  }
}

Json distribution_to_json(const JointDistribution& dist) {
  Json vars = Json::array();
  for (const auto& v : dist.variables()) vars.push_back({{"name", v.name}, {"alphabet", v.alphabet}});
  Json pmf = Json::array();
  for (const auto& o : dist.outcomes()) {
    Json outcome = Json::array();
    for (std::size_t i = 0; i < o.symbols.size(); ++i) outcome.push_back(dist.variables()[i].alphabet[o.symbols[i]]);
    pmf.push_back({{"outcome", outcome}, {"p", format_rational(o.probability)}});
  }
  return {{"variables", vars}, {"pmf", pmf}};
}

EntropyVector entropy_vector_from_json(const Json& value, const std::string& where) {
  const Json& vars = field(value, "variables", where);
  if (!vars.is_array() || vars.empty()) throw ParseError(where + ".variables", "expected a nonempty array");
  std::vector<std::string> names;
  for (const auto& v : vars) {
    if (!v.is_string()) throw ParseError(where + ".variables", "expected strings");
    names.push_back(v.get<std::string>());
  }
  GroundSet ground = [&] {
    try {
      return GroundSet(names);
    } catch (const DomainError& e) {
      throw ParseError(where + ".variables", e.what());
    }
  }();
  const Json& ents = field(value, "entropies", where);
  if (!ents.is_object()) throw ParseError(where + ".entropies", "expected an object");
  std::vector<Rational> values(ground.coordinate_count());
  std::vector<bool> seen(values.size(), false);
  for (const auto& [key, v] : ents.items()) {
    std::vector<std::string> parts;
    std::stringstream ss(key);
    for (std::string part; std::getline(ss, part, ',');) parts.push_back(part);
    Subset s = 0;
    try {
      s = ground.subset_of(parts);
    } catch (const DomainError& e) {
      throw ParseError(where + ".entropies." + key, e.what());
    }
    if (s == 0) throw ParseError(where + ".entropies", "empty subset key");
    values[coordinate(s)] = rational_from_json(v, where + ".entropies." + key);
    seen[coordinate(s)] = true;
  }
  for (Subset s = 1; s <= ground.full(); ++s) {
    if (!seen[coordinate(s)]) throw ParseError(where + ".entropies", "entropy of {" + ground.format(s) + "} missing");
  }
  return EntropyVector(std::move(ground), std::move(values), true);
}

Json entropy_vector_to_json(const EntropyVector& h) {
  Json ents = Json::object();
  for (Subset s = 1; s <= h.ground().full(); ++s) ents[h.ground().format(s)] = format_rational(h[s]);
  return {{"variables", h.ground().names()}, {"entropies", ents}};
}

}  // namespace entrolab
