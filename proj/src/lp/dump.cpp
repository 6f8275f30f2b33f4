#include "entrolab/lp/dump.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "entrolab/errors.hpp"

namespace entrolab::lp {
namespace {

void write_functional(std::ostream& out, const LinearFunctional& f, const GroundSet& ground) {
  if (f.empty()) {
    out << "0";
    return;
  }
  bool first = true;
  for (const Term& t : f.terms()) {
    if (!first) out << ' ';
    first = false;
    out << format_rational(t.coeff) << "*h{" << ground.format(t.subset) << '}';
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

LinearFunctional parse_functional(std::istringstream& tokens, std::string& tail, const GroundSet& ground,
                                  const std::string& where) {
  std::vector<Term> terms;
  std::string tok;
  while (tokens >> tok) {
    if (tok == ">=" || tok == "<=" || tok == "=") {
      tail = tok;
      break;
    }
    if (tok == "0") continue;
    const auto star = tok.find("*h{");
    if (star == std::string::npos || tok.back() != '}') throw ParseError(where, "bad term '" + tok + "'");
    Rational coeff;
    try {
      coeff = parse_rational(tok.substr(0, star));
    } catch (const ParseError&) {
      throw ParseError(where, "bad coefficient in '" + tok + "'");
    }
    const std::string inner = tok.substr(star + 3, tok.size() - star - 4);
    std::vector<std::string> names;
    std::stringstream ss(inner);
    for (std::string n; std::getline(ss, n, ',');) names.push_back(n);
    Subset s = 0;
    try {
      s = ground.subset_of(names);
    } catch (const DomainError& e) {
      throw ParseError(where, e.what());
    }
    if (s == 0) throw ParseError(where, "empty subset in '" + tok + "'");
    terms.push_back({s, coeff});
  }
  return LinearFunctional(std::move(terms));
}

}  // namespace

void write_dump(std::ostream& out, const LinearSystem& sys) {
  out << "vars";
  for (const auto& n : sys.ground().names()) out << ' ' << n;
  out << '\n';
  for (const Constraint& c : sys.constraints()) {
    write_functional(out, c.functional, sys.ground());
    out << ' ' << relation_symbol(c.relation) << ' ' << format_rational(c.rhs);
    if (!c.label.empty()) out << "  # " << c.label;
    out << '\n';
  }
  if (sys.objective()) {
    out << "min ";
    write_functional(out, *sys.objective(), sys.ground());
    out << '\n';
  }
}

std::string dump_string(const LinearSystem& sys) {
  std::ostringstream out;
  write_dump(out, sys);
  return out.str();
}

LinearSystem read_dump(std::istream& in) {
  std::optional<LinearSystem> sys;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = "line " + std::to_string(lineno);
    std::string label;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      label = trim(line.substr(hash + 1));
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream tokens(line);
    if (!sys) {
      std::string head;
      tokens >> head;
      if (head != "vars") throw ParseError(where, "expected 'vars' header");
      std::vector<std::string> names;
      for (std::string n; tokens >> n;) names.push_back(n);
      try {
        sys.emplace(GroundSet(std::move(names)));
      } catch (const DomainError& e) {
        throw ParseError(where, e.what());
      }
      continue;
    }
    if (line.rfind("min ", 0) == 0 || line == "min") {
      std::string head, tail;
      tokens >> head;
      sys->set_objective(parse_functional(tokens, tail, sys->ground(), where));
      if (!tail.empty()) throw ParseError(where, "objective has a relation");
      continue;
    }
    std::string rel;
    LinearFunctional f = parse_functional(tokens, rel, sys->ground(), where);
    if (rel.empty()) throw ParseError(where, "missing relation");
    std::string rhs_text, extra;
    if (!(tokens >> rhs_text)) throw ParseError(where, "missing right-hand side");
    if (tokens >> extra) throw ParseError(where, "trailing text '" + extra + "'");
    Rational rhs;
    try {
      rhs = parse_rational(rhs_text);
    } catch (const ParseError&) {
      throw ParseError(where, "bad right-hand side '" + rhs_text + "'");
    }
    const Relation r = rel == ">=" ? Relation::GreaterEq : rel == "<=" ? Relation::LessEq : Relation::Equal;
    sys->add(std::move(f), r, std::move(rhs), label);
  }
  if (!sys) throw ParseError("line 1", "empty dump");
  return std::move(*sys);
}

}  // namespace entrolab::lp
