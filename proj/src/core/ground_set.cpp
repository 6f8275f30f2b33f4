#include "entrolab/ground_set.hpp"

#include <set>

#include "entrolab/errors.hpp"

namespace entrolab {

GroundSet::GroundSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > static_cast<std::size_t>(kMaxGroundSize)) {
    throw DomainError("ground set larger than " + std::to_string(kMaxGroundSize) + " variables");
  }
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw DomainError("empty variable label");
    if (!seen.insert(n).second) throw DomainError("duplicate variable label '" + n + "'");
  }
}

std::optional<int> GroundSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

Subset GroundSet::subset_of(const std::vector<std::string>& names) const {
  Subset s = 0;
  for (const auto& n : names) {
    auto i = index_of(n);
    if (!i) throw DomainError("unknown variable '" + n + "'");
    s |= singleton(*i);
  }
  return s;
}

std::string GroundSet::format(Subset set, std::string_view separator) const {
  std::string out;
  for (int i : members(set)) {
    if (!out.empty()) out += separator;
    out += name(i);
  }
  return out;
}

}  // namespace entrolab
