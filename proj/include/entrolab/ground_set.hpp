#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entrolab/subset.hpp"

namespace entrolab {

/// Ordered, uniquely labelled set of random variables.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> index_of(std::string_view name) const;

  Subset full() const { return full_subset(size()); }
  std::size_t coordinate_count() const { return static_cast<std::size_t>(full()); }

  /// Subset from variable names; throws DomainError on an unknown name.
  Subset subset_of(const std::vector<std::string>& names) const;
  /// Comma-separated member names, e.g. "Y1,U2".
  std::string format(Subset set, std::string_view separator = ",") const;

  bool operator==(const GroundSet& other) const = default;

 private:
  std::vector<std::string> names_;
};

}  // namespace entrolab
