#include "entrolab/recovery/multivar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "entrolab/errors.hpp"

namespace entrolab::recovery {
namespace {

std::size_t cell_index(const std::vector<int>& coords, const std::vector<int>& dims) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) idx = idx * static_cast<std::size_t>(dims[i]) + static_cast<std::size_t>(coords[i]);
  return idx;
}

std::size_t cell_count(const std::vector<int>& dims) {
  std::size_t n = 1;
  for (int d : dims) n *= static_cast<std::size_t>(d);
  return n;
}

// -sum m log2(m / total) over groups of atoms
long double grouped_entropy(const std::vector<std::vector<std::size_t>>& groups, const std::vector<long double>& p) {
  long double total = 0;
  std::vector<long double> mass;
  for (const auto& g : groups) {
    long double m = 0;
    for (std::size_t a : g) m += p[a];
    mass.push_back(m);
    total += m;
  }
  long double h = 0;
  for (long double m : mass) {
    if (m > 0) h -= m * std::log2(m / total);
  }
  return h;
}

}  // namespace

MultivarFamily build_multivar_indicators(const JointDistribution& dist) {
  MultivarFamily f;
  for (const auto& v : dist.variables()) {
    if (v.alphabet.size() < 3) throw PreconditionError("variable '" + v.name + "' has fewer than 3 values");
    f.dims.push_back(static_cast<int>(v.alphabet.size()));
  }
  const std::size_t n = cell_count(f.dims);
  if (n > 12) throw DomainError("flattened sample space limited to 12 cells");
  std::vector<Rational> mass(n, 0);
  for (const auto& o : dist.outcomes()) {
    std::vector<int> c(o.symbols.begin(), o.symbols.end());
    mass[cell_index(c, f.dims)] += o.probability;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t k : order) {
    if (mass[k] == 0) throw DomainError("every cell of the product needs positive probability");
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return mass[a] > mass[b]; });
  std::vector<Rational> sorted;
  for (std::size_t k : order) {
    sorted.push_back(mass[k]);
    std::vector<int> c(f.dims.size());
    std::size_t rest = k;
    for (std::size_t i = f.dims.size(); i-- > 0;) {
      c[i] = static_cast<int>(rest % static_cast<std::size_t>(f.dims[i]));
      rest /= static_cast<std::size_t>(f.dims[i]);
    }
    f.coords.push_back(std::move(c));
  }
  f.family = build_indicator_family(sorted);
  return f;
}

ComputedOracle multivar_oracle(const MultivarFamily& f, const std::vector<std::size_t>& order) {
  const ComputedOracle base = family_oracle(f.family, order);
  std::vector<long double> pmf;
  for (const auto& p : f.family.pmf) pmf.push_back(to_long_double(p));
  std::vector<std::vector<int>> values, axes(f.dims.size());
  std::vector<std::string> labels;
  for (std::size_t pos : order) {
    std::vector<int> v;
    for (int k = 0; k < f.family.n(); ++k) v.push_back(contains(f.family.members.at(pos), k) ? 1 : 0);
    values.push_back(std::move(v));
    labels.push_back(base.label(labels.size()));
  }
  for (const auto& c : f.coords) {
    for (std::size_t i = 0; i < c.size(); ++i) axes[i].push_back(c[i]);
  }
  return ComputedOracle(std::move(pmf), std::move(values), std::move(labels), std::move(axes));
}

MultivarRecovery recover_multivar(const EntropyOracle& oracle, const std::vector<int>& dims) {
  for (int d : dims) {
    if (d < 3) throw PreconditionError("every axis needs at least 3 values");
  }
  const std::size_t n = cell_count(dims);
  if (static_cast<std::size_t>(oracle.atoms()) != n) throw DomainError("axis sizes do not multiply to the alphabet size");
  if (oracle.axis_count() != static_cast<int>(dims.size())) throw DomainError("oracle does not expose every axis");

  MultivarRecovery out;
  out.dims = dims;
  out.atoms = recover_distribution(oracle);
  const auto& p = out.atoms.probabilities;
  // Every chain member separates one recovered atom from the rest, so
  // conditioning on all of them but those of a set R leaves exactly R and
  // atom 1 uncertain. H(V | chain minus R) then compares V on those atoms.
  auto uncertain_entropy = [&](Query v, const std::vector<std::size_t>& open) {
    std::vector<std::size_t> given;
    for (std::size_t a = 1; a < n; ++a) {
      if (std::find(open.begin(), open.end(), a) == open.end()) given.push_back(*out.atoms.member[a]);
    }
    v.members.insert(v.members.end(), given.begin(), given.end());
    return oracle.entropy(v) - oracle.entropy(Query{given, false, {}});
  };
  // atoms (0-based) that V separates from atom 1
  auto separated = [&](const Query& v) {
    std::vector<bool> out_side(n, false);
    for (std::size_t a = 1; a < n; ++a) out_side[a] = uncertain_entropy(v, {a}) > kPositive;
    return out_side;
  };

  out.fibers.resize(dims.size());
  std::vector<std::vector<int>> value_of(dims.size(), std::vector<int>(n, -1));
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const Query axis{{}, false, {static_cast<int>(i)}};
    const auto apart = separated(axis);
    std::vector<std::vector<std::size_t>> cells{{0}};
    for (std::size_t a = 1; a < n; ++a) {
      if (!apart[a]) cells[0].push_back(a);
    }
    for (std::size_t a = 1; a < n; ++a) {
      if (!apart[a]) continue;
      bool placed = false;
      for (std::size_t c = 1; c < cells.size() && !placed; ++c) {
        const std::size_t b = cells[c][0];
        const long double h = uncertain_entropy(axis, {a, b});
        const long double merged = grouped_entropy({{0}, {a, b}}, p);
        const long double split = grouped_entropy({{0}, {a}, {b}}, p);
        if (std::fabs(h - merged) <= 1e-9L) {
          cells[c].push_back(a);
          placed = true;
        } else if (std::fabs(h - split) > 1e-9L) {
          throw NotIndicatorConsistent("axis " + std::to_string(i + 1), "entropies fit no fiber structure");
        }
      }
      if (!placed) cells.push_back({a});
    }
    if (cells.size() != static_cast<std::size_t>(dims[i])) {
      throw NotIndicatorConsistent("axis " + std::to_string(i + 1), "found " + std::to_string(cells.size()) +
                                                                        " fibers, expected " + std::to_string(dims[i]));
    }
    std::vector<long double> mass;
    for (const auto& c : cells) {
      long double m = 0;
      for (std::size_t a : c) m += p[a];
      mass.push_back(m);
    }
    std::vector<std::size_t> ord(cells.size());
    std::iota(ord.begin(), ord.end(), 0);
    std::stable_sort(ord.begin(), ord.end(), [&](std::size_t x, std::size_t y) { return mass[x] > mass[y] + kTie; });
    for (std::size_t v = 0; v < ord.size(); ++v) {
      std::vector<int> atoms;
      for (std::size_t a : cells[ord[v]]) {
        atoms.push_back(static_cast<int>(a + 1));
        value_of[i][a] = static_cast<int>(v);
      }
      std::sort(atoms.begin(), atoms.end());
      out.fibers[i].push_back(std::move(atoms));
    }
  }
  {
    std::vector<int> hits(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<int> c;
      for (std::size_t i = 0; i < dims.size(); ++i) c.push_back(value_of[i][a]);
      if (++hits[cell_index(c, dims)] > 1) {
        throw NotIndicatorConsistent("alignment", "two atoms share a cell of the product grid");
      }
    }
  }

  out.joint.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<int> c;
    for (std::size_t i = 0; i < dims.size(); ++i) c.push_back(value_of[i][a]);
    out.joint[cell_index(c, dims)] = p[a];
  }

  // anchors: members that are functions of one axis and mark one fiber
  out.anchors.resize(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const Query axis{{}, false, {static_cast<int>(i)}};
    const long double h_axis = oracle.entropy(axis);
    std::vector<std::vector<bool>> sets;
    std::vector<std::size_t> ids;
    for (std::size_t b = 0; b < oracle.member_count(); ++b) {
      if (oracle.entropy(Query{{b}, false, {static_cast<int>(i)}}) - h_axis > kPositive) continue;
      sets.push_back(separated(Query{{b}, false, {}}));
      ids.push_back(b);
    }
    for (const auto& fiber : out.fibers[i]) {
      const bool holds_first = fiber.front() == 1;
      std::optional<std::size_t> anchor;
      for (std::size_t s = 0; s < sets.size() && !anchor; ++s) {
        bool same = true;
        for (std::size_t a = 1; a < n && same; ++a) {
          const bool in_fiber = std::find(fiber.begin(), fiber.end(), static_cast<int>(a + 1)) != fiber.end();
          same = sets[s][a] == (in_fiber != holds_first);
        }
        if (same) anchor = ids[s];
      }
      if (!anchor) throw NotIndicatorConsistent("anchors", "no member marks a fiber of axis " + std::to_string(i + 1));
      out.anchors[i].push_back(*anchor);
    }
  }
  return out;
}

std::vector<std::vector<std::vector<int>>> align_axes(const std::vector<long double>& q, const std::vector<long double>& p,
                                                      const std::vector<int>& dims, long double tolerance) {
  const std::size_t n = cell_count(dims);
  if (q.size() != n || p.size() != n) throw DomainError("pmf size does not match the axes");
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> pi(dims.size());
  auto check = [&]() {
    std::vector<int> x(dims.size(), 0), y(dims.size());
    for (std::size_t idx = 0; idx < n; ++idx) {
      for (std::size_t i = 0; i < dims.size(); ++i) y[i] = pi[i][static_cast<std::size_t>(x[i])];
      if (std::fabs(q[idx] - p[cell_index(y, dims)]) > tolerance) return false;
      for (std::size_t i = dims.size(); i-- > 0;) {
        if (++x[i] < dims[i]) break;
        x[i] = 0;
      }
    }
    return true;
  };
  auto search = [&](auto&& self, std::size_t i) -> void {
    if (i == dims.size()) {
      if (check()) out.push_back(pi);
      return;
    }
    pi[i].resize(static_cast<std::size_t>(dims[i]));
    std::iota(pi[i].begin(), pi[i].end(), 0);
    do {
      self(self, i + 1);
    } while (std::next_permutation(pi[i].begin(), pi[i].end()));
  };
  search(search, 0);
  return out;
}

}  // namespace entrolab::recovery
