#include "presolve.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "entrolab/entropy.hpp"

namespace entrolab::lp::detail {
namespace {

using Terms = std::vector<std::pair<Subset, Rational>>;

void add_into(Proof& into, const Proof& from, const Rational& coef) {
  if (coef == 0) return;
  for (const auto& [row, v] : from) {
    Rational& slot = into[row];
    slot += v * coef;
    if (slot == 0) into.erase(row);
  }
}

struct ElementalRef {
  std::size_t row = 0;
  Rational scale;  // row = scale * elemental, scale > 0
};

struct Fd {
  Subset from = 0;
  Subset to = 0;  // strict superset of from
  Proof neg;      // proves h(from) - h(to) >= 0
};

struct Fix {
  std::size_t row = 0;
  Rational coef;  // mapped row = coef * h(K) - b
  Rational value;
};

std::uint64_t mutual_key(int i, int j, Subset k) {
  return (static_cast<std::uint64_t>(k) << 12) | (static_cast<std::uint64_t>(i) << 6) | static_cast<std::uint64_t>(j);
}

}  // namespace

struct Presolver::Impl {
  const LinearSystem& sys;
  int n;
  Subset all;
  std::vector<Terms> a;  // s_i * a_i
  std::vector<Rational> b;
  std::vector<bool> eq;

  std::vector<std::optional<ElementalRef>> mono;
  std::unordered_map<std::uint64_t, ElementalRef> mutual;

  std::vector<Fd> fds;
  std::set<std::pair<Subset, Subset>> fd_seen;
  std::vector<Subset> cl;
  std::map<Subset, Proof> up_memo;
  std::map<Subset, Proof> down_memo;

  Reduction red;

  Impl(const LinearSystem& s, bool merge) : sys(s), n(s.ground().size()), all(s.ground().full()) {
    const auto& cons = sys.constraints();
    a.reserve(cons.size());
    for (const Constraint& c : cons) {
      const int sign = c.relation == Relation::LessEq ? -1 : 1;
      Terms t;
      for (const Term& term : c.functional.terms()) t.emplace_back(term.subset, term.coeff * sign);
      a.push_back(std::move(t));
      b.push_back(c.rhs * sign);
      eq.push_back(c.relation == Relation::Equal);
    }
    cl.resize(static_cast<std::size_t>(all) + 1);
    for (Subset x = 0; x <= all; ++x) cl[x] = x;
    if (merge && n >= 1 && index_elementals()) find_dependencies();
    build();
  }

  // -- elemental bookkeeping ------------------------------------------------

  bool index_elementals() {
    mono.assign(static_cast<std::size_t>(n), std::nullopt);
    std::size_t mutual_found = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (eq[i] || b[i] != 0) continue;
      const Terms& t = a[i];
      if (t.empty() || t.size() > 4) continue;
      const Rational c = abs(t[0].second);
      std::vector<Subset> plus, minus;
      bool ok = true;
      for (const auto& [s, v] : t) {
        if (v == c) {
          plus.push_back(s);
        } else if (v == -c) {
          minus.push_back(s);
        } else {
          ok = false;
        }
      }
      if (!ok) continue;
      if (n == 1 && t.size() == 1 && plus.size() == 1) {
        if (!mono[0]) mono[0] = ElementalRef{i, c};
        continue;
      }
      if (plus.size() == 1 && minus.size() == 1 && plus[0] == all && cardinality(all & ~minus[0]) == 1 &&
          is_subset_of(minus[0], all)) {
        const int k = std::countr_zero(all & ~minus[0]);
        if (!mono[static_cast<std::size_t>(k)]) mono[static_cast<std::size_t>(k)] = ElementalRef{i, c};
        continue;
      }
      if (plus.size() != 2) continue;
      const Subset p1 = plus[0], p2 = plus[1];
      const Subset k = p1 & p2, u = p1 | p2;
      const Subset e1 = p1 & ~k, e2 = p2 & ~k;
      if (cardinality(e1) != 1 || cardinality(e2) != 1) continue;
      std::vector<Subset> want{u};
      if (k != 0) want.push_back(k);
      std::sort(want.begin(), want.end());
      std::sort(minus.begin(), minus.end());
      if (minus != want) continue;
      int x = std::countr_zero(e1), y = std::countr_zero(e2);
      if (x > y) std::swap(x, y);
      if (mutual.emplace(mutual_key(x, y, k), ElementalRef{i, c}).second) ++mutual_found;
    }
    for (const auto& m : mono) {
      if (!m) return false;
    }
    return mutual_found == elemental_count(n) - static_cast<std::size_t>(n) || (n == 1);
  }

  void add_mono(Proof& p, int i, const Rational& coef) {
    const ElementalRef& e = *mono[static_cast<std::size_t>(i)];
    add_into(p, Proof{{e.row, 1 / e.scale}}, coef);
  }

  void add_elemental_mutual(Proof& p, int i, int j, Subset k, const Rational& coef) {
    if (i > j) std::swap(i, j);
    const ElementalRef& e = mutual.at(mutual_key(i, j, k));
    add_into(p, Proof{{e.row, 1 / e.scale}}, coef);
  }

  // I(A;B|C) >= 0 for disjoint A, B, C via the chain rule.
  void add_mutual(Proof& p, Subset A, Subset B, Subset C, const Rational& coef) {
    Subset a_prev = 0;
    for (int x : members(A)) {
      Subset b_prev = 0;
      for (int y : members(B)) {
        add_elemental_mutual(p, x, y, C | a_prev | b_prev, coef);
        b_prev |= singleton(y);
      }
      a_prev |= singleton(x);
    }
  }

  // h(T) - h(U) >= 0 for U inside T.
  void add_monotone(Proof& p, Subset T, Subset U, const Rational& coef) {
    Subset cur = U;
    for (int t : members(T & ~U)) {
      add_mono(p, t, coef);
      add_mutual(p, singleton(t), all & ~(cur | singleton(t)), cur, coef);
      cur |= singleton(t);
    }
  }

  // -- closure ----------------------------------------------------------------

  void compute_closure() {
    for (Subset s = 1; s <= all; ++s) {
      Subset cur = s;
      bool changed = true;
      while (changed) {
        changed = false;
        for (const Fd& f : fds) {
          if (is_subset_of(f.from, cur) && !is_subset_of(f.to, cur)) {
            cur |= f.to;
            changed = true;
          }
        }
      }
      cl[s] = cur;
    }
    up_memo.clear();
    down_memo.clear();
  }

  const Proof& up(Subset s) {
    auto it = up_memo.find(s);
    if (it != up_memo.end()) return it->second;
    Proof p;
    add_monotone(p, cl[s], s, 1);
    return up_memo.emplace(s, std::move(p)).first->second;
  }

  // h(S) - h(cl S) >= 0, replaying the closure steps.
  const Proof& down(Subset s) {
    auto it = down_memo.find(s);
    if (it != down_memo.end()) return it->second;
    Proof p;
    Subset cur = s;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const Fd& f : fds) {
        if (!is_subset_of(f.from, cur) || is_subset_of(f.to, cur)) continue;
        const Subset e = f.to & ~cur;
        // h(cur) - h(cur u E) = I(E; cur-U | U) + [h(to) - h(U u E)] + [h(U) - h(to)]
        add_mutual(p, e, cur & ~f.from, f.from, 1);
        add_monotone(p, f.to, f.from | e, 1);
        add_into(p, f.neg, 1);
        cur |= f.to;
        changed = true;
      }
    }
    return down_memo.emplace(s, std::move(p)).first->second;
  }

  // Proof P with sum P g = w * (row i with every subset replaced by its closure).
  Proof mapped_proof(std::size_t i, const Rational& w) {
    Proof p{{i, w}};
    for (const auto& [s, v] : a[i]) {
      if (cl[s] == s) continue;
      const Rational k = -w * v;
      if (k > 0) {
        add_into(p, down(s), k);
      } else if (k < 0) {
        add_into(p, up(s), -k);
      }
    }
    return p;
  }

  Terms mapped(std::size_t i) const {
    Terms t;
    for (const auto& [s, v] : a[i]) t.emplace_back(cl[s], v);
    std::sort(t.begin(), t.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    Terms out;
    for (auto& [s, v] : t) {
      if (!out.empty() && out.back().first == s) {
        out.back().second += v;
      } else {
        out.emplace_back(s, v);
      }
    }
    std::erase_if(out, [](const auto& x) { return x.second == 0; });
    return out;
  }

  bool add_fd(Subset from, Subset to, Proof neg) {
    if (!fd_seen.emplace(from, to).second) return false;
    fds.push_back(Fd{from, to, std::move(neg)});
    return true;
  }

  void find_dependencies() {
    for (int round = 0; round < 64; ++round) {
      compute_closure();
      bool grew = false;
      std::map<Subset, Fix> fixed;
      for (std::size_t i = 0; i < a.size(); ++i) {
        const Terms t = mapped(i);
        if (t.size() == 1 && eq[i]) {
          fixed.emplace(t[0].first, Fix{i, t[0].second, b[i] / t[0].second});
        } else if (t.size() == 2 && b[i] == 0 && t[0].second == -t[1].second) {
          // t sorted by mask, so a strict subset comes first
          const Subset k1 = t[0].first, k2 = t[1].first;
          if (!is_subset_of(k1, k2)) continue;
          const Rational c = t[1].second;  // coefficient on the larger set
          const Rational w = -1 / c;       // w * row = h(k1) - h(k2)
          if (!eq[i] && w < 0) continue;
          if (fd_seen.count({k1, k2}) != 0) continue;
          grew |= add_fd(k1, k2, mapped_proof(i, w));
        }
      }
      for (auto it1 = fixed.begin(); it1 != fixed.end(); ++it1) {
        for (auto it2 = fixed.begin(); it2 != fixed.end(); ++it2) {
          const Subset k1 = it1->first, k2 = it2->first;
          if (k1 == k2 || !is_subset_of(k1, k2) || it1->second.value != it2->second.value) continue;
          if (fd_seen.count({k1, k2}) != 0) continue;
          // h(k1) - h(k2) = (h(k1) - v) + (v - h(k2))
          Proof neg = mapped_proof(it1->second.row, 1 / it1->second.coef);
          add_into(neg, mapped_proof(it2->second.row, -1 / it2->second.coef), 1);
          grew |= add_fd(k1, k2, std::move(neg));
        }
      }
      if (!grew) return;
    }
    compute_closure();
  }

  // -- reduced system -----------------------------------------------------------

  void build() {
    red.coordinate_of.assign(static_cast<std::size_t>(all) + 1, -1);
    for (Subset s = 1; s <= all; ++s) {
      if (cl[s] == s) {
        red.coordinate_of[s] = static_cast<int>(red.classes.size());
        red.classes.push_back(s);
      }
    }
    for (Subset s = 1; s <= all; ++s) red.coordinate_of[s] = red.coordinate_of[cl[s]];

    std::map<std::pair<bool, std::vector<std::pair<int, Rational>>>, std::size_t> seen;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Terms t = mapped(i);
      if (t.empty()) {
        // constant row: g = -b
        const bool violated = eq[i] ? b[i] != 0 : b[i] > 0;
        if (violated) {
          const Rational w = eq[i] && b[i] < 0 ? Rational(-1) : Rational(1);
          red.certificate = mapped_proof(i, w);
          red.rows.clear();
          return;
        }
        continue;
      }
      Rational scale = 1 / abs(t[0].second);
      if (eq[i] && t[0].second < 0) scale = -scale;
      ReducedRow row;
      row.equality = eq[i];
      row.rhs = b[i] * scale;
      row.origin = i;
      row.scale = scale;
      for (const auto& [s, v] : t) row.coeffs.emplace_back(red.coordinate_of[s], v * scale);
      auto key = std::make_pair(row.equality, row.coeffs);
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(std::move(key), red.rows.size());
        red.rows.push_back(std::move(row));
        continue;
      }
      ReducedRow& prev = red.rows[it->second];
      if (row.equality) {
        if (prev.rhs != row.rhs) red.rows.push_back(std::move(row));  // contradictory; keep both
      } else if (row.rhs > prev.rhs) {
        prev = std::move(row);
      }
    }
  }
};

Presolver::Presolver(const LinearSystem& sys, bool merge) : impl_(std::make_unique<Impl>(sys, merge)) {}
Presolver::~Presolver() = default;

const Reduction& Presolver::reduction() const { return impl_->red; }

Proof Presolver::expand(const std::vector<Rational>& reduced_multipliers) {
  Proof p;
  const auto& rows = impl_->red.rows;
  for (std::size_t r = 0; r < rows.size() && r < reduced_multipliers.size(); ++r) {
    if (reduced_multipliers[r] == 0) continue;
    add_into(p, impl_->mapped_proof(rows[r].origin, reduced_multipliers[r] * rows[r].scale), 1);
  }
  return p;
}

}  // namespace entrolab::lp::detail
