#include "entrolab/recovery/recover.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "entrolab/errors.hpp"

namespace entrolab::recovery {
namespace {

long double entropy_of_cells(const std::map<std::vector<int>, long double>& cells) {
  long double h = 0;
  for (const auto& [sig, m] : cells) {
    if (m > 0) h -= m * std::log2(m);
  }
  return h;
}

long double hb_inverse(long double h) { return binary_entropy_inverse(std::clamp(h, 0.0L, 1.0L)); }

// memoizes joint entropies by member set
class Cache {
 public:
  explicit Cache(const EntropyOracle& oracle) : oracle_(oracle) {}

  long double joint(std::vector<std::size_t> members, bool with_y = false) {
    std::sort(members.begin(), members.end());
    if (members.empty() && !with_y) return 0;
    auto key = members;
    key.push_back(with_y ? 1 : 0);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const long double h = oracle_.entropy(Query{members, with_y, {}});
    memo_.emplace(std::move(key), h);
    return h;
  }

  long double conditional(std::size_t a, const std::vector<std::size_t>& given) {
    std::vector<std::size_t> all = given;
    all.push_back(a);
    return joint(all) - joint(given);
  }

  // for one-off queries that would only bloat the memo
  long double conditional_once(std::size_t a, const std::vector<std::size_t>& given) {
    std::vector<std::size_t> all = given;
    all.push_back(a);
    ++once_;
    return oracle_.entropy(Query{all, false, {}}) - joint(given);
  }

  std::size_t size() const { return memo_.size() + once_; }

 private:
  const EntropyOracle& oracle_;
  std::map<std::vector<std::size_t>, long double> memo_;
  std::size_t once_ = 0;
};

bool refinement_chain(Cache& c, std::vector<std::size_t>& chain, int remaining, std::size_t members,
                      std::size_t& budget) {
  if (remaining == 0) return true;
  std::vector<std::pair<long double, std::size_t>> next;
  for (std::size_t b = 0; b < members; ++b) {
    if (std::find(chain.begin(), chain.end(), b) != chain.end()) continue;
    const long double h = c.conditional_once(b, chain);
    if (h > kPositive) next.emplace_back(h, b);
  }
  // the smallest positive step always splits a single cell when the input
  // is a genuine family, so the first branch succeeds there
  std::sort(next.begin(), next.end());
  for (const auto& [h, b] : next) {
    if (budget == 0) throw NotIndicatorConsistent("binarity", "refinement search budget exhausted");
    --budget;
    chain.push_back(b);
    if (refinement_chain(c, chain, remaining - 1, members, budget)) return true;
    chain.pop_back();
  }
  return false;
}

}  // namespace

ComputedOracle::ComputedOracle(std::vector<long double> pmf, std::vector<std::vector<int>> member_values,
                               std::vector<std::string> labels, std::vector<std::vector<int>> axis_values)
    : pmf_(std::move(pmf)), values_(std::move(member_values)), labels_(std::move(labels)), axes_(std::move(axis_values)) {
  if (labels_.size() != values_.size()) throw DomainError("one label per member");
  for (const auto& v : values_) {
    if (v.size() != pmf_.size()) throw DomainError("member values must cover every atom");
  }
  for (const auto& v : axes_) {
    if (v.size() != pmf_.size()) throw DomainError("axis values must cover every atom");
  }
}

long double ComputedOracle::entropy(const Query& q) const {
  const std::size_t fields = q.members.size() + q.axes.size() + (q.with_y ? 1 : 0);
  bool packable = fields <= 16;
  for (std::size_t m : q.members) {
    for (int v : values_.at(m)) packable = packable && v >= 0 && v < 16;
  }
  for (int a : q.axes) {
    for (int v : axes_.at(static_cast<std::size_t>(a))) packable = packable && v >= 0 && v < 16;
  }
  packable = packable && (!q.with_y || pmf_.size() <= 16);
  if (packable) {
    // 4 bits per field
    std::vector<std::pair<std::uint64_t, long double>> keyed(pmf_.size());
    for (std::size_t k = 0; k < pmf_.size(); ++k) {
      std::uint64_t key = 0;
      for (std::size_t m : q.members) key = key << 4 | static_cast<std::uint64_t>(values_[m][k]);
      for (int a : q.axes) key = key << 4 | static_cast<std::uint64_t>(axes_[static_cast<std::size_t>(a)][k]);
      if (q.with_y) key = key << 4 | k;
      keyed[k] = {key, pmf_[k]};
    }
    std::sort(keyed.begin(), keyed.end());
    long double h = 0, run = 0;
    for (std::size_t k = 0; k < keyed.size(); ++k) {
      run += keyed[k].second;
      if (k + 1 == keyed.size() || keyed[k + 1].first != keyed[k].first) {
        h -= run * std::log2(run);
        run = 0;
      }
    }
    return h;
  }
  std::map<std::vector<int>, long double> cells;
  for (std::size_t k = 0; k < pmf_.size(); ++k) {
    std::vector<int> sig;
    sig.reserve(fields);
    for (std::size_t m : q.members) sig.push_back(values_.at(m)[k]);
    for (int a : q.axes) sig.push_back(axes_.at(static_cast<std::size_t>(a))[k]);
    if (q.with_y) sig.push_back(static_cast<int>(k));
    cells[sig] += pmf_[k];
  }
  return entropy_of_cells(cells);
}

ComputedOracle family_oracle(const IndicatorFamily& family, const std::vector<std::size_t>& order) {
  if (order.size() != family.members.size()) throw DomainError("order must list every member once");
  std::vector<long double> pmf;
  for (const auto& p : family.pmf) pmf.push_back(to_long_double(p));
  std::vector<std::vector<int>> values;
  std::vector<std::string> labels;
  for (std::size_t pos : order) {
    const Subset a = family.members.at(pos);
    std::vector<int> v;
    for (int k = 0; k < family.n(); ++k) v.push_back(contains(a, k) ? 1 : 0);
    values.push_back(std::move(v));
    labels.push_back("A" + std::to_string(labels.size() + 1));
  }
  return ComputedOracle(std::move(pmf), std::move(values), std::move(labels));
}

ComputedOracle shuffled_family_oracle(const IndicatorFamily& family, std::mt19937_64& rng) {
  std::vector<std::size_t> order(family.members.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  return family_oracle(family, order);
}

TableOracle::TableOracle(const Json& json) {
  if (!json.is_object() || !json.contains("n") || !json["n"].is_number_integer()) {
    throw ParseError("n", "expected the alphabet size");
  }
  n_ = json["n"].get<int>();
  if (!json.contains("members") || !json["members"].is_array()) throw ParseError("members", "expected an array");
  std::map<std::string, std::size_t> index;
  for (const auto& m : json["members"]) {
    if (!m.contains("id") || !m.contains("H") || !m["H"].is_number()) throw ParseError("members", "need id and H");
    const auto id = m["id"].get<std::string>();
    if (!index.emplace(id, labels_.size()).second) throw ParseError("members", "duplicate id '" + id + "'");
    joints_[{labels_.size()}] = m["H"].get<long double>();
    labels_.push_back(id);
  }
  auto set_of = [&](const Json& ids, const std::string& where) {
    std::vector<std::size_t> out;
    if (!ids.is_array()) throw ParseError(where, "expected an array of member ids");
    for (const auto& id : ids) {
      auto it = index.find(id.get<std::string>());
      if (it == index.end()) throw ParseError(where, "unknown member '" + id.get<std::string>() + "'");
      out.push_back(it->second);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  if (json.contains("joints")) {
    for (const auto& j : json["joints"]) joints_[set_of(j.at("set"), "joints")] = j.at("H").get<long double>();
  }
  if (json.contains("conditionals")) {
    for (const auto& c : json["conditionals"]) {
      auto given = set_of(c.at("given"), "conditionals");
      auto all = given;
      all.push_back(set_of(Json::array({c.at("of")}), "conditionals")[0]);
      std::sort(all.begin(), all.end());
      all.erase(std::unique(all.begin(), all.end()), all.end());
      const long double base = given.empty() ? 0.0L : joints_.count(given) ? joints_[given] : -1.0L;
      if (base < 0) throw ParseError("conditionals", "conditioning set has no joint entropy");
      joints_[all] = base + c.at("H").get<long double>();
    }
  }
}

long double TableOracle::entropy(const Query& q) const {
  if (q.with_y || !q.axes.empty()) throw DomainError("table oracle only covers members");
  auto key = q.members;
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());
  if (key.empty()) return 0;
  auto it = joints_.find(key);
  if (it == joints_.end()) {
    std::string names;
    for (std::size_t m : key) names += (names.empty() ? "" : ",") + labels_.at(m);
    throw DomainError("no entropy value for {" + names + "}");
  }
  return it->second;
}

RecoveredDistribution recover_distribution(const EntropyOracle& oracle) {
  const int n = oracle.atoms();
  if (n < 2 || n > 16) throw DomainError("recovery needs 2 <= n <= 16");
  const std::size_t count = oracle.member_count();
  const std::size_t expected = (std::size_t{1} << (n - 1)) - 1;
  if (count < expected) {
    throw NotIndicatorConsistent("support", std::to_string(count) + " members, fewer than the " +
                                                std::to_string(expected) + " a positive " + std::to_string(n) +
                                                "-ary variable produces");
  }
  if (count > expected) throw NotIndicatorConsistent("support", "more members than subsets of {2.." + std::to_string(n) + "}");
  Cache c(oracle);
  std::vector<long double> h(count);
  for (std::size_t a = 0; a < count; ++a) {
    h[a] = c.joint({a});
    if (h[a] <= kPositive) throw NotIndicatorConsistent("binarity", oracle.label(a) + " is constant");
    if (h[a] > 1 + kPositive) throw NotIndicatorConsistent("binarity", oracle.label(a) + " carries more than one bit");
    if (oracle.has_y() && c.joint({a}, true) - c.joint({}, true) > kPositive) {
      throw NotIndicatorConsistent("binarity", oracle.label(a) + " is not a function of Y");
    }
  }
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a + 1; b < count; ++b) {
      if (c.conditional(a, {b}) <= kPositive || c.conditional(b, {a}) <= kPositive) {
        throw NotIndicatorConsistent("distinctness", oracle.label(a) + " and " + oracle.label(b) + " determine each other");
      }
    }
  }
  std::size_t budget = 200000;
  for (std::size_t a = 0; a < count; ++a) {
    std::vector<std::size_t> chain{a};
    if (!refinement_chain(c, chain, n - 2, count, budget)) {
      throw NotIndicatorConsistent("binarity", "no refinement chain of length " + std::to_string(n - 2) + " from " +
                                                   oracle.label(a) + ", so it is not an indicator");
    }
  }

  std::vector<long double> p(static_cast<std::size_t>(n), 0);
  std::vector<std::optional<std::size_t>> member(static_cast<std::size_t>(n));
  std::vector<std::size_t> chosen;
  std::size_t first = 0;
  for (std::size_t a = 1; a < count; ++a) {
    if (h[a] < h[first] - kTie) first = a;
  }
  chosen.push_back(first);
  p.back() = hb_inverse(h[first]);
  member.back() = first;
  for (int i = n - 1; i >= 2; --i) {
    std::optional<std::size_t> best;
    long double best_c = 0;
    for (std::size_t a = 0; a < count; ++a) {
      if (std::find(chosen.begin(), chosen.end(), a) != chosen.end()) continue;
      const long double ca = c.conditional(a, chosen);
      if (ca <= kPositive) continue;
      const bool better = !best || ca < best_c - kTie || (ca <= best_c + kTie && h[a] < h[*best] - kTie);
      if (better) {
        best = a;
        best_c = ca;
      }
    }
    if (!best) throw NotIndicatorConsistent("atom " + std::to_string(i), "no member adds information");
    chosen.push_back(*best);
    p[static_cast<std::size_t>(i - 1)] = hb_inverse(h[*best]);
    member[static_cast<std::size_t>(i - 1)] = *best;
  }
  p[0] = 1 - std::accumulate(p.begin() + 1, p.end(), 0.0L);
  if (p[0] <= 0) throw NotIndicatorConsistent("atom 1", "remaining mass is not positive");
  if (p[0] < p[1] - 1e-9L) throw NotIndicatorConsistent("atom 1", "remaining mass is smaller than atom 2");

  std::vector<std::size_t> idx(p.size());
  std::iota(idx.begin(), idx.end(), 0);
  // identification order is kept unless it is out of order beyond rounding
  bool ordered = true;
  for (std::size_t k = 1; k < p.size(); ++k) ordered = ordered && p[k] <= p[k - 1] + kTie;
  if (!ordered) std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return p[x] > p[y]; });
  RecoveredDistribution out;
  for (std::size_t k : idx) {
    out.probabilities.push_back(p[k]);
    out.member.push_back(member[k]);
  }
  out.queries = c.size();
  return out;
}

bool check_permutation_equivalence(std::vector<long double> p, std::vector<long double> q, long double tolerance) {
  if (p.size() != q.size()) return false;
  std::sort(p.begin(), p.end());
  std::sort(q.begin(), q.end());
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (std::fabs(p[k] - q[k]) > tolerance) return false;
  }
  return true;
}

}  // namespace entrolab::recovery
