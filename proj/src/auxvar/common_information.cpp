#include "entrolab/auxvar/common_information.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "entrolab/entropy.hpp"
#include "entrolab/errors.hpp"

namespace entrolab::auxvar {
namespace {

int find(std::vector<int>& parent, int a) {
  while (parent[static_cast<std::size_t>(a)] != a) {
    parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
    a = parent[static_cast<std::size_t>(a)];
  }
  return a;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double plogp(double p) { return p > 0 ? -p * std::log2(p) : 0.0; }

/// Floating-point objective over integer conditionals, used only to steer the
/// search; candidates are ranked by exact re-evaluation.
class DeltaObjective {
 public:
  DeltaObjective(const JointDistribution& dist, int k) : k_(k) {
    for (const auto& o : dist.outcomes()) {
      p_.push_back(to_double(o.probability));
      x_.push_back(static_cast<int>(o.symbols[0]));
      y_.push_back(static_cast<int>(o.symbols[1]));
    }
    nx_ = static_cast<int>(dist.variables()[0].alphabet.size());
    ny_ = static_cast<int>(dist.variables()[1].alphabet.size());
    std::vector<double> px(static_cast<std::size_t>(nx_)), py(static_cast<std::size_t>(ny_));
    for (std::size_t i = 0; i < p_.size(); ++i) {
      px[static_cast<std::size_t>(x_[i])] += p_[i];
      py[static_cast<std::size_t>(y_[i])] += p_[i];
      hxy_ += plogp(p_[i]);
    }
    for (double v : px) hx_ += plogp(v);
    for (double v : py) hy_ += plogp(v);
    pxk_.resize(static_cast<std::size_t>(nx_ * k_));
    pyk_.resize(static_cast<std::size_t>(ny_ * k_));
    pk_.resize(static_cast<std::size_t>(k_));
  }

  std::size_t points() const { return p_.size(); }

  double operator()(const std::vector<int>& counts, int r) {
    std::fill(pxk_.begin(), pxk_.end(), 0.0);
    std::fill(pyk_.begin(), pyk_.end(), 0.0);
    std::fill(pk_.begin(), pk_.end(), 0.0);
    double hxyk = 0;
    for (std::size_t i = 0; i < p_.size(); ++i) {
      for (int k = 0; k < k_; ++k) {
        const int c = counts[i * static_cast<std::size_t>(k_) + static_cast<std::size_t>(k)];
        if (c == 0) continue;
        const double m = p_[i] * c / r;
        pxk_[static_cast<std::size_t>(x_[i] * k_ + k)] += m;
        pyk_[static_cast<std::size_t>(y_[i] * k_ + k)] += m;
        pk_[static_cast<std::size_t>(k)] += m;
        hxyk += plogp(m);
      }
    }
    double hxk = 0, hyk = 0, hk = 0;
    for (double v : pxk_) hxk += plogp(v);
    for (double v : pyk_) hyk += plogp(v);
    for (double v : pk_) hk += plogp(v);
    const double a = hxk - hx_, b = hyk - hy_, c = hxk + hyk - hxyk - hk;
    return std::max({a, b, c});
  }

 private:
  int k_;
  int nx_ = 0, ny_ = 0;
  std::vector<double> p_;
  std::vector<int> x_, y_;
  double hx_ = 0, hy_ = 0, hxy_ = 0;
  std::vector<double> pxk_, pyk_, pk_;
};

void descend(DeltaObjective& f, std::vector<int>& counts, int k, int r) {
  double cur = f(counts, r);
  const std::size_t n = f.points();
  for (int sweep = 0; sweep < 10000; ++sweep) {
    bool improved = false;
    for (std::size_t i = 0; i < n; ++i) {
      int* row = &counts[i * static_cast<std::size_t>(k)];
      for (int a = 0; a < k; ++a) {
        if (row[a] == 0) continue;
        for (int b = 0; b < k && row[a] > 0; ++b) {
          if (b == a) continue;
          --row[a];
          ++row[b];
          const double v = f(counts, r);
          if (v < cur - 1e-12) {
            cur = v;
            improved = true;
          } else {
            ++row[a];
            --row[b];
          }
        }
      }
    }
    if (!improved) return;
  }
}

struct Candidate {
  std::vector<int> counts;
  int resolution;
  std::string start;
};

DeltaSearchResult evaluate(const JointDistribution& dist, const Candidate& cand, int k) {
  DeltaSearchResult out{.k_alphabet = k, .resolution = cand.resolution, .start = cand.start, .conditional = {},
                        .h_k_given_x = 0, .h_k_given_y = 0, .i_xy_given_k = 0, .delta = 0,
                        .joint = dist};
  std::vector<std::string> kalpha;
  for (int i = 0; i < k; ++i) kalpha.push_back(std::to_string(i));
  std::vector<Variable> vars = dist.variables();
  vars.push_back({"K", kalpha});
  std::vector<Outcome> outs;
  for (std::size_t i = 0; i < dist.outcomes().size(); ++i) {
    std::vector<Rational> row;
    for (int kk = 0; kk < k; ++kk) {
      const int c = cand.counts[i * static_cast<std::size_t>(k) + static_cast<std::size_t>(kk)];
      Rational q(c, cand.resolution);
      q.canonicalize();
      row.push_back(q);
      if (c == 0) continue;
      Outcome o = dist.outcomes()[i];
      o.symbols.push_back(static_cast<std::uint32_t>(kk));
      o.probability *= q;
      outs.push_back(std::move(o));
    }
    out.conditional.push_back(std::move(row));
  }
  out.joint = JointDistribution(std::move(vars), std::move(outs));
  const Subset X = 1, Y = 2, K = 4;
  auto H = [&](Subset s) { return entropy_of(out.joint, s); };
  out.h_k_given_x = H(X | K) - H(X);
  out.h_k_given_y = H(Y | K) - H(Y);
  out.i_xy_given_k = H(X | K) + H(Y | K) - H(X | Y | K) - H(K);
  out.delta = std::max({out.h_k_given_x, out.h_k_given_y, out.i_xy_given_k});
  return out;
}

}  // namespace

GkDecomposition gk_common_information(const JointDistribution& dist) {
  if (dist.arity() != 2) throw DomainError("common information needs exactly two variables");
  const int nx = static_cast<int>(dist.variables()[0].alphabet.size());
  const int ny = static_cast<int>(dist.variables()[1].alphabet.size());
  std::vector<int> parent(static_cast<std::size_t>(nx + ny));
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<bool> used(static_cast<std::size_t>(nx + ny), false);
  for (const auto& o : dist.outcomes()) {
    const int a = static_cast<int>(o.symbols[0]), b = nx + static_cast<int>(o.symbols[1]);
    used[static_cast<std::size_t>(a)] = used[static_cast<std::size_t>(b)] = true;
    parent[static_cast<std::size_t>(find(parent, a))] = find(parent, b);
  }
  GkDecomposition out;
  out.x_component.assign(static_cast<std::size_t>(nx), -1);
  out.y_component.assign(static_cast<std::size_t>(ny), -1);
  std::map<int, int> label;  // root -> component, numbered by first outcome
  for (const auto& o : dist.outcomes()) {
    const int root = find(parent, static_cast<int>(o.symbols[0]));
    auto [it, fresh] = label.emplace(root, out.components);
    if (fresh) {
      ++out.components;
      out.component_mass.emplace_back(0);
    }
    out.component_mass[static_cast<std::size_t>(it->second)] += o.probability;
  }
  for (int v = 0; v < nx + ny; ++v) {
    if (!used[static_cast<std::size_t>(v)]) continue;
    const int c = label.at(find(parent, v));
    if (v < nx) {
      out.x_component[static_cast<std::size_t>(v)] = c;
    } else {
      out.y_component[static_cast<std::size_t>(v - nx)] = c;
    }
  }
  const EntropyValue h = entropy_of_pmf(out.component_mass);
  out.entropy = h.bits;
  out.exact = h.exact;
  return out;
}

DeltaSearchResult delta_star_search(const JointDistribution& dist, const DeltaSearchOptions& options) {
  if (dist.arity() != 2) throw DomainError("delta search needs exactly two variables");
  if (options.resolution < 2) throw DomainError("resolution must be at least 2");
  if (options.restarts < 0) throw DomainError("restarts must be nonnegative");
  std::vector<int> x_rank(dist.variables()[0].alphabet.size(), -1), y_rank(dist.variables()[1].alphabet.size(), -1);
  int sx = 0, sy = 0;
  for (const auto& o : dist.outcomes()) {
    if (x_rank[o.symbols[0]] < 0) x_rank[o.symbols[0]] = sx++;
    if (y_rank[o.symbols[1]] < 0) y_rank[o.symbols[1]] = sy++;
  }
  int k = options.k_alphabet;
  if (k == 0) k = std::min(sx * sy, 16);
  if (k < 1) throw DomainError("K alphabet must have at least one symbol");

  const GkDecomposition gk = gk_common_information(dist);
  DeltaObjective f(dist, k);
  const std::size_t n = f.points();
  const auto ku = static_cast<std::size_t>(k);

  std::optional<DeltaSearchResult> best;
  auto consider = [&](Candidate cand) {
    descend(f, cand.counts, k, cand.resolution);
    DeltaSearchResult r = evaluate(dist, cand, k);
    if (!best || r.delta < best->delta) best = std::move(r);
  };
  for (int r = 2; r <= options.resolution; ++r) {
    auto deterministic = [&](const std::string& name, auto&& label_of) {
      Candidate c{std::vector<int>(n * ku, 0), r, name};
      for (std::size_t i = 0; i < n; ++i) c.counts[i * ku + static_cast<std::size_t>(label_of(i) % k)] = r;
      consider(std::move(c));
    };
    const auto& outs = dist.outcomes();
    deterministic("K=X", [&](std::size_t i) { return x_rank[outs[i].symbols[0]]; });
    deterministic("K=Y", [&](std::size_t i) { return y_rank[outs[i].symbols[1]]; });
    deterministic("K=GK", [&](std::size_t i) { return gk.x_component[outs[i].symbols[0]]; });
    deterministic("constant", [](std::size_t) { return 0; });
    for (int j = 0; j < options.restarts; ++j) {
      std::mt19937_64 rng(splitmix64(options.seed ^ splitmix64(static_cast<std::uint64_t>(r) << 32 | static_cast<std::uint64_t>(j))));
      Candidate c{std::vector<int>(n * ku, 0), r, "random " + std::to_string(j)};
      for (std::size_t i = 0; i < n; ++i) {
        for (int u = 0; u < r; ++u) ++c.counts[i * ku + static_cast<std::size_t>(rng() % ku)];
      }
      consider(std::move(c));
    }
  }
  return std::move(*best);
}

PairwiseAux pairwise_aux_for_network(const network::NetworkProblem& p, const PairwiseOptions& options) {
  if (!p.model.distribution) throw PreconditionError("pairwise auxiliaries need an explicit source distribution");
  p.validate();
  const JointDistribution src = p.source_distribution();
  PairwiseAux out;
  out.spec.fixing = network::AuxFixing::All;
  const std::size_t ns = p.sources.size();
  for (std::size_t i = 0; i < ns; ++i) {
    for (std::size_t j = i + 1; j < ns; ++j) {
      const JointDistribution pair = src.project({static_cast<int>(i), static_cast<int>(j)});
      const std::string id = "K" + std::to_string(i + 1) + std::to_string(j + 1);
      const std::string& yi = p.sources[i].id;
      const std::string& yj = p.sources[j].id;
      PairInfo info{id, i, j, 0, 0};
      if (options.mode == PairwiseMode::Gk) {
        const GkDecomposition gk = gk_common_information(pair);
        network::AuxFunction fn;
        fn.of = {yi};
        const auto& alpha = pair.variables()[0].alphabet;
        for (std::size_t s = 0; s < alpha.size(); ++s) {
          if (gk.x_component[s] >= 0) fn.table[alpha[s]] = std::to_string(gk.x_component[s]);
        }
        out.spec.variables.push_back({id, std::move(fn)});
        for (const auto& y : {yi, yj}) {
          out.spec.constraints.push_back(
              network::parse_aux_constraint("1*h{" + y + "," + id + "} -1*h{" + y + "} = 0"));
        }
        info.entropy = gk.entropy;
      } else {
        const DeltaSearchResult r = delta_star_search(pair, options.delta);
        out.spec.variables.push_back({id, std::nullopt});
        info.delta = r.delta;
      }
      out.pairs.push_back(std::move(info));
    }
  }
  if (options.mode == PairwiseMode::Delta) {
    Rational common = 0;
    for (const auto& pi : out.pairs) common = std::max(common, pi.delta);
    // oracle values carry rounded logarithms; leave a little room
    const Rational slack(Integer(1), Integer(1) << 60);
    for (auto& pi : out.pairs) {
      if (!options.per_pair_delta) pi.delta = common;
      const std::string d = format_rational(pi.delta + slack);
      const std::string& yi = p.sources[pi.first].id;
      const std::string& yj = p.sources[pi.second].id;
      const std::string& k = pi.aux_id;
      out.spec.constraints.push_back(network::parse_aux_constraint("1*h{" + yi + "," + k + "} -1*h{" + yi + "} <= " + d));
      out.spec.constraints.push_back(network::parse_aux_constraint("1*h{" + yj + "," + k + "} -1*h{" + yj + "} <= " + d));
      out.spec.constraints.push_back(network::parse_aux_constraint("1*h{" + yi + "," + k + "} 1*h{" + yj + "," + k + "} -1*h{" +
                                                                   yi + "," + yj + "," + k + "} -1*h{" + k + "} <= " + d));
    }
  }
  return out;
}

}  // namespace entrolab::auxvar
