#include "entrolab/auxvar/linear.hpp"

#include <map>
#include <set>

#include "entrolab/entropy.hpp"
#include "entrolab/errors.hpp"

namespace entrolab::auxvar {
namespace {

std::size_t u(int v) { return static_cast<std::size_t>(v); }

// digits of a, b in base p, multiplied as polynomials modulo the monic f
// (given by its lower coefficients `low`, degree e)
int poly_mul(int a, int b, int p, int e, const std::vector<int>& low) {
  std::vector<int> x(u(e)), y(u(e)), prod(u(2 * e), 0);
  for (int i = 0; i < e; ++i, a /= p, b /= p) {
    x[u(i)] = a % p;
    y[u(i)] = b % p;
  }
  for (int i = 0; i < e; ++i) {
    for (int j = 0; j < e; ++j) prod[u(i + j)] = (prod[u(i + j)] + x[u(i)] * y[u(j)]) % p;
  }
  for (int d = 2 * e - 1; d >= e; --d) {
    const int c = prod[u(d)];
    if (c == 0) continue;
    prod[u(d)] = 0;
    // x^d = x^(d-e) * x^e = -x^(d-e) * low(x)
    for (int i = 0; i < e; ++i) prod[u(d - e + i)] = ((prod[u(d - e + i)] - c * low[u(i)]) % p + p) % p;
  }
  int out = 0;
  for (int i = e - 1; i >= 0; --i) out = out * p + prod[u(i)];
  return out;
}

}  // namespace

GaloisField::GaloisField(int q) : q_(q) {
  if (q < 2 || q > 256) throw DomainError("field order must be a prime power in [2, 256]");
  int p = 2;
  while (q % p != 0) ++p;
  int e = 0;
  for (int r = q; r > 1; r /= p) {
    if (r % p != 0) throw DomainError("field order must be a prime power");
    ++e;
  }
  p_ = p;
  add_.resize(u(q * q));
  neg_.resize(u(q));
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      int s = 0, place = 1;
      for (int x = a, y = b, i = 0; i < e; ++i, x /= p, y /= p, place *= p) s += ((x % p + y % p) % p) * place;
      add_[u(a * q + b)] = s;
      if (s == 0) neg_[u(a)] = b;
    }
  }
  // find a modulus and a primitive element together: a reducible modulus
  // has no element of multiplicative order q - 1
  for (int f = 0; f < q; ++f) {
    std::vector<int> low(u(e));
    for (int i = 0, v = f; i < e; ++i, v /= p) low[u(i)] = v % p;
    if (e > 1 && low[0] == 0) continue;
    auto mul = [&](int a, int b) { return e == 1 ? (a * b) % p : poly_mul(a, b, p, e, low); };
    for (int g = 1; g < q; ++g) {
      std::vector<int> powers{1};
      int x = g;
      while (x != 1 && x != 0 && static_cast<int>(powers.size()) < q) {
        powers.push_back(x);
        x = mul(x, g);
      }
      if (x != 1 || static_cast<int>(powers.size()) != q - 1) continue;
      exp_ = powers;
      log_.assign(u(q), -1);
      for (int i = 0; i < q - 1; ++i) log_[u(exp_[u(i)])] = i;
      return;
    }
    if (e == 1) break;
  }
  throw DomainError("no field of order " + std::to_string(q));
}

int GaloisField::mul(int a, int b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[u((log_[u(a)] + log_[u(b)]) % (q_ - 1))];
}

int GaloisField::inv(int a) const {
  if (a == 0) throw DomainError("zero has no inverse");
  return exp_[u((q_ - 1 - log_[u(a)]) % (q_ - 1))];
}

Matrix row_basis(const GaloisField& f, Matrix m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    const int inv = f.inv(m[r][c]);
    for (auto& v : m[r]) v = f.mul(v, inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const int factor = m[i][c];
      for (std::size_t k = 0; k < cols; ++k) m[i][k] = f.sub(m[i][k], f.mul(factor, m[r][k]));
    }
    ++r;
  }
  m.resize(r);
  return m;
}

int rank(const GaloisField& f, Matrix m) { return static_cast<int>(row_basis(f, std::move(m)).size()); }

namespace {

void check_model(const SubspaceModel& model) {
  if (model.m < 1 || model.m > 16) throw DomainError("ambient dimension must be in [1, 16]");
  if (model.generators.size() != model.sources.size()) throw DomainError("one generator matrix per source");
  for (const auto& a : model.generators) {
    if (static_cast<int>(a.size()) != model.m) throw DomainError("generator matrices need m rows");
    const std::size_t cols = a[0].size();
    for (const auto& row : a) {
      if (row.size() != cols) throw DomainError("ragged generator matrix");
      for (int v : row) {
        if (v < 0 || v >= model.q) throw DomainError("generator entry outside the field");
      }
    }
  }
}

Matrix columns(const Matrix& a, const std::vector<std::size_t>& keep) {
  Matrix out(a.size());
  for (std::size_t r = 0; r < a.size(); ++r) {
    for (std::size_t c : keep) out[r].push_back(a[r][c]);
  }
  return out;
}

}  // namespace

LinearAux linear_basis_aux(const SubspaceModel& model) {
  check_model(model);
  const GaloisField f(model.q);
  LinearAux out;
  out.reduced = model;
  // drop dependent generator columns
  for (std::size_t i = 0; i < model.generators.size(); ++i) {
    const Matrix& a = model.generators[i];
    std::vector<std::size_t> keep;
    int r = 0;
    for (std::size_t c = 0; c < a[0].size(); ++c) {
      std::vector<std::size_t> trial = keep;
      trial.push_back(c);
      const int rr = rank(f, columns(a, trial));
      if (rr > r) {
        keep = trial;
        r = rr;
      }
    }
    if (keep.size() != a[0].size()) {
      out.warnings.push_back("source " + model.sources[i] + ": dropped " + std::to_string(a[0].size() - keep.size()) +
                             " dependent generator column(s)");
    }
    out.reduced.generators[i] = columns(a, keep);
  }
  // reduce to the row space of the stacked generators
  Matrix stacked(u(model.m));
  for (const auto& a : out.reduced.generators) {
    for (int r = 0; r < model.m; ++r) stacked[u(r)].insert(stacked[u(r)].end(), a[u(r)].begin(), a[u(r)].end());
  }
  const Matrix basis = row_basis(f, stacked);
  if (static_cast<int>(basis.size()) < model.m) {
    out.warnings.push_back("generators span only " + std::to_string(basis.size()) + " of " + std::to_string(model.m) +
                           " dimensions; basis reduced");
    out.reduced.m = static_cast<int>(basis.size());
    std::size_t offset = 0;
    for (auto& a : out.reduced.generators) {
      const std::size_t d = a.empty() ? 0 : a[0].size();
      Matrix next(basis.size());
      for (std::size_t r = 0; r < basis.size(); ++r) {
        next[r].assign(basis[r].begin() + static_cast<long>(offset), basis[r].begin() + static_cast<long>(offset + d));
      }
      a = std::move(next);
      offset += d;
    }
  }
  const int m = out.reduced.m;
  const Rational log_q = log2_constant(Integer(model.q));
  auto k_names = [&](Subset a) {
    std::string s;
    for (int j : members(a)) s += (s.empty() ? "" : ",") + ("K" + std::to_string(j + 1));
    return s;
  };
  for (int j = 0; j < m; ++j) out.spec.variables.push_back({"K" + std::to_string(j + 1), std::nullopt});
  out.spec.fixing = network::AuxFixing::None;
  for (Subset a = 1; a <= full_subset(m); ++a) {
    out.spec.constraints.push_back(
        network::parse_aux_constraint("1*h{" + k_names(a) + "} = " + format_rational(log_q * cardinality(a))));
  }
  for (std::size_t i = 0; i < out.reduced.generators.size(); ++i) {
    const Matrix& a = out.reduced.generators[i];
    const std::string& y = model.sources[i];
    Subset supp = 0;
    for (int r = 0; r < m; ++r) {
      for (int v : a[u(r)]) {
        if (v != 0) supp |= singleton(r);
      }
    }
    const int rk = a.empty() || a[0].empty() ? 0 : rank(f, a);
    if (supp == 0) {
      out.spec.constraints.push_back(network::parse_aux_constraint("1*h{" + y + "} = 0"));
      continue;
    }
    const std::string ks = k_names(supp);
    out.spec.constraints.push_back(network::parse_aux_constraint("1*h{" + y + "," + ks + "} -1*h{" + ks + "} = 0"));
    if (rk == cardinality(supp)) {
      out.spec.constraints.push_back(network::parse_aux_constraint("1*h{" + y + "} -1*h{" + ks + "} = 0"));
    } else {
      out.spec.constraints.push_back(network::parse_aux_constraint("1*h{" + y + "} = " + format_rational(log_q * rk)));
    }
  }
  return out;
}

JointDistribution linear_model_distribution(const SubspaceModel& model) {
  check_model(model);
  const GaloisField f(model.q);
  std::size_t total = 1;
  for (int j = 0; j < model.m; ++j) {
    total *= static_cast<std::size_t>(model.q);
    if (total > 1'000'000) throw DomainError("too many outcomes to enumerate");
  }
  const std::size_t ns = model.sources.size();
  std::vector<std::vector<std::string>> ysym(total, std::vector<std::string>(ns));
  std::vector<std::vector<int>> kval(total, std::vector<int>(u(model.m)));
  std::vector<std::set<std::string>> alpha(ns);
  for (std::size_t t = 0; t < total; ++t) {
    std::size_t v = t;
    for (int j = 0; j < model.m; ++j, v /= static_cast<std::size_t>(model.q)) kval[t][u(j)] = static_cast<int>(v % static_cast<std::size_t>(model.q));
    for (std::size_t i = 0; i < ns; ++i) {
      const Matrix& a = model.generators[i];
      std::string s;
      for (std::size_t c = 0; c < a[0].size(); ++c) {
        int y = 0;
        for (int j = 0; j < model.m; ++j) y = f.add(y, f.mul(a[u(j)][c], kval[t][u(j)]));
        s += (c ? "." : "") + std::to_string(y);
      }
      if (s.empty()) s = "-";
      ysym[t][i] = s;
      alpha[i].insert(s);
    }
  }
  std::vector<Variable> vars;
  std::vector<std::map<std::string, std::uint32_t>> index(ns);
  for (std::size_t i = 0; i < ns; ++i) {
    Variable var{model.sources[i], {alpha[i].begin(), alpha[i].end()}};
    for (std::size_t k = 0; k < var.alphabet.size(); ++k) index[i][var.alphabet[k]] = static_cast<std::uint32_t>(k);
    vars.push_back(std::move(var));
  }
  std::vector<std::string> kalpha;
  for (int x = 0; x < model.q; ++x) kalpha.push_back(std::to_string(x));
  for (int j = 0; j < model.m; ++j) vars.push_back({"K" + std::to_string(j + 1), kalpha});
  std::vector<Outcome> outs;
  const Rational p(1, static_cast<unsigned long>(total));
  for (std::size_t t = 0; t < total; ++t) {
    Outcome o;
    for (std::size_t i = 0; i < ns; ++i) o.symbols.push_back(index[i].at(ysym[t][i]));
    for (int j = 0; j < model.m; ++j) o.symbols.push_back(static_cast<std::uint32_t>(kval[t][u(j)]));
    o.probability = p;
    outs.push_back(std::move(o));
  }
  return JointDistribution(std::move(vars), std::move(outs));
}

}  // namespace entrolab::auxvar
