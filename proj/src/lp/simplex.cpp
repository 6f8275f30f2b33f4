#include "simplex.hpp"

#include <stdexcept>

namespace entrolab::lp::detail {
namespace {

constexpr std::size_t kPivotLimit = 50'000'000;
constexpr int kDegenerateBeforeBland = 40;

class RevisedSimplex {
 public:
  explicit RevisedSimplex(const StandardForm& lp)
      : lp_(lp), m_(lp.rows), n_(static_cast<int>(lp.columns.size())) {
    if (static_cast<int>(lp.rhs.size()) != m_ || static_cast<int>(lp.cost.size()) != n_) {
      throw std::invalid_argument("standard form dimensions disagree");
    }
    binv_.assign(static_cast<std::size_t>(m_), std::vector<Rational>(static_cast<std::size_t>(m_)));
    basis_.resize(static_cast<std::size_t>(m_));
    xb_.resize(static_cast<std::size_t>(m_));
    in_basis_.assign(static_cast<std::size_t>(n_ + m_), -1);
    for (int i = 0; i < m_; ++i) {
      if (lp.rhs[static_cast<std::size_t>(i)] < 0) throw std::invalid_argument("negative right-hand side");
      binv_[idx(i)][idx(i)] = 1;
      basis_[idx(i)] = n_ + i;  // artificial
      in_basis_[idx(n_ + i)] = i;
      xb_[idx(i)] = lp.rhs[idx(i)];
    }
  }

  SimplexResult run() {
    SimplexResult out;
    // phase 1: maximize -sum(artificials)
    phase_ = 1;
    reset_duals();
    SimplexStatus st = iterate();
    if (st != SimplexStatus::Optimal) throw std::logic_error("phase 1 cannot be unbounded");
    if (objective() < 0) {
      out.status = SimplexStatus::Infeasible;
      out.pivots = pivots_;
      return out;
    }
    phase_ = 2;
    reset_duals();
    st = iterate();
    out.status = st;
    out.pivots = pivots_;
    if (st == SimplexStatus::Optimal) {
      out.value = objective();
      out.primal.assign(static_cast<std::size_t>(n_), Rational(0));
      for (int i = 0; i < m_; ++i) {
        if (basis_[idx(i)] < n_) out.primal[idx(basis_[idx(i)])] = xb_[idx(i)];
      }
      out.dual = pi_;
    }
    return out;
  }

 private:
  static std::size_t idx(int i) { return static_cast<std::size_t>(i); }

  bool artificial(int var) const { return var >= n_; }

  Rational cost(int var) const {
    if (phase_ == 1) return artificial(var) ? Rational(-1) : Rational(0);
    return artificial(var) ? Rational(0) : lp_.cost[idx(var)];
  }

  Rational objective() const {
    Rational v = 0;
    for (int i = 0; i < m_; ++i) v += cost(basis_[idx(i)]) * xb_[idx(i)];
    return v;
  }

  void reset_duals() {
    pi_.assign(idx(m_), Rational(0));
    Rational tmp;
    for (int i = 0; i < m_; ++i) {
      const Rational cb = cost(basis_[idx(i)]);
      if (cb == 0) continue;
      const auto& row = binv_[idx(i)];
      for (int k = 0; k < m_; ++k) {
        if (row[idx(k)] == 0) continue;
        mpq_mul(tmp.get_mpq_t(), cb.get_mpq_t(), row[idx(k)].get_mpq_t());
        mpq_add(pi_[idx(k)].get_mpq_t(), pi_[idx(k)].get_mpq_t(), tmp.get_mpq_t());
      }
    }
    degenerate_run_ = 0;
    bland_ = false;
  }

  // cost_j - pi . A_j
  void reduced_cost(int j, Rational& out, Rational& tmp) const {
    out = lp_.cost[idx(j)];
    if (phase_ == 1) out = 0;
    for (const auto& [r, v] : lp_.columns[idx(j)].entries) {
      if (pi_[idx(r)] == 0) continue;
      mpq_mul(tmp.get_mpq_t(), pi_[idx(r)].get_mpq_t(), v.get_mpq_t());
      mpq_sub(out.get_mpq_t(), out.get_mpq_t(), tmp.get_mpq_t());
    }
  }

  SimplexStatus iterate() {
    Rational d, tmp, best;
    std::vector<Rational> alpha(idx(m_));
    while (true) {
      if (pivots_ > kPivotLimit) throw std::runtime_error("simplex pivot limit exceeded");
      int q = -1;
      for (int j = 0; j < n_; ++j) {
        if (in_basis_[idx(j)] >= 0) continue;
        reduced_cost(j, d, tmp);
        if (d <= 0) continue;
        if (q < 0 || (!bland_ && d > best)) {
          q = j;
          best = d;
          if (bland_) break;
        }
      }
      if (q < 0) return SimplexStatus::Optimal;

      // alpha = B^-1 A_q
      for (int i = 0; i < m_; ++i) {
        Rational& a = alpha[idx(i)];
        a = 0;
        const auto& row = binv_[idx(i)];
        for (const auto& [r, v] : lp_.columns[idx(q)].entries) {
          if (row[idx(r)] == 0) continue;
          mpq_mul(tmp.get_mpq_t(), row[idx(r)].get_mpq_t(), v.get_mpq_t());
          mpq_add(a.get_mpq_t(), a.get_mpq_t(), tmp.get_mpq_t());
        }
      }

      int leave = -1;
      bool leave_artificial = false;
      Rational best_ratio, ratio;
      for (int i = 0; i < m_; ++i) {
        const Rational& a = alpha[idx(i)];
        const int var = basis_[idx(i)];
        const bool art = artificial(var);
        if (phase_ == 2 && art) {
          if (a == 0) continue;
          ratio = 0;  // artificials sit at zero and must leave rather than move
        } else {
          if (a <= 0) continue;
          ratio = xb_[idx(i)] / a;
        }
        bool take = false;
        if (leave < 0 || ratio < best_ratio) {
          take = true;
        } else if (ratio == best_ratio) {
          if (art != leave_artificial) {
            take = art;
          } else {
            take = var < basis_[idx(leave)];
          }
        }
        if (take) {
          leave = i;
          best_ratio = ratio;
          leave_artificial = art;
        }
      }
      if (leave < 0) return SimplexStatus::Unbounded;
      pivot(q, leave, alpha, best);
      if (best_ratio == 0) {
        if (++degenerate_run_ > kDegenerateBeforeBland) bland_ = true;
      } else {
        degenerate_run_ = 0;
        bland_ = false;
      }
    }
  }

  void pivot(int q, int r, const std::vector<Rational>& alpha, const Rational& dq) {
    ++pivots_;
    const Rational ar = alpha[idx(r)];
    const Rational theta = xb_[idx(r)] / ar;
    Rational tmp;
    if (theta != 0) {
      for (int i = 0; i < m_; ++i) {
        if (i == r || alpha[idx(i)] == 0) continue;
        mpq_mul(tmp.get_mpq_t(), theta.get_mpq_t(), alpha[idx(i)].get_mpq_t());
        mpq_sub(xb_[idx(i)].get_mpq_t(), xb_[idx(i)].get_mpq_t(), tmp.get_mpq_t());
      }
    }
    xb_[idx(r)] = theta;

    auto& prow = binv_[idx(r)];
    std::vector<int> nz;
    for (int k = 0; k < m_; ++k) {
      if (prow[idx(k)] == 0) continue;
      prow[idx(k)] /= ar;
      nz.push_back(k);
    }
    for (int i = 0; i < m_; ++i) {
      if (i == r || alpha[idx(i)] == 0) continue;
      auto& row = binv_[idx(i)];
      const Rational& ai = alpha[idx(i)];
      for (int k : nz) {
        mpq_mul(tmp.get_mpq_t(), ai.get_mpq_t(), prow[idx(k)].get_mpq_t());
        mpq_sub(row[idx(k)].get_mpq_t(), row[idx(k)].get_mpq_t(), tmp.get_mpq_t());
      }
    }
    // pi += d_q * (new row r of B^-1)
    for (int k : nz) {
      mpq_mul(tmp.get_mpq_t(), dq.get_mpq_t(), prow[idx(k)].get_mpq_t());
      mpq_add(pi_[idx(k)].get_mpq_t(), pi_[idx(k)].get_mpq_t(), tmp.get_mpq_t());
    }

    in_basis_[idx(basis_[idx(r)])] = -1;
    basis_[idx(r)] = q;
    in_basis_[idx(q)] = r;
  }

  const StandardForm& lp_;
  int m_;
  int n_;
  int phase_ = 1;
  std::vector<std::vector<Rational>> binv_;
  std::vector<int> basis_;
  std::vector<Rational> xb_;
  std::vector<int> in_basis_;
  std::vector<Rational> pi_;
  std::size_t pivots_ = 0;
  int degenerate_run_ = 0;
  bool bland_ = false;
};

}  // namespace

SimplexResult solve_standard(const StandardForm& lp) { return RevisedSimplex(lp).run(); }

}  // namespace entrolab::lp::detail
