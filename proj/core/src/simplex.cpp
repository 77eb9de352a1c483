#include "cofix/simplex.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace cofix::lp {

namespace {

constexpr double kEps = 1e-9;

// Tableau layout: rows 0..m-1 constraints, row m objective, row m+1 phase-one
// objective; column n is the artificial variable, column n+1 the right-hand side.
class Tableau {
public:
  Tableau(const std::vector<std::vector<double>>& A, const std::vector<double>& b, const std::vector<double>& c)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        nonbasic_(n_ + 1),
        basic_(m_),
        d_(m_ + 2, std::vector<double>(n_ + 2, 0.0)) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) d_[i][j] = A[i][j];
      basic_[i] = n_ + i;
      d_[i][n_] = -1.0;
      d_[i][n_ + 1] = b[i];
    }
    for (int j = 0; j < n_; ++j) {
      nonbasic_[j] = j;
      d_[m_][j] = -c[j];
    }
    nonbasic_[n_] = -1;
    d_[m_ + 1][n_] = 1.0;
  }

  Solution solve() {
    Solution out;
    int r = 0;
    for (int i = 1; i < m_; ++i) {
      if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
    }
    if (m_ > 0 && d_[r][n_ + 1] < -kEps) {
      pivot(r, n_);
      if (!run(2) || d_[m_ + 1][n_ + 1] < -kEps) {
        out.status = Status::Infeasible;
        return out;
      }
      for (int i = 0; i < m_; ++i) {
        if (basic_[i] != -1) continue;
        int s = 0;
        for (int j = 1; j <= n_; ++j) {
          if (std::pair(d_[i][j], nonbasic_[j]) < std::pair(d_[i][s], nonbasic_[s])) s = j;
        }
        pivot(i, s);
      }
    }
    const bool bounded = run(1);
    out.x.assign(n_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (basic_[i] >= 0 && basic_[i] < n_) out.x[basic_[i]] = d_[i][n_ + 1];
    }
    out.status = bounded ? Status::Optimal : Status::Unbounded;
    out.objective = bounded ? d_[m_][n_ + 1] : std::numeric_limits<double>::infinity();
    return out;
  }

private:
  void pivot(int r, int s) {
    const double inv = 1.0 / d_[r][s];
    const auto& a = d_[r];
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || std::abs(d_[i][s]) <= kEps) continue;
      auto& row = d_[i];
      const double scale = row[s] * inv;
      for (int j = 0; j < n_ + 2; ++j) row[j] -= a[j] * scale;
      row[s] = a[s] * scale;
    }
    for (int j = 0; j < n_ + 2; ++j) {
      if (j != s) d_[r][j] *= inv;
    }
    for (int i = 0; i < m_ + 2; ++i) {
      if (i != r) d_[i][s] *= -inv;
    }
    d_[r][s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  bool run(int phase) {
    const int x = m_ + phase - 1;
    for (;;) {
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (nonbasic_[j] == -phase) continue;
        if (s == -1 || std::pair(d_[x][j], nonbasic_[j]) < std::pair(d_[x][s], nonbasic_[s])) s = j;
      }
      if (d_[x][s] >= -kEps) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (d_[i][s] <= kEps) continue;
        if (r == -1 || std::pair(d_[i][n_ + 1] / d_[i][s], basic_[i]) <
                           std::pair(d_[r][n_ + 1] / d_[r][s], basic_[r])) {
          r = i;
        }
      }
      if (r == -1) return false;
      pivot(r, s);
    }
  }

  int m_, n_;
  std::vector<int> nonbasic_, basic_;
  std::vector<std::vector<double>> d_;
};

}  // namespace

Solution maximize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                  const std::vector<double>& c) {
  return Tableau(A, b, c).solve();
}

}  // namespace cofix::lp
