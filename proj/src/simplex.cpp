#include "netdual/simplex.hpp"

#include <stdexcept>

namespace netdual {

namespace {

bool is_free(const std::vector<bool>& free, int j) { return j < static_cast<int>(free.size()) && free[j]; }

/// Dictionary x_B[i] = beta[i] + sum_j d[i][j] x_N[j], objective z = v + sum_j c[j] x_N[j].
class Dictionary {
 public:
  Dictionary(int columns, const std::vector<LinearConstraint>& rows)
      : m_(static_cast<int>(rows.size())), n_(columns + 1) {
    // nonbasic: the structural columns, then x0; basic: the slacks
    d_.assign(m_, std::vector<Rational>(n_));
    beta_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      beta_[i] = rows[i].bound;
      for (const auto& [col, a] : rows[i].coeffs) d_[i][col] -= a;
      d_[i][n_ - 1] = 1;
    }
    c_.assign(n_, Rational(0));
    c_[n_ - 1] = -1;
    nonbasic_.resize(n_);
    for (int j = 0; j < n_; ++j) nonbasic_[j] = j;
    basic_.resize(m_);
    for (int i = 0; i < m_; ++i) basic_[i] = n_ + i;
  }

  int rows() const { return m_; }
  int cols() const { return n_; }
  const LogScalar& beta(int i) const { return beta_[i]; }
  int basic(int i) const { return basic_[i]; }
  int nonbasic(int j) const { return nonbasic_[j]; }
  const Rational& d(int i, int j) const { return d_[i][j]; }
  const Rational& c(int j) const { return c_[j]; }
  const LogScalar& value() const { return v_; }

  void pivot(int r, int e) {
    const Rational p = d_[r][e];
    const Rational inv = 1 / p;
    auto& row = d_[r];
    // solve row r for the entering variable
    LogScalar beta_r = beta_[r];
    beta_r *= Rational(-inv);
    beta_[r] = beta_r;
    std::vector<int> nz;
    for (int j = 0; j < n_; ++j) {
      if (j == e) continue;
      if (sgn(row[j]) != 0) {
        row[j] *= -inv;
        nz.push_back(j);
      }
    }
    row[e] = inv;
    nz.push_back(e);
    std::swap(basic_[r], nonbasic_[e]);
    Rational t;
    auto update = [&](std::vector<Rational>& target, LogScalar* b) {
      const Rational a = target[e];
      if (sgn(a) == 0) return;
      if (b) b->add_scaled(beta_r, a);
      target[e] = 0;
      for (int j : nz) {
        t = a * row[j];
        target[j] += t;
      }
    };
    for (int i = 0; i < m_; ++i) {
      if (i != r) update(d_[i], &beta_[i]);
    }
    update(c_, &v_);
  }

 private:
  int m_, n_;
  std::vector<std::vector<Rational>> d_;
  std::vector<LogScalar> beta_;
  std::vector<Rational> c_;
  LogScalar v_;
  std::vector<int> basic_, nonbasic_;
};

}  // namespace

bool satisfies(const std::vector<LinearConstraint>& rows, const std::vector<LogScalar>& point,
               const std::vector<bool>& free) {
  for (std::size_t j = 0; j < point.size(); ++j) {
    if (!is_free(free, static_cast<int>(j)) && point[j].sign() < 0) return false;
  }
  for (const auto& row : rows) {
    LogScalar lhs;
    for (const auto& [var, a] : row.coeffs) lhs.add_scaled(point.at(var), a);
    if (lhs > row.bound) return false;
  }
  return true;
}

bool verify_farkas(int num_vars, const std::vector<LinearConstraint>& rows, const std::vector<Rational>& y,
                   const std::vector<bool>& free) {
  if (y.size() != rows.size()) return false;
  std::vector<Rational> combo(num_vars);
  LogScalar rhs;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (sgn(y[i]) < 0) return false;
    if (sgn(y[i]) == 0) continue;
    for (const auto& [var, a] : rows[i].coeffs) combo.at(var) += y[i] * a;
    rhs.add_scaled(rows[i].bound, y[i]);
  }
  for (int j = 0; j < num_vars; ++j) {
    if (is_free(free, j) ? sgn(combo[j]) != 0 : sgn(combo[j]) < 0) return false;
  }
  return rhs.sign() < 0;
}

SimplexResult find_feasible_point(int num_vars, const std::vector<LinearConstraint>& rows,
                                  const std::vector<bool>& free) {
  SimplexResult result;
  // a free variable x becomes x+ - x-; x- gets its own column
  std::vector<int> column_of(num_vars), minus_column(num_vars, -1);
  int columns = 0;
  for (int j = 0; j < num_vars; ++j) column_of[j] = columns++;
  for (int j = 0; j < num_vars; ++j) {
    if (is_free(free, j)) minus_column[j] = columns++;
  }
  std::vector<LinearConstraint> split = rows;
  for (auto& row : split) {
    const auto original = row.coeffs;
    for (const auto& [var, a] : original) {
      if (minus_column[var] >= 0) row.coeffs.emplace_back(minus_column[var], Rational(-a));
    }
  }
  auto finish_feasible = [&](const std::vector<LogScalar>& col_values) {
    result.feasible = true;
    result.point.assign(num_vars, LogScalar());
    for (int j = 0; j < num_vars; ++j) {
      result.point[j] = col_values[column_of[j]];
      if (minus_column[j] >= 0) result.point[j] -= col_values[minus_column[j]];
    }
    if (!satisfies(rows, result.point, free)) throw std::logic_error("simplex returned an infeasible point");
    return result;
  };

  const int m = static_cast<int>(split.size());
  int most_negative = -1;
  for (int i = 0; i < m; ++i) {
    if (split[i].bound.sign() < 0 && (most_negative < 0 || split[i].bound < split[most_negative].bound)) {
      most_negative = i;
    }
  }
  if (most_negative < 0) return finish_feasible(std::vector<LogScalar>(columns));

  Dictionary dict(columns, split);
  const int x0 = columns;
  dict.pivot(most_negative, x0);
  ++result.pivots;

  LogScalar ratio, best;
  while (true) {
    // Bland: smallest variable index with positive objective coefficient enters
    int e = -1;
    for (int j = 0; j < dict.cols(); ++j) {
      if (sgn(dict.c(j)) > 0 && (e < 0 || dict.nonbasic(j) < dict.nonbasic(e))) e = j;
    }
    if (e < 0) break;
    int r = -1;
    for (int i = 0; i < dict.rows(); ++i) {
      if (sgn(dict.d(i, e)) >= 0) continue;
      ratio = dict.beta(i);
      ratio *= Rational(-1 / dict.d(i, e));
      if (r < 0) {
        r = i;
        best = ratio;
        continue;
      }
      const int cmp = (ratio - best).sign();
      if (cmp < 0 || (cmp == 0 && dict.basic(i) < dict.basic(r))) {
        r = i;
        best = ratio;
      }
    }
    // x0 >= 0 bounds the objective, so some row always limits the entering variable
    if (r < 0) throw std::logic_error("phase-one objective unbounded");
    dict.pivot(r, e);
    ++result.pivots;
  }

  if (dict.value().is_zero()) {
    std::vector<LogScalar> values(columns + 1 + m);
    for (int i = 0; i < dict.rows(); ++i) values[dict.basic(i)] = dict.beta(i);
    values.resize(columns);
    return finish_feasible(values);
  }
  result.multipliers.assign(rows.size(), Rational(0));
  for (int j = 0; j < dict.cols(); ++j) {
    const int var = dict.nonbasic(j);
    if (var > columns) result.multipliers[var - columns - 1] = -dict.c(j);
  }
  if (!verify_farkas(num_vars, rows, result.multipliers, free)) {
    throw std::logic_error("simplex returned an invalid infeasibility certificate");
  }
  return result;
}

}  // namespace netdual
