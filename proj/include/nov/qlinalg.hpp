// Exact linear algebra over Q.
#pragma once

#include <gmpxx.h>

#include <map>
#include <vector>

namespace nov {

using QCol = std::map<int, mpq_class>;

// Rank of a sparse matrix given by its columns. Columns are consumed.
int sparse_rank(std::vector<QCol> cols);

class QDense {
 public:
  QDense() = default;
  QDense(int rows, int cols) : r_(rows), c_(cols), a_(rows, std::vector<mpq_class>(cols)) {}

  int rows() const { return r_; }
  int cols() const { return c_; }
  mpq_class& at(int i, int j) { return a_[i][j]; }
  const mpq_class& at(int i, int j) const { return a_[i][j]; }

  static QDense identity(int n);
  QDense operator*(const QDense& b) const;
  QDense transpose() const;
  // columns side by side
  static QDense hcat(const QDense& a, const QDense& b);
  QDense columns(const std::vector<int>& idx) const;

  int rank() const;
  // basis of {x : A x = 0}, as columns
  QDense nullspace() const;
  // some x with A x = b, or false
  bool solve(const QDense& b, QDense& x) const;
  bool is_zero() const;

 private:
  // reduced row echelon form in place; returns pivot columns
  std::vector<int> rref();
  int r_ = 0;
  int c_ = 0;
  std::vector<std::vector<mpq_class>> a_;
};

}  // namespace nov
