#include "nov/qlinalg.hpp"

#include <stdexcept>
#include <unordered_map>

namespace nov {

int sparse_rank(std::vector<QCol> cols) {
  // column reduction keyed by the lowest nonzero row
  std::unordered_map<int, int> pivot_of_row;
  std::vector<QCol> reduced;
  reduced.reserve(cols.size());
  int rank = 0;
  for (auto& col : cols) {
    while (!col.empty()) {
      auto low = std::prev(col.end());
      auto it = pivot_of_row.find(low->first);
      if (it == pivot_of_row.end()) break;
      const QCol& p = reduced[it->second];
      mpq_class factor = low->second / std::prev(p.end())->second;
      for (const auto& [r, v] : p) {
        mpq_class& x = col[r];
        x -= factor * v;
        if (x == 0) col.erase(r);
      }
    }
    if (!col.empty()) {
      pivot_of_row[std::prev(col.end())->first] = static_cast<int>(reduced.size());
      reduced.push_back(std::move(col));
      ++rank;
    }
  }
  return rank;
}

QDense QDense::identity(int n) {
  QDense m(n, n);
  for (int i = 0; i < n; ++i) m.a_[i][i] = 1;
  return m;
}

QDense QDense::operator*(const QDense& b) const {
  if (c_ != b.r_) throw std::invalid_argument("QDense: inner dimension mismatch");
  QDense m(r_, b.c_);
  for (int i = 0; i < r_; ++i) {
    for (int k = 0; k < c_; ++k) {
      if (a_[i][k] == 0) continue;
      for (int j = 0; j < b.c_; ++j) {
        if (b.a_[k][j] != 0) m.a_[i][j] += a_[i][k] * b.a_[k][j];
      }
    }
  }
  return m;
}

QDense QDense::transpose() const {
  QDense m(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m.a_[j][i] = a_[i][j];
  return m;
}

QDense QDense::hcat(const QDense& a, const QDense& b) {
  if (a.r_ != b.r_) throw std::invalid_argument("QDense: hcat row mismatch");
  QDense m(a.r_, a.c_ + b.c_);
  for (int i = 0; i < a.r_; ++i) {
    for (int j = 0; j < a.c_; ++j) m.a_[i][j] = a.a_[i][j];
    for (int j = 0; j < b.c_; ++j) m.a_[i][a.c_ + j] = b.a_[i][j];
  }
  return m;
}

QDense QDense::columns(const std::vector<int>& idx) const {
  QDense m(r_, static_cast<int>(idx.size()));
  for (int i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m.a_[i][j] = a_[i][idx[j]];
  return m;
}

std::vector<int> QDense::rref() {
  std::vector<int> piv;
  int row = 0;
  for (int col = 0; col < c_ && row < r_; ++col) {
    int p = -1;
    for (int i = row; i < r_; ++i) {
      if (a_[i][col] != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    std::swap(a_[p], a_[row]);
    mpq_class inv = 1 / a_[row][col];
    for (int j = col; j < c_; ++j) a_[row][j] *= inv;
    for (int i = 0; i < r_; ++i) {
      if (i == row || a_[i][col] == 0) continue;
      mpq_class f = a_[i][col];
      for (int j = col; j < c_; ++j) {
        if (a_[row][j] != 0) a_[i][j] -= f * a_[row][j];
      }
    }
    piv.push_back(col);
    ++row;
  }
  return piv;
}

int QDense::rank() const {
  QDense m = *this;
  return static_cast<int>(m.rref().size());
}

QDense QDense::nullspace() const {
  QDense m = *this;
  std::vector<int> piv = m.rref();
  std::vector<bool> is_piv(c_, false);
  for (int p : piv) is_piv[p] = true;
  std::vector<int> free;
  for (int j = 0; j < c_; ++j)
    if (!is_piv[j]) free.push_back(j);
  QDense n(c_, static_cast<int>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    n.a_[free[k]][k] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) n.a_[piv[i]][k] = -m.a_[i][free[k]];
  }
  return n;
}

bool QDense::solve(const QDense& b, QDense& x) const {
  QDense aug = hcat(*this, b);
  std::vector<int> piv = aug.rref();
  x = QDense(c_, b.c_);
  for (std::size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] >= c_) return false;
    for (int j = 0; j < b.c_; ++j) x.a_[piv[i]][j] = aug.a_[i][c_ + j];
  }
  return true;
}

bool QDense::is_zero() const {
  for (const auto& row : a_)
    for (const auto& v : row)
      if (v != 0) return false;
  return true;
}

}  // namespace nov
