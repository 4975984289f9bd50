// Sparse matrices over an entry ring R (Novikov scalars or formal words).
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nov/novikov.hpp"

namespace nov {

template <class R>
struct Ring;

template <>
struct Ring<Scalar> {
  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(1); }
  static bool is_zero(const Scalar& x) { return x.is_zero(); }
  static bool is_zero_mod(const Scalar& x, const std::optional<Exponent>& w) {
    return w ? x.is_zero_mod(*w) : x.is_zero();
  }
  static std::string str(const Scalar& x) { return x.str(); }
};

template <class R>
class Mat {
 public:
  using Key = std::pair<int, int>;  // (row, col)

  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, Ring<R>::one());
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::map<Key, R>& entries() const { return ent_; }
  std::size_t nnz() const { return ent_.size(); }
  bool empty() const { return ent_.empty(); }

  R get(int r, int c) const {
    auto it = ent_.find({r, c});
    return it == ent_.end() ? Ring<R>::zero() : it->second;
  }
  void set(int r, int c, R v) {
    check(r, c);
    if (Ring<R>::is_zero(v)) {
      ent_.erase({r, c});
    } else {
      ent_[{r, c}] = std::move(v);
    }
  }
  void add_to(int r, int c, const R& v) {
    if (Ring<R>::is_zero(v)) return;
    check(r, c);
    auto it = ent_.find({r, c});
    if (it == ent_.end()) {
      ent_.emplace(Key{r, c}, v);
    } else {
      it->second = it->second + v;
      if (Ring<R>::is_zero(it->second)) ent_.erase(it);
    }
  }

  Mat operator-() const {
    Mat m(rows_, cols_);
    for (const auto& [k, v] : ent_) m.ent_.emplace(k, -v);
    return m;
  }
  friend Mat operator+(const Mat& a, const Mat& b) {
    same_shape(a, b);
    Mat m = a;
    for (const auto& [k, v] : b.ent_) m.add_to(k.first, k.second, v);
    return m;
  }
  friend Mat operator-(const Mat& a, const Mat& b) { return a + (-b); }
  // composition order: (a*b)(x) = a(b(x))
  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Mat: inner dimension mismatch");
    Mat m(a.rows_, b.cols_);
    std::vector<std::vector<std::pair<int, const R*>>> acol(a.cols_);
    for (const auto& [k, v] : a.ent_) acol[k.second].emplace_back(k.first, &v);
    std::map<Key, R> acc;
    for (const auto& [k, v] : b.ent_) {
      for (const auto& [r, av] : acol[k.first]) {
        R p = (*av) * v;
        auto it = acc.find({r, k.second});
        if (it == acc.end()) {
          acc.emplace(Key{r, k.second}, std::move(p));
        } else {
          it->second = it->second + p;
        }
      }
    }
    for (auto& [k, v] : acc) {
      if (!Ring<R>::is_zero(v)) m.ent_.emplace(k, std::move(v));
    }
    return m;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.ent_ == b.ent_;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  Mat scaled(const R& s) const {
    Mat m(rows_, cols_);
    for (const auto& [k, v] : ent_) m.set(k.first, k.second, s * v);
    return m;
  }

  bool is_zero_mod(const std::optional<Exponent>& w) const {
    for (const auto& [k, v] : ent_) {
      if (!Ring<R>::is_zero_mod(v, w)) return false;
    }
    return true;
  }

  // copy of the block [r0, r0+nr) x [c0, c0+nc)
  Mat block(int r0, int nr, int c0, int nc) const {
    Mat m(nr, nc);
    for (const auto& [k, v] : ent_) {
      if (k.first >= r0 && k.first < r0 + nr && k.second >= c0 && k.second < c0 + nc) {
        m.ent_.emplace(Key{k.first - r0, k.second - c0}, v);
      }
    }
    return m;
  }
  void put_block(int r0, int c0, const Mat& b) {
    for (const auto& [k, v] : b.ent_) add_to(r0 + k.first, c0 + k.second, v);
  }
  // rows and columns reindexed: new index of old i is rmap[i] / cmap[j]
  Mat reindexed(int nr, int nc, const std::vector<int>& rmap,
                const std::vector<int>& cmap) const {
    Mat m(nr, nc);
    for (const auto& [k, v] : ent_) m.ent_.emplace(Key{rmap[k.first], cmap[k.second]}, v);
    return m;
  }
  template <class F>
  Mat map_entries(F f) const {
    Mat m(rows_, cols_);
    for (const auto& [k, v] : ent_) m.set(k.first, k.second, f(v));
    return m;
  }

 private:
  void check(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) {
      throw std::out_of_range("Mat: index (" + std::to_string(r) + "," +
                              std::to_string(c) + ") outside " +
                              std::to_string(rows_) + "x" + std::to_string(cols_));
    }
  }
  static void same_shape(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
      throw std::invalid_argument("Mat: shape mismatch");
    }
  }

  int rows_ = 0;
  int cols_ = 0;
  std::map<Key, R> ent_;
};

using SMat = Mat<Scalar>;

}  // namespace nov
