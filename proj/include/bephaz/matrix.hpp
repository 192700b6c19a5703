#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace bephaz {

/// Dense row-major matrix indexed 1-based as (age x, time t).
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int n_rows, int n_cols, T fill = T{})
      : n_rows_(n_rows), n_cols_(n_cols),
        data_(static_cast<std::size_t>(n_rows) * n_cols, fill) {
    assert(n_rows >= 0 && n_cols >= 0);
  }

  T& operator()(int x, int t) {
    assert(x >= 1 && x <= n_rows_ && t >= 1 && t <= n_cols_);
    return data_[static_cast<std::size_t>(x - 1) * n_cols_ + (t - 1)];
  }
  const T& operator()(int x, int t) const {
    assert(x >= 1 && x <= n_rows_ && t >= 1 && t <= n_cols_);
    return data_[static_cast<std::size_t>(x - 1) * n_cols_ + (t - 1)];
  }

  int rows() const { return n_rows_; }
  int cols() const { return n_cols_; }
  bool empty() const { return data_.empty(); }

  bool same_shape(const Matrix& other) const {
    return n_rows_ == other.n_rows_ && n_cols_ == other.n_cols_;
  }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.n_rows_ == b.n_rows_ && a.n_cols_ == b.n_cols_ && a.data_ == b.data_;
  }

 private:
  int n_rows_ = 0;
  int n_cols_ = 0;
  std::vector<T> data_;
};

}  // namespace bephaz
