#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "dgk/scalar.hpp"

namespace dgk {

struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SingularMatrixError : std::domain_error {
  using std::domain_error::domain_error;
};

// Dense matrix over exact rationals, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols) {
    if (rows <= 0 || cols <= 0) throw ShapeError("matrix dimensions must be positive");
  }
  QMatrix(std::initializer_list<std::initializer_list<Rat>> rows) {
    rows_ = static_cast<int>(rows.size());
    if (rows_ == 0) throw ShapeError("empty matrix");
    cols_ = static_cast<int>(rows.begin()->size());
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_) throw ShapeError("ragged rows");
      for (const auto& v : r) a_.push_back(v);
    }
  }

  static QMatrix identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& operator()(int i, int j) { return a_[i * cols_ + j]; }
  const Rat& operator()(int i, int j) const { return a_[i * cols_ + j]; }

  bool operator==(const QMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const QMatrix& o) const { return !(*this == o); }

  QMatrix operator*(const QMatrix& o) const {
    if (cols_ != o.rows_) throw ShapeError("dimension mismatch in matrix product");
    QMatrix out(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rat& v = (*this)(i, k);
        if (sgn(v) == 0) continue;
        for (int j = 0; j < o.cols_; ++j) out(i, j) += v * o(k, j);
      }
    return out;
  }

  QMatrix operator-() const {
    QMatrix out = *this;
    for (auto& v : out.a_) v = -v;
    return out;
  }

  Rat det() const {
    if (rows_ != cols_) throw ShapeError("determinant of non-square matrix");
    // fraction-free enough for our sizes; plain Gaussian elimination over Q
    QMatrix m = *this;
    Rat d = 1;
    int n = rows_;
    for (int col = 0; col < n; ++col) {
      int pivot = -1;
      for (int r = col; r < n; ++r)
        if (sgn(m(r, col)) != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) return Rat(0);
      if (pivot != col) {
        for (int j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
        d = -d;
      }
      d *= m(col, col);
      Rat inv = 1 / m(col, col);
      for (int r = col + 1; r < n; ++r) {
        Rat f = m(r, col) * inv;
        if (sgn(f) == 0) continue;
        for (int j = col; j < n; ++j) m(r, j) -= f * m(col, j);
      }
    }
    return d;
  }

  QMatrix inverse() const {
    if (rows_ != cols_) throw ShapeError("inverse of non-square matrix");
    int n = rows_;
    QMatrix m = *this;
    QMatrix inv = identity(n);
    for (int col = 0; col < n; ++col) {
      int pivot = -1;
      for (int r = col; r < n; ++r)
        if (sgn(m(r, col)) != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) throw SingularMatrixError("singular matrix");
      if (pivot != col)
        for (int j = 0; j < n; ++j) {
          std::swap(m(pivot, j), m(col, j));
          std::swap(inv(pivot, j), inv(col, j));
        }
      Rat p = 1 / m(col, col);
      for (int j = 0; j < n; ++j) {
        m(col, j) *= p;
        inv(col, j) *= p;
      }
      for (int r = 0; r < n; ++r) {
        if (r == col || sgn(m(r, col)) == 0) continue;
        Rat f = m(r, col);
        for (int j = 0; j < n; ++j) {
          m(r, j) -= f * m(col, j);
          inv(r, j) -= f * inv(col, j);
        }
      }
    }
    return inv;
  }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if ((*this)(i, j) != Rat(i == j ? 1 : 0)) return false;
    return true;
  }

  // Sign of the first nonzero entry in row-major order; 0 for the zero matrix.
  int leading_sign() const {
    for (const auto& v : a_)
      if (sgn(v) != 0) return sgn(v);
    return 0;
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < rows_; ++i) {
      s += i ? ";" : "";
      for (int j = 0; j < cols_; ++j) s += (j ? "," : "") + rat_str((*this)(i, j));
    }
    return s + "]";
  }

  const std::vector<Rat>& entries() const { return a_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

inline QMatrix mat_product(const QMatrix& a, const QMatrix& b) { return a * b; }
inline QMatrix mat_inverse(const QMatrix& a) { return a.inverse(); }

}  // namespace dgk
