#pragma once

// Self-contained dense group-algebra model over an explicit multiplication
// table, used as an independent cross-check for the groupoid convolution path.
// Deliberately shares no code with the library beyond Eigen.

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

namespace oracle {

class GroupAlgebra {
 public:
  using C = std::complex<double>;
  using Vec = std::vector<C>;

  explicit GroupAlgebra(std::vector<std::vector<int>> table) : table_(std::move(table)) {
    n_ = static_cast<int>(table_.size());
    // locate the identity, then inverses, from the table alone
    id_ = -1;
    for (int e = 0; e < n_ && id_ < 0; ++e) {
      bool ok = true;
      for (int i = 0; i < n_; ++i) ok = ok && table_[e][i] == i && table_[i][e] == i;
      if (ok) id_ = e;
    }
    if (id_ < 0) throw std::invalid_argument("table has no identity");
    inv_.assign(n_, -1);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (table_[i][j] == id_) inv_[i] = j;
  }

  int order() const { return n_; }
  int identity() const { return id_; }
  int inverse(int i) const { return inv_[i]; }

  Vec zero() const { return Vec(n_, C(0)); }

  Vec convolve(const Vec& a, const Vec& b) const {
    Vec c = zero();
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) c[table_[i][j]] += a[i] * b[j];
    return c;
  }

  Vec star(const Vec& a) const {
    Vec c = zero();
    for (int i = 0; i < n_; ++i) c[inv_[i]] = std::conj(a[i]);
    return c;
  }

  double l1(const Vec& a) const {
    double s = 0;
    for (const C& v : a) s += std::abs(v);
    return s;
  }

  // operator norm of left multiplication on l2(G)
  double reduced_norm(const Vec& a) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) m(table_[i][j], j) += a[i];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
  }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inv_;
  int n_ = 0, id_ = -1;
};

inline std::vector<std::vector<int>> cyclic_table(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return t;
}

// S3 as permutations of {0,1,2}, composed independently of the library's table
inline std::vector<std::vector<int>> s3_table() {
  std::vector<std::array<int, 3>> perms = {
      {0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  auto find = [&](const std::array<int, 3>& p) {
    for (std::size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == p) return static_cast<int>(i);
    throw std::logic_error("bad permutation");
  };
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[i][perms[j][x]];
      t[i][j] = find(c);
    }
  return t;
}

}  // namespace oracle
