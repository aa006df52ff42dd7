#pragma once

#include <gmpxx.h>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace dgk {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat parse_rat(const std::string& s) {
  Rat q(s);
  q.canonicalize();
  return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline Rat rat_abs(const Rat& q) { return abs(q); }

/* Exact square root of a non-negative rational, when it exists. */
inline std::optional<Rat> rat_sqrt_exact(const Rat& q) {
  if (sgn(q) < 0) return std::nullopt;
  Int num = q.get_num(), den = q.get_den();
  Int rn = sqrt(num), rd = sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  Rat r(rn, rd);
  r.canonicalize();
  return r;
}

// Gaussian rational a + bi; the scalar field of the convolution algebra.
struct GQ {
  Rat re{0};
  Rat im{0};

  GQ() = default;
  GQ(Rat r) : re(std::move(r)) {}
  GQ(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  GQ(long r) : re(rat(r)) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  GQ conj() const { return GQ(re, -im); }
  Rat norm_sq() const { return re * re + im * im; }

  // |z| when it is rational; nullopt otherwise.
  std::optional<Rat> abs_exact() const { return rat_sqrt_exact(norm_sq()); }

  double abs_approx() const {
    if (sgn(im) == 0) return std::abs(re.get_d());
    if (sgn(re) == 0) return std::abs(im.get_d());
    return std::sqrt(norm_sq().get_d());
  }

  GQ operator+(const GQ& o) const { return GQ(re + o.re, im + o.im); }
  GQ operator-(const GQ& o) const { return GQ(re - o.re, im - o.im); }
  GQ operator-() const { return GQ(-re, -im); }
  GQ operator*(const GQ& o) const {
    return GQ(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  GQ& operator+=(const GQ& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  bool operator==(const GQ& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GQ& o) const { return !(*this == o); }

  std::string str() const {
    if (sgn(im) == 0) return rat_str(re);
    return rat_str(re) + (sgn(im) >= 0 ? "+" : "") + rat_str(im) + "i";
  }
};

}  // namespace dgk
