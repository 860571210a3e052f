// Exact arithmetic in the real field Q(2cos(pi/L)).
//
// All scalars appearing in the reflection representation of a Coxeter
// diagram live in Q(c) with c = 2cos(pi/L), L the lcm of the finite bond
// labels >= 3 (L = 2 when there are none, making c = 0 and the field Q).
// Elements are stored as rational coefficient vectors in the power basis
// {1, c, ..., c^(d-1)} reduced modulo the minimal polynomial of c, so
// equality is coefficient equality and the sign test is exact.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace titscone {

using Rational = mpq_class;

std::size_t hash_rational(const Rational& q);
std::string rational_to_string(const Rational& q);

// Dense univariate polynomial over Q. Coefficient k is the coefficient of
// x^k; the vector is empty for the zero polynomial and never has a zero
// leading coefficient otherwise.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(Rational constant);
  explicit QPoly(std::vector<Rational> coeffs);

  static QPoly x();
  static QPoly x_power(unsigned k);

  // n-th cyclotomic polynomial, exact integer coefficients.
  static QPoly cyclotomic(unsigned n);

  // Normalized Chebyshev (Dickson) polynomial D_k with D_k(2cos t) = 2cos(kt);
  // D_0 = 2, D_1 = x, D_{k+1} = x D_k - D_{k-1}.
  static QPoly dickson(unsigned k);

  // Minimal polynomial of 2cos(pi/L) over Q, monic, degree phi(2L)/2 for
  // L >= 2. Obtained by halving the palindromic cyclotomic polynomial of
  // order 2L via the substitution y = x + 1/x.
  static QPoly minimal_poly_two_cos_pi_over(unsigned L);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rational& coeff(unsigned k) const;
  const std::vector<Rational>& coeffs() const { return c_; }

  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;
  QPoly operator*(const Rational& r) const;
  QPoly operator-() const;
  bool operator==(const QPoly& o) const { return c_ == o.c_; }

  // Euclidean division; divisor must be nonzero.
  std::pair<QPoly, QPoly> divmod(const QPoly& divisor) const;
  // Exact division; throws std::logic_error if the remainder is nonzero.
  QPoly exact_div(const QPoly& divisor) const;

  QPoly derivative() const;
  QPoly monic() const;

  Rational eval(const Rational& x) const;
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

class NumberField;

// An element of a fixed NumberField. Default-constructed scalars are inert
// placeholders; any arithmetic on them throws.
class Scalar {
 public:
  Scalar() = default;

  const NumberField& field() const;
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  // Exact sign in {-1, 0, +1} of the real value at c = 2cos(pi/L).
  int sign() const;
  double approx() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::size_t hash() const;
  std::string to_string() const;

 private:
  friend class NumberField;
  Scalar(const NumberField* f, std::vector<Rational> c) : field_(f), c_(std::move(c)) {}

  const NumberField* field_ = nullptr;
  std::vector<Rational> c_;  // size == field degree, reduced
};

// The real number field Q(2cos(pi/L)) with its designated real embedding.
// Immutable after construction apart from the isolating interval for the
// generator, which is refined on demand behind a mutex.
class NumberField {
 public:
  static std::shared_ptr<const NumberField> make(unsigned L);

  unsigned lcm_order() const { return L_; }
  unsigned degree() const { return degree_; }
  const QPoly& minimal_polynomial() const { return minpoly_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar generator() const;  // c = 2cos(pi/L)
  Scalar from_rational(const Rational& r) const;
  Scalar from_int(long v) const;
  // 2cos(pi/m) for finite m >= 2 dividing L (or m = 2 always).
  Scalar two_cos_pi_over(unsigned m) const;
  // Reduce an arbitrary rational polynomial in c into the field.
  Scalar from_poly(const QPoly& p) const;

  int sign_of(const std::vector<Rational>& coeffs) const;
  double approx_of(const std::vector<Rational>& coeffs) const;

 private:
  explicit NumberField(unsigned L);
  std::vector<Rational> reduce(const QPoly& p) const;
  std::vector<Rational> mul(const std::vector<Rational>& a, const std::vector<Rational>& b) const;
  std::vector<Rational> inv(const std::vector<Rational>& a) const;
  // Bisect the isolating interval once; requires degree >= 2.
  void refine_interval(Rational& lo, Rational& hi) const;

  friend class Scalar;

  unsigned L_ = 2;
  unsigned degree_ = 1;
  QPoly minpoly_;
  // reduction_[k] = coefficients of x^(degree+k) mod minpoly
  std::vector<std::vector<Rational>> reduction_;
  // isolating interval lo < c < hi with minpoly(lo) < 0 < minpoly(hi); only
  // meaningful for degree >= 2 (degree 1 fields evaluate directly).
  mutable Rational iso_lo_, iso_hi_;
  mutable std::mutex iso_mutex_;
};

std::size_t hash_combine(std::size_t seed, std::size_t v);

}  // namespace titscone
