#include <doctest.h>

#include "titscone/numberfield.hpp"

using namespace titscone;

namespace {

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(QPoly::cyclotomic(1) == QPoly({std::vector<Rational>{-1, 1}}));
  CHECK(QPoly::cyclotomic(2) == QPoly({std::vector<Rational>{1, 1}}));
  CHECK(QPoly::cyclotomic(4) == QPoly({std::vector<Rational>{1, 0, 1}}));
  CHECK(QPoly::cyclotomic(6) == QPoly({std::vector<Rational>{1, -1, 1}}));
  CHECK(QPoly::cyclotomic(12) == QPoly({std::vector<Rational>{1, 0, -1, 0, 1}}));
  for (unsigned n : {3u, 5u, 8u, 10u, 15u, 24u, 30u})
    CHECK(QPoly::cyclotomic(n).degree() == static_cast<int>(euler_phi(n)));
}

TEST_CASE("dickson polynomials satisfy the three-term recurrence and 2cos identity") {
  // D_k(x + 1/x scaled): check D_k(2) = 2 (t = 0) and D_k(-2) = 2*(-1)^k.
  for (unsigned k = 0; k <= 8; ++k) {
    CHECK(QPoly::dickson(k).eval(Rational(2)) == Rational(2));
    CHECK(QPoly::dickson(k).eval(Rational(-2)) == Rational(k % 2 == 0 ? 2 : -2));
  }
}

TEST_CASE("minimal polynomial of 2cos(pi/L) for small L") {
  // L = 2: c = 0
  CHECK(QPoly::minimal_poly_two_cos_pi_over(2) == QPoly({std::vector<Rational>{0, 1}}));
  // L = 3: c = 1
  CHECK(QPoly::minimal_poly_two_cos_pi_over(3) == QPoly({std::vector<Rational>{-1, 1}}));
  // L = 4: c = sqrt(2)
  CHECK(QPoly::minimal_poly_two_cos_pi_over(4) == QPoly({std::vector<Rational>{-2, 0, 1}}));
  // L = 5: c = golden ratio, x^2 - x - 1
  CHECK(QPoly::minimal_poly_two_cos_pi_over(5) == QPoly({std::vector<Rational>{-1, -1, 1}}));
  // L = 6: c = sqrt(3)
  CHECK(QPoly::minimal_poly_two_cos_pi_over(6) == QPoly({std::vector<Rational>{-3, 0, 1}}));

  for (unsigned L : {2u, 3u, 4u, 5u, 6u, 7u, 12u, 15u}) {
    QPoly psi = QPoly::minimal_poly_two_cos_pi_over(L);
    CHECK(psi.degree() == static_cast<int>(euler_phi(2 * L) / 2));
    // Chebyshev identity: 2cos(pi/L) is a root of D_L + 2, so psi divides it.
    QPoly target = QPoly::dickson(L) + QPoly(Rational(2));
    auto [q, r] = target.divmod(psi);
    (void)q;
    CHECK(r.is_zero());
  }
}

TEST_CASE("field arithmetic in Q(sqrt 2)") {
  auto f = NumberField::make(4);
  CHECK(f->degree() == 2);
  Scalar c = f->generator();  // sqrt(2)
  CHECK((c * c) == f->from_int(2));
  CHECK(c.sign() == 1);
  CHECK((-c).sign() == -1);
  CHECK((c - f->from_int(1)).sign() == 1);   // sqrt(2) > 1
  CHECK((c - f->from_int(2)).sign() == -1);  // sqrt(2) < 2
  CHECK((c * c - f->from_int(2)).sign() == 0);
  CHECK(c.inverse() * c == f->one());
  // 1/sqrt(2) = sqrt(2)/2
  CHECK(c.inverse() == c / f->from_int(2));
  CHECK(c.approx() == doctest::Approx(1.41421356).epsilon(1e-6));
}

TEST_CASE("field arithmetic in Q(golden ratio)") {
  auto f = NumberField::make(5);
  Scalar c = f->generator();  // 2cos(pi/5) = (1+sqrt5)/2
  CHECK(c * c == c + f->one());
  CHECK(c.sign() == 1);
  CHECK((c - f->from_int(1)).sign() == 1);
  CHECK((c - f->from_int(2)).sign() == -1);
  // 2cos(2pi/5) = c - 1 (the other root of x^2-x-1 is 1-c = 2cos(4pi/5) < 0)
  Scalar other = f->one() - c;
  CHECK(other.sign() == -1);
  CHECK(c.approx() == doctest::Approx(1.61803398).epsilon(1e-6));
}

TEST_CASE("two_cos_pi_over reduces correctly inside composite fields") {
  auto f = NumberField::make(12);
  CHECK(f->degree() == 4);  // phi(24)/2
  Scalar c3 = f->two_cos_pi_over(3);
  CHECK(c3 == f->one());
  Scalar c4 = f->two_cos_pi_over(4);
  CHECK(c4 * c4 == f->from_int(2));
  Scalar c6 = f->two_cos_pi_over(6);
  CHECK(c6 * c6 == f->from_int(3));
  Scalar c12 = f->two_cos_pi_over(12);
  CHECK(c12 == f->generator());
  // 2cos(pi/12) = (sqrt6 + sqrt2)/2: check (2 c12)^2 = 8 + 2*sqrt(12) = 8 + 4 sqrt3
  Scalar lhs = (c12 + c12) * (c12 + c12);
  Scalar rhs = f->from_int(8) + f->from_int(4) * c6;
  CHECK(lhs == rhs);
}

TEST_CASE("rational field when L = 2") {
  auto f = NumberField::make(2);
  CHECK(f->degree() == 1);
  CHECK(f->generator() == f->zero());
  CHECK(f->two_cos_pi_over(2) == f->zero());
  Scalar half = f->from_rational(Rational(1, 2));
  CHECK((half + half) == f->one());
  CHECK(half.sign() == 1);
}

TEST_CASE("sign test separates nearby algebraic numbers") {
  auto f = NumberField::make(60);
  // 2cos(pi/60) vs a close rational approximation: sign of difference is exact.
  Scalar c = f->generator();
  // 2cos(3 deg) = 1.99726...; compare against 1997/1000 (below) and 1998/1000 (above)
  CHECK((c - f->from_rational(Rational(1997, 1000))).sign() == 1);
  CHECK((c - f->from_rational(Rational(1998, 1000))).sign() == -1);
  CHECK((c - c).sign() == 0);
}
