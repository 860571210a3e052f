#include "titscone/numberfield.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace titscone {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_rational(const Rational& q) {
  // Fast modular hash of numerator and denominator.
  constexpr unsigned long kMod = (1UL << 61) - 1;
  unsigned long hn = mpz_fdiv_ui(q.get_num().get_mpz_t(), kMod);
  unsigned long hd = mpz_fdiv_ui(q.get_den().get_mpz_t(), kMod);
  std::size_t h = hash_combine(hn, hd);
  if (sgn(q) < 0) h = hash_combine(h, 0x5bf03635ULL);
  return h;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------------------
// QPoly

QPoly::QPoly(Rational constant) {
  if (constant != 0) c_.push_back(std::move(constant));
}

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::x() { return QPoly(std::vector<Rational>{0, 1}); }

QPoly QPoly::x_power(unsigned k) {
  std::vector<Rational> c(k + 1, Rational(0));
  c[k] = 1;
  return QPoly(std::move(c));
}

const Rational& QPoly::coeff(unsigned k) const {
  static const Rational kZero(0);
  return k < c_.size() ? c_[k] : kZero;
}

QPoly QPoly::operator+(const QPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return QPoly(std::move(r));
}

QPoly QPoly::operator-(const QPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return QPoly(std::move(r));
}

QPoly QPoly::operator*(const QPoly& o) const {
  if (c_.empty() || o.c_.empty()) return QPoly();
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return QPoly(std::move(r));
}

QPoly QPoly::operator*(const Rational& r) const {
  if (r == 0) return QPoly();
  std::vector<Rational> c(c_);
  for (auto& v : c) v *= r;
  return QPoly(std::move(c));
}

QPoly QPoly::operator-() const {
  std::vector<Rational> c(c_);
  for (auto& v : c) v = -v;
  return QPoly(std::move(c));
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& divisor) const {
  if (divisor.is_zero()) throw std::logic_error("QPoly: division by zero polynomial");
  std::vector<Rational> rem(c_);
  int dd = divisor.degree();
  int dr = static_cast<int>(rem.size()) - 1;
  if (dr < dd) return {QPoly(), *this};
  std::vector<Rational> quot(dr - dd + 1, Rational(0));
  const Rational& lead = divisor.c_.back();
  for (int k = dr; k >= dd; --k) {
    if (rem[k] == 0) continue;
    Rational f = rem[k] / lead;
    quot[k - dd] = f;
    for (int i = 0; i <= dd; ++i) rem[k - dd + i] -= f * divisor.c_[i];
  }
  return {QPoly(std::move(quot)), QPoly(std::move(rem))};
}

QPoly QPoly::exact_div(const QPoly& divisor) const {
  auto [q, r] = divmod(divisor);
  if (!r.is_zero()) throw std::logic_error("QPoly: division not exact");
  return q;
}

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return QPoly();
  std::vector<Rational> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return QPoly(std::move(r));
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  return *this * (Rational(1) / c_.back());
}

Rational QPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string QPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (int k = degree(); k >= 0; --k) {
    const Rational& a = c_[k];
    if (a == 0) continue;
    if (!s.empty()) s += (sgn(a) < 0) ? " - " : " + ";
    else if (sgn(a) < 0) s += "-";
    Rational mag = abs(a);
    if (mag != 1 || k == 0) s += mag.get_str();
    if (k > 0) {
      if (mag != 1) s += "*";
      s += var;
      if (k > 1) s += "^" + std::to_string(k);
    }
  }
  return s;
}

QPoly QPoly::cyclotomic(unsigned n) {
  static std::map<unsigned, QPoly> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto compute = [](auto&& self, unsigned m) -> QPoly {
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    QPoly p = QPoly::x_power(m) - QPoly(Rational(1));
    for (unsigned d = 1; d < m; ++d) {
      if (m % d == 0) p = p.exact_div(self(self, d));
    }
    cache.emplace(m, p);
    return p;
  };
  return compute(compute, n);
}

QPoly QPoly::dickson(unsigned k) {
  QPoly prev(Rational(2));
  if (k == 0) return prev;
  QPoly cur = QPoly::x();
  for (unsigned i = 1; i < k; ++i) {
    QPoly next = QPoly::x() * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

QPoly QPoly::minimal_poly_two_cos_pi_over(unsigned L) {
  if (L < 2) throw std::logic_error("minimal_poly_two_cos_pi_over: L must be >= 2");
  // Phi_{2L} is palindromic of even degree 2d; writing Phi_{2L}(x)/x^d in
  // terms of y = x + 1/x through x^k + x^(-k) = D_k(y) yields the minimal
  // polynomial of 2cos(pi/L) = zeta_{2L} + zeta_{2L}^(-1).
  QPoly phi = cyclotomic(2 * L);
  int deg = phi.degree();
  if (deg % 2 != 0) throw std::logic_error("cyclotomic degree not even");
  unsigned d = static_cast<unsigned>(deg) / 2;
  QPoly psi(phi.coeff(d));
  for (unsigned k = 1; k <= d; ++k) psi = psi + dickson(k) * phi.coeff(d + k);
  return psi.monic();
}

// ---------------------------------------------------------------------------
// NumberField

NumberField::NumberField(unsigned L) : L_(L) {
  minpoly_ = QPoly::minimal_poly_two_cos_pi_over(L);
  degree_ = static_cast<unsigned>(minpoly_.degree());
  // x^(degree+k) mod minpoly, computed incrementally.
  reduction_.clear();
  std::vector<Rational> cur(degree_, Rational(0));
  // x^degree = -(lower coefficients) since minpoly is monic
  for (unsigned i = 0; i < degree_; ++i) cur[i] = -minpoly_.coeff(i);
  reduction_.push_back(cur);
  for (unsigned k = 1; k + 1 < degree_; ++k) {
    // multiply by x and reduce
    std::vector<Rational> next(degree_, Rational(0));
    for (unsigned i = 0; i + 1 < degree_; ++i) next[i + 1] = cur[i];
    if (cur[degree_ - 1] != 0) {
      for (unsigned i = 0; i < degree_; ++i) next[i] += cur[degree_ - 1] * reduction_[0][i];
    }
    reduction_.push_back(next);
    cur = std::move(next);
  }

  if (degree_ >= 2) {
    // Isolate the largest real root (= 2cos(pi/L)) with a Sturm chain. All
    // roots are real and lie strictly inside (-2, 2); rational endpoints can
    // never hit a root because the minimal polynomial is irreducible of
    // degree >= 2.
    std::vector<QPoly> sturm;
    sturm.push_back(minpoly_);
    sturm.push_back(minpoly_.derivative());
    while (!sturm.back().is_zero()) {
      auto [q, r] = sturm[sturm.size() - 2].divmod(sturm.back());
      (void)q;
      if (r.is_zero()) break;
      sturm.push_back(-r);
    }
    auto variations = [&sturm](const Rational& x) {
      int count = 0, prev = 0;
      for (const auto& p : sturm) {
        int s = sgn(p.eval(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
      }
      return count;
    };
    Rational lo(-2), hi(2);
    int roots_right_of_hi = variations(hi);
    while (variations(lo) - roots_right_of_hi != 1) {
      Rational mid = (lo + hi) / 2;
      if (variations(mid) - roots_right_of_hi >= 1) {
        lo = mid;  // largest root still right of mid
      } else {
        hi = mid;
        roots_right_of_hi = variations(hi);
      }
    }
    // Tighten until the sign convention minpoly(lo) < 0 < minpoly(hi) holds.
    while (sgn(minpoly_.eval(lo)) >= 0 || sgn(minpoly_.eval(hi)) <= 0) {
      Rational mid = (lo + hi) / 2;
      if (sgn(minpoly_.eval(mid)) > 0) hi = mid;
      else lo = mid;
    }
    iso_lo_ = lo;
    iso_hi_ = hi;
  }
}

std::shared_ptr<const NumberField> NumberField::make(unsigned L) {
  return std::shared_ptr<const NumberField>(new NumberField(L));
}

std::vector<Rational> NumberField::reduce(const QPoly& p) const {
  QPoly rem = p;
  if (rem.degree() >= static_cast<int>(degree_)) rem = p.divmod(minpoly_).second;
  std::vector<Rational> out(degree_, Rational(0));
  for (unsigned k = 0; k < degree_; ++k) out[k] = rem.coeff(k);
  return out;
}

std::vector<Rational> NumberField::mul(const std::vector<Rational>& a,
                                       const std::vector<Rational>& b) const {
  std::vector<Rational> prod(2 * degree_ - 1, Rational(0));
  for (unsigned i = 0; i < degree_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < degree_; ++j) {
      if (b[j] == 0) continue;
      prod[i + j] += a[i] * b[j];
    }
  }
  std::vector<Rational> out(degree_, Rational(0));
  for (unsigned k = 0; k < prod.size(); ++k) {
    if (prod[k] == 0) continue;
    if (k < degree_) {
      out[k] += prod[k];
    } else {
      const auto& row = reduction_.at(k - degree_);
      for (unsigned i = 0; i < degree_; ++i) out[i] += prod[k] * row[i];
    }
  }
  return out;
}

std::vector<Rational> NumberField::inv(const std::vector<Rational>& a) const {
  QPoly ap{std::vector<Rational>(a)};
  if (ap.is_zero()) throw std::domain_error("Scalar: division by zero");
  // Extended Euclid: u*ap + v*minpoly = gcd (a unit, since minpoly is
  // irreducible and deg ap < deg minpoly).
  QPoly r0 = minpoly_, r1 = ap;
  QPoly u0, u1(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    QPoly u2 = u0 - q * u1;
    r0 = r1;
    r1 = r;
    u0 = u1;
    u1 = u2;
  }
  if (r0.degree() != 0) throw std::logic_error("NumberField: gcd with minimal polynomial not a unit");
  QPoly result = u0 * (Rational(1) / r0.coeff(0));
  return reduce(result);
}

Scalar NumberField::zero() const {
  return Scalar(this, std::vector<Rational>(degree_, Rational(0)));
}

Scalar NumberField::one() const {
  std::vector<Rational> c(degree_, Rational(0));
  c[0] = 1;
  return Scalar(this, std::move(c));
}

Scalar NumberField::generator() const { return from_poly(QPoly::x()); }

Scalar NumberField::from_rational(const Rational& r) const {
  std::vector<Rational> c(degree_, Rational(0));
  c[0] = r;
  return Scalar(this, std::move(c));
}

Scalar NumberField::from_int(long v) const { return from_rational(Rational(v)); }

Scalar NumberField::from_poly(const QPoly& p) const { return Scalar(this, reduce(p)); }

Scalar NumberField::two_cos_pi_over(unsigned m) const {
  if (m < 2) throw std::logic_error("two_cos_pi_over: m must be >= 2");
  if (L_ % m != 0) throw std::logic_error("two_cos_pi_over: m does not divide field order L");
  return from_poly(QPoly::dickson(L_ / m));
}

int NumberField::sign_of(const std::vector<Rational>& coeffs) const {
  bool zero = true;
  for (const auto& c : coeffs)
    if (c != 0) {
      zero = false;
      break;
    }
  if (zero) return 0;
  if (degree_ == 1) return sgn(coeffs[0]);

  Rational lo, hi;
  {
    std::lock_guard<std::mutex> lock(iso_mutex_);
    lo = iso_lo_;
    hi = iso_hi_;
  }
  QPoly p{std::vector<Rational>(coeffs)};
  for (int iter = 0;; ++iter) {
    // Interval Horner evaluation of p over [lo, hi].
    Rational alo(0), ahi(0);
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
      if (first) {
        alo = ahi = p.coeff(k);
        first = false;
        continue;
      }
      Rational c1 = alo * lo, c2 = alo * hi, c3 = ahi * lo, c4 = ahi * hi;
      Rational mn = std::min(std::min(c1, c2), std::min(c3, c4));
      Rational mx = std::max(std::max(c1, c2), std::max(c3, c4));
      alo = mn + p.coeff(k);
      ahi = mx + p.coeff(k);
    }
    if (sgn(alo) > 0) return 1;
    if (sgn(ahi) < 0) return -1;
    refine_interval(lo, hi);
    if (iter > 4096) throw std::logic_error("NumberField: sign refinement failed to converge");
  }
}

void NumberField::refine_interval(Rational& lo, Rational& hi) const {
  Rational mid = (lo + hi) / 2;
  if (sgn(minpoly_.eval(mid)) > 0) hi = mid;
  else lo = mid;
  std::lock_guard<std::mutex> lock(iso_mutex_);
  if (hi - lo < iso_hi_ - iso_lo_) {
    iso_lo_ = lo;
    iso_hi_ = hi;
  }
}

double NumberField::approx_of(const std::vector<Rational>& coeffs) const {
  if (degree_ == 1) return coeffs[0].get_d();
  Rational lo, hi;
  {
    std::lock_guard<std::mutex> lock(iso_mutex_);
    lo = iso_lo_;
    hi = iso_hi_;
  }
  Rational eps(1, 1);
  for (int i = 0; i < 48; ++i) eps /= 2;
  while (hi - lo > eps) refine_interval(lo, hi);
  Rational mid = (lo + hi) / 2;
  double c = mid.get_d();
  double acc = 0.0;
  for (int k = static_cast<int>(degree_) - 1; k >= 0; --k) acc = acc * c + coeffs[k].get_d();
  return acc;
}

// ---------------------------------------------------------------------------
// Scalar

namespace {
const NumberField& require_field(const NumberField* f) {
  if (f == nullptr) throw std::logic_error("Scalar: use of default-constructed scalar");
  return *f;
}
void require_same(const NumberField* a, const NumberField* b) {
  if (a != b) throw std::logic_error("Scalar: operands from different fields");
}
}  // namespace

const NumberField& Scalar::field() const { return require_field(field_); }

bool Scalar::is_zero() const {
  require_field(field_);
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

bool Scalar::is_rational() const {
  require_field(field_);
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

int Scalar::sign() const { return require_field(field_).sign_of(c_); }

double Scalar::approx() const { return require_field(field_).approx_of(c_); }

Scalar Scalar::operator+(const Scalar& o) const {
  require_field(field_);
  require_same(field_, o.field_);
  std::vector<Rational> c(c_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
  return Scalar(field_, std::move(c));
}

Scalar Scalar::operator-(const Scalar& o) const {
  require_field(field_);
  require_same(field_, o.field_);
  std::vector<Rational> c(c_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c_[i];
  return Scalar(field_, std::move(c));
}

Scalar Scalar::operator*(const Scalar& o) const {
  require_field(field_);
  require_same(field_, o.field_);
  return Scalar(field_, field_->mul(c_, o.c_));
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  require_field(field_);
  std::vector<Rational> c(c_);
  for (auto& v : c) v = -v;
  return Scalar(field_, std::move(c));
}

Scalar Scalar::inverse() const {
  require_field(field_);
  return Scalar(field_, field_->inv(c_));
}

bool Scalar::operator==(const Scalar& o) const {
  require_field(field_);
  require_same(field_, o.field_);
  return c_ == o.c_;
}

std::size_t Scalar::hash() const {
  std::size_t h = 0xc0871ca1ULL;
  for (const auto& c : c_) h = hash_combine(h, hash_rational(c));
  return h;
}

std::string Scalar::to_string() const {
  require_field(field_);
  if (is_rational()) return c_[0].get_str();
  std::string s;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!s.empty()) s += " + ";
    s += c_[k].get_str();
    if (k >= 1) s += "*c" + (k > 1 ? "^" + std::to_string(k) : "");
  }
  return s.empty() ? "0" : s;
}

}  // namespace titscone
