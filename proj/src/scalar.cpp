#include "ep/scalar.hpp"

#include <algorithm>

#include "ep/errors.hpp"

namespace ep {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

FieldSpec parse_field(const std::string& s) {
  if (s == "Q") return FieldSpec{0};
  if (s.size() >= 2 && s[0] == 'F') {
    const std::string digits = s.substr(1);
    if (!digits.empty() &&
        std::all_of(digits.begin(), digits.end(),
                    [](char ch) { return ch >= '0' && ch <= '9'; })) {
      long p = 0;
      try {
        p = std::stol(digits);
      } catch (const std::exception&) {
        throw schema_error("field modulus out of range: " + s);
      }
      if (!is_prime(p)) throw schema_error("field modulus not prime: " + s);
      if (p > (1L << 31)) throw schema_error("field modulus too large: " + s);
      return FieldSpec{p};
    }
  }
  throw schema_error("unknown field (expected Q or F<prime>): " + s);
}

namespace {

long norm_mod(long v, long p) {
  long r = v % p;
  return r < 0 ? r + p : r;
}

long mod_of_mpz(const mpz_class& v, long p) {
  mpz_class r = v % p;
  long x = r.get_si();
  return x < 0 ? x + p : x;
}

long mul_mod(long a, long b, long p) {
  return static_cast<long>(static_cast<__int128>(a) * b % p);
}

long pow_mod(long base, long e, long p) {
  long r = 1 % p, b = base % p;
  while (e > 0) {
    if (e & 1) r = mul_mod(r, b, p);
    b = mul_mod(b, b, p);
    e >>= 1;
  }
  return r;
}

// Replaces a leading U+2212 (UTF-8 e2 88 92) with '-'.
std::string ascii_minus(const std::string& s) {
  if (s.size() >= 3 && static_cast<unsigned char>(s[0]) == 0xe2 &&
      static_cast<unsigned char>(s[1]) == 0x88 &&
      static_cast<unsigned char>(s[2]) == 0x92)
    return "-" + s.substr(3);
  return s;
}

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

Scalar Scalar::zero(FieldSpec f) {
  Scalar s;
  s.f_ = f;
  return s;
}

Scalar Scalar::one(FieldSpec f) { return from_long(1, f); }

Scalar Scalar::from_long(long v, FieldSpec f) {
  Scalar s;
  s.f_ = f;
  if (f.is_rational())
    s.q_ = v;
  else
    s.r_ = norm_mod(v, f.p);
  return s;
}

Scalar Scalar::from_mpq(const mpq_class& v) {
  Scalar s;
  s.q_ = v;
  s.q_.canonicalize();
  return s;
}

Scalar Scalar::from_string(const std::string& raw, FieldSpec f) {
  std::string s = strip(ascii_minus(raw));
  if (s.empty()) throw schema_error("empty scalar literal");
  // Optional "a mod p" form.
  size_t mpos = s.find(" mod ");
  std::string body = s;
  if (mpos != std::string::npos) {
    if (f.is_rational())
      throw schema_error("'mod' literal in rational field: " + raw);
    std::string ptail = strip(s.substr(mpos + 5));
    long p = 0;
    try {
      p = std::stol(ptail);
    } catch (const std::exception&) {
      throw schema_error("bad modulus in scalar literal: " + raw);
    }
    if (p != f.p)
      throw schema_error("scalar modulus " + std::to_string(p) +
                         " does not match field " + f.str());
    body = strip(s.substr(0, mpos));
  }
  const bool ok_chars =
      !body.empty() &&
      std::all_of(body.begin(), body.end(), [](char ch) {
        return (ch >= '0' && ch <= '9') || ch == '-' || ch == '/' || ch == '+';
      });
  if (!ok_chars) throw schema_error("bad scalar literal: " + raw);
  mpq_class q;
  try {
    q = mpq_class(body);
  } catch (const std::exception&) {
    throw schema_error("bad scalar literal: " + raw);
  }
  if (q.get_den() == 0)
    throw schema_error("zero denominator in scalar literal: " + raw);
  q.canonicalize();
  Scalar out;
  out.f_ = f;
  if (f.is_rational()) {
    out.q_ = q;
    return out;
  }
  long num = mod_of_mpz(q.get_num(), f.p);
  long den = mod_of_mpz(q.get_den(), f.p);
  if (den == 0) throw schema_error("denominator divisible by p: " + raw);
  out.r_ = mul_mod(num, pow_mod(den, f.p - 2, f.p), f.p);
  return out;
}

void Scalar::check_same(const Scalar& o) const {
  check_internal(f_ == o.f_, "scalar field mismatch: " + f_.str() + " vs " +
                                 o.f_.str());
}

bool Scalar::is_zero() const {
  return f_.is_rational() ? q_ == 0 : r_ == 0;
}

bool Scalar::is_one() const { return f_.is_rational() ? q_ == 1 : r_ == 1 % f_.p; }

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  Scalar s;
  s.f_ = f_;
  if (f_.is_rational())
    s.q_ = q_ + o.q_;
  else
    s.r_ = norm_mod(r_ + o.r_, f_.p);
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same(o);
  Scalar s;
  s.f_ = f_;
  if (f_.is_rational())
    s.q_ = q_ - o.q_;
  else
    s.r_ = norm_mod(r_ - o.r_, f_.p);
  return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  Scalar s;
  s.f_ = f_;
  if (f_.is_rational())
    s.q_ = q_ * o.q_;
  else
    s.r_ = mul_mod(r_, o.r_, f_.p);
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s;
  s.f_ = f_;
  if (f_.is_rational())
    s.q_ = -q_;
  else
    s.r_ = r_ == 0 ? 0 : f_.p - r_;
  return s;
}

Scalar Scalar::inv() const {
  if (is_zero()) throw domain_error("inverse of zero");
  Scalar s;
  s.f_ = f_;
  if (f_.is_rational())
    s.q_ = 1 / q_;
  else
    s.r_ = pow_mod(r_, f_.p - 2, f_.p);
  return s;
}

Scalar Scalar::pow(const mpz_class& e) const {
  if (is_zero()) {
    if (e > 0) return *this;
    if (e == 0) return one(f_);
    throw domain_error("negative power of zero");
  }
  Scalar s;
  s.f_ = f_;
  if (!f_.is_rational()) {
    // Nonzero values form a cyclic group of order p-1.
    long m = f_.p - 1;
    mpz_class er = e % m;
    long ee = er.get_si();
    if (ee < 0) ee += m;
    s.r_ = pow_mod(r_, ee, f_.p);
    return s;
  }
  if (!e.fits_slong_p())
    throw domain_error("rational power exponent out of machine range");
  long ee = e.get_si();
  mpq_class base = ee < 0 ? mpq_class(1 / q_) : q_;
  unsigned long k = ee < 0 ? static_cast<unsigned long>(-(ee + 1)) + 1
                           : static_cast<unsigned long>(ee);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), k);
  s.q_ = mpq_class(num, den);
  s.q_.canonicalize();
  return s;
}

bool Scalar::operator==(const Scalar& o) const {
  if (f_ != o.f_) return false;
  return f_.is_rational() ? q_ == o.q_ : r_ == o.r_;
}

std::strong_ordering Scalar::operator<=>(const Scalar& o) const {
  check_same(o);
  if (f_.is_rational()) {
    int c = cmp(q_, o.q_);
    return c < 0   ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }
  return r_ <=> o.r_;
}

std::string Scalar::str() const {
  return f_.is_rational() ? q_.get_str() : std::to_string(r_);
}

const mpq_class& Scalar::rat() const {
  check_internal(f_.is_rational(), "rat() on F_p scalar");
  return q_;
}

long Scalar::modval() const {
  check_internal(!f_.is_rational(), "modval() on rational scalar");
  return r_;
}

}  // namespace ep
