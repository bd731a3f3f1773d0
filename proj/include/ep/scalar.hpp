#pragma once
#include <gmpxx.h>

#include <compare>
#include <string>

namespace ep {

// Coefficient field: exact rationals (p == 0) or a prime field F_p (p >= 2).
struct FieldSpec {
  long p = 0;
  bool is_rational() const { return p == 0; }
  bool operator==(const FieldSpec&) const = default;
  std::string str() const { return p == 0 ? "Q" : "F" + std::to_string(p); }
};

// Parses "Q" or "F<p>" (p prime). Throws schema_error otherwise.
FieldSpec parse_field(const std::string& s);

bool is_prime(long p);

// Exact field element. Rationals are mpq, F_p values are canonical
// representatives in [0, p). Mixing fields throws internal_error.
class Scalar {
 public:
  Scalar() : f_{}, q_(0) {}

  static Scalar zero(FieldSpec f);
  static Scalar one(FieldSpec f);
  static Scalar from_long(long v, FieldSpec f);
  static Scalar from_mpq(const mpq_class& v);  // rational field
  // Accepts "a", "a/b", "a mod p" (F_p only; p must match). A leading
  // U+2212 minus is treated as '-'.
  static Scalar from_string(const std::string& s, FieldSpec f);

  FieldSpec field() const { return f_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar inv() const;  // throws domain_error on zero
  // Field power with arbitrary integer exponent. Negative exponents require
  // a unit. Over Q the exponent must fit in a machine long.
  Scalar pow(const mpz_class& e) const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  std::strong_ordering operator<=>(const Scalar& o) const;

  std::string str() const;

  // Raw accessors for encoders.
  const mpq_class& rat() const;
  long modval() const;

 private:
  FieldSpec f_;
  mpq_class q_;  // used when f_.p == 0
  long r_ = 0;   // used when f_.p > 0, in [0, p)

  void check_same(const Scalar& o) const;
};

}  // namespace ep
