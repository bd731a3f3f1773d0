#include "ep/units.hpp"

#include <algorithm>

#include "ep/errors.hpp"

namespace ep {
namespace {

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

long pow_mod(long b, long e, long p) {
  long r = 1;
  long x = b % p;
  while (e > 0) {
    if (e & 1) r = static_cast<long>(static_cast<__int128>(r) * x % p);
    x = static_cast<long>(static_cast<__int128>(x) * x % p);
    e >>= 1;
  }
  return r;
}

long find_primitive_root(long p) {
  if (p == 2) return 1;
  const auto facs = prime_factors(p - 1);
  for (long g = 2; g < p; ++g) {
    bool ok = true;
    for (long q : facs) {
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw internal_error("no primitive root found for prime " + std::to_string(p));
}

}  // namespace

UnitsModel UnitsModel::for_field(FieldSpec f, std::vector<long> q_primes, long p_cap) {
  UnitsModel m;
  m.field_ = f;
  if (f.is_rational()) {
    m.torsion_.push_back(2);  // generator -1
    std::sort(q_primes.begin(), q_primes.end());
    for (size_t i = 0; i < q_primes.size(); ++i) {
      long q = q_primes[i];
      if (q < 2 || !is_prime(q))
        throw schema_error("units prime list must contain primes, got " + std::to_string(q));
      if (i > 0 && q_primes[i - 1] == q)
        throw schema_error("duplicate prime in units prime list: " + std::to_string(q));
      m.torsion_.push_back(0);
    }
    m.primes_ = std::move(q_primes);
    return m;
  }
  if (!q_primes.empty())
    throw schema_error("units prime list is only meaningful over Q");
  const long p = f.p;
  if (p == 2) return m;  // trivial unit group, no generators
  if (p > p_cap)
    throw domain_error("discrete logs over F_" + std::to_string(p) +
                       " exceed the table cap " + std::to_string(p_cap));
  m.torsion_.push_back(p - 1);
  m.root_ = find_primitive_root(p);
  m.dlog_.assign(static_cast<size_t>(p), -1);
  long x = 1;
  for (long k = 0; k < p - 1; ++k) {
    m.dlog_[static_cast<size_t>(x)] = static_cast<int>(k);
    x = static_cast<long>(static_cast<__int128>(x) * m.root_ % p);
  }
  return m;
}

std::vector<mpz_class> UnitsModel::encode(const Scalar& u) const {
  if (u.field() != field_) throw internal_error("unit encode: field mismatch");
  if (u == Scalar::zero(field_)) throw domain_error("zero is not a unit");
  std::vector<mpz_class> e(torsion_.size(), 0);
  if (!field_.is_rational()) {
    if (field_.p == 2) return e;
    e[0] = dlog_[static_cast<size_t>(u.modval())];
    return e;
  }
  mpq_class q = u.rat();
  mpz_class num = q.get_num();
  mpz_class den = q.get_den();
  if (num < 0) {
    e[0] = 1;
    num = -num;
  }
  for (size_t i = 0; i < primes_.size(); ++i) {
    const mpz_class p(primes_[i]);
    while (num % p == 0) {
      num /= p;
      e[i + 1] += 1;
    }
    while (den % p == 0) {
      den /= p;
      e[i + 1] -= 1;
    }
  }
  if (num != 1 || den != 1)
    throw encoding_error("unit " + u.str() +
                         " has a prime factor outside the declared list");
  return e;
}

Scalar UnitsModel::decode(const std::vector<mpz_class>& e) const {
  if (e.size() != torsion_.size())
    throw internal_error("unit decode: wrong exponent vector length");
  Scalar r = Scalar::one(field_);
  if (!field_.is_rational()) {
    if (field_.p == 2) return r;
    return Scalar::from_long(root_, field_).pow(e[0]);
  }
  if (e[0] % 2 != 0) r = -r;
  for (size_t i = 0; i < primes_.size(); ++i)
    r = r * Scalar::from_long(primes_[i], field_).pow(e[i + 1]);
  return r;
}

}  // namespace ep
