#pragma once
#include <optional>
#include <vector>

#include "ep/scalar.hpp"

namespace ep {

// Finitely generated model of the unit group of the coefficient field.
// F_p: one generator (a primitive root) with torsion p-1 (none for p = 2).
// Q: generator 0 is -1 with torsion 2, followed by a declared list of
// primes as free generators; units outside that span are rejected.
class UnitsModel {
 public:
  static UnitsModel for_field(FieldSpec f, std::vector<long> q_primes = {},
                              long p_cap = 1000000);

  FieldSpec field() const { return field_; }
  int n_gens() const { return static_cast<int>(torsion_.size()); }
  // torsion order per generator, 0 = free
  const std::vector<mpz_class>& torsion() const { return torsion_; }
  long primitive_root() const { return root_; }  // F_p only
  const std::vector<long>& primes() const { return primes_; }

  // Exponent vector of a unit; throws encoding_error when the unit is not
  // in the span, domain_error on zero.
  std::vector<mpz_class> encode(const Scalar& u) const;
  Scalar decode(const std::vector<mpz_class>& e) const;

 private:
  FieldSpec field_;
  std::vector<mpz_class> torsion_;
  std::vector<long> primes_;  // Q only
  long root_ = 0;             // F_p only
  std::vector<int> dlog_;     // F_p only, dlog_[x] for x in [1, p)
};

}  // namespace ep
