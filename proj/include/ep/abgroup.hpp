#pragma once
#include <string>
#include <vector>

#include "ep/snf.hpp"

namespace ep {

// Finitely generated abelian group Z^rank + sum Z/torsion[i], with each
// torsion entry >= 2 and dividing the next.
struct AbGroup {
  long rank = 0;
  std::vector<mpz_class> torsion;

  bool operator==(const AbGroup&) const = default;
  bool trivial() const { return rank == 0 && torsion.empty(); }
  std::string str() const;
};

AbGroup ab_free(long rank);
// Invariant factors from an arbitrary list of torsion orders (>= 1 allowed,
// ones are dropped).
AbGroup ab_of(long rank, const std::vector<mpz_class>& orders);
AbGroup ab_direct_sum(const AbGroup& a, const AbGroup& b);

// Cokernel and kernel of the map Z^cols -> Z^rows given by m.
struct CokerKer {
  AbGroup coker;
  long ker_rank = 0;
  std::vector<mpz_class> snf_diag;  // nonzero Smith diagonal entries
};
CokerKer coker_ker(const ZMat& m);

}  // namespace ep
