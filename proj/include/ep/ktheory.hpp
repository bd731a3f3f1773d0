#pragma once
#include <string>

#include "ep/abgroup.hpp"
#include "ep/blockmap.hpp"
#include "ep/katsura.hpp"
#include "ep/units.hpp"

namespace ep {

// I - A^t as a map Z^{rows} -> Z^{cols(all vertices)}.
ZMat kh_ia_t(const KatsuraTriple& k);

// Integer matrix of Phi_1 = I - D^* : U^{reg} + Z^{reg} -> U^{E0} + Z^{E0}
// over the exponent presentation of U, torsion relation columns included.
// Blocks: (I - A^t) acting on unit exponents, coupling -C^*_{w,v} = log
// C_{v,w}, and I - B^t on the integer part.
ZMat assemble_phi1(const KatsuraTriple& k, const UnitsModel& u);

// Integer matrix of I - D : W^{E0} -> W^{reg}, the checked variant. Here the
// integer part maps by I - A, the unit part by I - B, and the coupling sends
// the integer coordinates into the units through -log C.
ZMat assemble_checked(const KatsuraTriple& k, const UnitsModel& u);

struct KHWitness {
  std::vector<mpz_class> snf_ia;    // nonzero Smith diagonal of I - A^t
  std::vector<mpz_class> snf_phi1;  // nonzero Smith diagonal of Phi_1
  std::string ses;                  // the short exact sequence for KH_1
};

struct KHResult {
  AbGroup kh0;
  AbGroup kh1;
  AbGroup coker_phi1;
  long ker_ia_rank = 0;
  KHWitness witness;
};

// KH_0 = coker(I - A^t), KH_1 = coker(Phi_1) + ker(I - A^t); the extension
// 0 -> coker(Phi_1) -> KH_1 -> ker(I - A^t) -> 0 splits since the kernel is
// free.
KHResult kh_groups(const KatsuraTriple& k, const UnitsModel& u);

struct BFResult {
  AbGroup bf;          // coker(I - D^*), same assembled matrix as Phi_1
  AbGroup bf_checked;  // coker(I - D)
};

BFResult bf_modules(const KatsuraTriple& k, const UnitsModel& u);

}  // namespace ep
