#pragma once
#include <random>
#include <string>
#include <vector>

#include "ep/abgroup.hpp"
#include "ep/snf.hpp"

namespace ep {

// Entry of the square-zero extension Z ⋉ Z^k: integer part plus a unit
// exponent vector over k generators. Product rule
// (a,ξ)(a',ξ') = (aa', aξ' + a'ξ).
struct WEntry {
  mpz_class a;
  std::vector<mpz_class> xi;

  explicit WEntry(int k = 0) : a(0), xi(static_cast<size_t>(k), mpz_class(0)) {}
  bool is_zero() const;
};

using WMat = std::vector<std::vector<WEntry>>;
using ExpVec = std::vector<mpz_class>;
using ExpMat = std::vector<std::vector<ExpVec>>;

WMat wmat(int rows, int cols, int k);
WMat wmat_from_int(const ZMat& m, int k);
WMat wmat_mul(const WMat& x, const WMat& y);
bool wmat_eq(const WMat& x, const WMat& y);

// Graded map on U^half ⊕ Z^half coordinates: integer parts act on like
// coordinates, exponent parts couple the Z block into the U block.
// Stored so that the graded matrix is [[a^t, cstar],[0, b^t]].
struct BlockMap {
  int half = 0;
  int k = 0;
  ZMat a, b;     // half × half integer matrices
  ExpMat cstar;  // half × half exponent vectors, cstar[v][w] encodes the
                 // inverse of the unit attached to (w,v)

  WMat dstar() const;
};

// E = [[M,0,P,0],[0,I,0,0],[0,0,N,0],[0,0,0,I]] in n-blocks, packaged as a
// BlockMap of half-size 2n.
BlockMap stabilize(const ZMat& m, const ZMat& n, const ExpMat& p, int k);

// Integer matrix of the abelianized graded map: unit exponent coordinates
// first (k per graded slot), then integer coordinates, with one relation
// column of order torsion[g] appended per codomain unit coordinate with
// torsion[g] > 0. The input must be a structurally graded 2*row_half ×
// 2*col_half matrix (zero lower left, integer diagonal blocks, exponent-only
// coupling); violations throw internal_error.
ZMat assembled_graded(const WMat& w, int row_half, int col_half, int k,
                      const std::vector<mpz_class>& torsion);

struct ConjugateReport {
  bool structure_ok = false;   // product solvable for a BlockMap
  std::string structure_detail;
  BlockMap result;             // meaningful only when structure_ok
  bool a_nonneg = false;       // A' entrywise >= 0
  bool cond_a0b0 = false;      // A'_{vw} = 0 forces B'_{vw} = 0
  bool cond_a0c1 = false;      // A'_{vw} = 0 forces the attached unit = 1
  bool kspi_form = false;      // all three of the above
  bool coker_invariant = false;
  AbGroup coker_e, coker_w;
  long ker_rank_e = 0, ker_rank_w = 0;
};

// W = U * dstar(E) * V over W-entries; U, V must be integer matrices of size
// 2*half with zero lower-left block and determinant ±1 (else domain_error).
// Solves UEV = [[I - A'^t, C*'],[0, I - B'^t]] when the product has that
// shape and reports the KSPI-form checks; never throws on a shape-violating
// product, it reports instead.
ConjugateReport conjugate(const BlockMap& e, const ZMat& u, const ZMat& v,
                          const std::vector<mpz_class>& torsion);

// The displayed conjugation pair: U = [[I,I,0],[0,I,0],[0,0,I_2n]] and
// V = [[0,-I,0,0],[I,Y,0,0],[0,0,0,-I],[0,0,-I,0]] in n-blocks.
ZMat realization_u(int n);
ZMat realization_v(int n, const ZMat& y);

struct YSearchResult {
  bool found = false;
  ZMat y;
  long tried = 0;
  ConjugateReport report;  // for the found Y
};

// Brute-force search over Y with |entries| <= bound (candidate budget capped)
// for a Y making conjugate(stabilize(M,N,P), U, V(Y)) land in KSPI form.
YSearchResult search_y(const ZMat& m, const ZMat& n, const ExpMat& p, int k,
                       const std::vector<mpz_class>& torsion, long bound = 3,
                       long budget = 100000);

// Random unimodular matrix of size 2*half with zero off-diagonal blocks,
// generated by elementary row operations confined to each half.
ZMat random_block_unimodular(int half, std::mt19937_64& rng, int ops = 12);

}  // namespace ep
