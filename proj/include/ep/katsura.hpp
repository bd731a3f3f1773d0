#pragma once
#include <string>
#include <vector>

#include "ep/algebra.hpp"
#include "ep/tuple.hpp"

namespace ep {

// Row/column data (A, B, C) of a Katsura system: rows are the regular
// vertices, columns all vertices. A is nonnegative with nonzero rows,
// A_{v,w} = 0 forces B_{v,w} = 0 and C_{v,w} = 1, and C has unit entries.
struct KatsuraTriple {
  std::vector<std::string> vertices;      // all vertices (columns)
  std::vector<std::string> row_vertices;  // regular vertices (rows)
  std::vector<std::vector<long>> A, B;
  std::vector<std::vector<Scalar>> C;
  FieldSpec field;

  int rows() const { return static_cast<int>(row_vertices.size()); }
  int cols() const { return static_cast<int>(vertices.size()); }
};

// Validates the invariants above; throws domain_error on violation and
// schema_error on shape mismatch.
KatsuraTriple make_katsura(std::vector<std::string> vertices,
                           std::vector<std::string> row_vertices,
                           std::vector<std::vector<long>> A,
                           std::vector<std::vector<long>> B,
                           std::vector<std::vector<Scalar>> C,
                           FieldSpec field);

// tau(n) = (B + n) mod A (floored) and psi(1, n) = (B + n - tau(n)) / A.
long kat_tau(long A, long B, long n);
long kat_psi(long A, long B, long n);

std::string kat_edge_id(const std::string& v, const std::string& w, long i);

// The tuple (Z, E_A, phi, c): edges e(v,w,i) for 0 <= i < A_{v,w}, trivial
// vertex action, t e(v,w,n) = e(v,w,tau(n)), phi(t, e(v,w,n)) = t^psi(1,n),
// c(t, e(v,w,n)) = (-1)^((A-1)B) C_{v,w} when n = 0 and 1 otherwise.
EPTuple build_tuple(const KatsuraTriple& k);

// --- simplicity/pure-infiniteness test data ---

struct KspiReport {
  bool kspi = false;
  bool a0_implies_b0 = true;
  bool reach_all_pairs_lax = true;     // v reaches v via the empty path
  bool reach_all_pairs_strict = true;  // v to v needs a closed path
  bool two_first_return_loops = true;  // two distinct closed paths through
                                       // each vertex meeting it only at the ends
  bool two_loop_edges = true;          // informational: >= 2 parallel loops
  bool diag_b_one = true;
  std::string first_failure;  // "(a)".."(d)" label, empty when kspi
};

KspiReport is_kspi(const KatsuraTriple& k);

// --- Hausdorff groupoid test ---

enum class Hausdorff { Holds, Fails, Undetermined };

struct HausdorffReport {
  Hausdorff verdict = Hausdorff::Undetermined;
  long l_cap = 0;
  int path_len_cap = 0;
  bool explored_fully = true;  // every search closed inside the caps
  // minimal strongly fixed paths of t^l found within the caps, counted per
  // (l, final position (v, w)); the final edge sits in a B=0, A>0 slot
  struct Finding {
    long l;
    int at_v, to_w;  // column indices
    mpz_class count;
  };
  std::vector<Finding> findings;
  bool has_certificate = false;  // a pumpable residual cycle reaching a
                                 // vanishing position certifies failure
  long cert_l = 0;
  std::vector<int> cert_cycle;  // vertex column indices along the cycle
  std::string detail;
};

// Residual-exponent search: a path is strongly fixed by t^l when each step
// multiplies the integer residual by B/A and the last step lands in a
// B=0, A>0 position. l_cap = 0 means the lcm of the positive A entries.
HausdorffReport hausdorff_condition(const KatsuraTriple& k,
                                    int path_len_cap = 12, long l_cap = 0,
                                    long state_cap = 200000);

// --- flatness/K-regularity row conditions ---

enum class FlatStatus { FlatUnit, NotFlat, FlatZeroRow };

struct KregReport {
  bool cond_i = false;   // B_{v,w} = 0 iff A_{v,w} = 0 everywhere
  bool cond_ii = false;  // no row mixes zero and nonzero B on its A-support
  bool kregular = false;
  struct PairFlat {
    int row, col;  // row index, column index with A > 0
    FlatStatus status;
  };
  std::vector<PairFlat> pairs;
};

KregReport kreg_conditions(const KatsuraTriple& k);

// --- the corner units u_{v,w} ---

struct UvwPairReport {
  int row, col;
  bool intermediate_ok = false;   // u^n = sum_i e_{i+n} t^{q(n+i)} e_i^*
  bool closed_form_ok = false;    // u^B = (-1)^((A-1)B) C^{-1} t e_0 e_0^* + ...
  bool corner_inverse_ok = false; // u u^-1 = u^-1 u = sum_i e_i e_i^*
};

std::vector<UvwPairReport> uvw_identity_report(const KatsuraTriple& k,
                                               bool parallel = false);

}  // namespace ep
