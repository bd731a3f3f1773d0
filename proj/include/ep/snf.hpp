#pragma once
#include <gmpxx.h>

#include <vector>

namespace ep {

using ZMat = std::vector<std::vector<mpz_class>>;

ZMat zmat(int rows, int cols);
ZMat zmat_identity(int n);
ZMat zmat_mul(const ZMat& a, const ZMat& b);
ZMat zmat_transpose(const ZMat& a);
bool zmat_eq(const ZMat& a, const ZMat& b);
mpz_class zmat_det(const ZMat& a);  // fraction-free Gaussian elimination

// M = U S V with U, V unimodular and S diagonal, nonnegative, each entry
// dividing the next.
struct SNFResult {
  ZMat u, s, v;
};

SNFResult smith_normal_form(const ZMat& m);

// Diagonal of the Smith form, nonzero entries only.
std::vector<mpz_class> snf_diagonal(const ZMat& m);

}  // namespace ep
