#include "ep/ktheory.hpp"

#include "ep/errors.hpp"

namespace ep {
namespace {

// Exponent vectors of every C entry; throws encoding_error when an entry is
// outside the span of the units model.
ExpMat encode_c(const KatsuraTriple& k, const UnitsModel& u) {
  if (u.field() != k.field)
    throw schema_error("units model field does not match the triple");
  ExpMat logc(static_cast<size_t>(k.rows()));
  for (int v = 0; v < k.rows(); ++v) {
    logc[v].reserve(static_cast<size_t>(k.cols()));
    for (int w = 0; w < k.cols(); ++w) logc[v].push_back(u.encode(k.C[v][w]));
  }
  return logc;
}

}  // namespace

ZMat kh_ia_t(const KatsuraTriple& k) {
  // row_vertices[v] sits at column index vcol in the full vertex list
  ZMat m = zmat(k.cols(), k.rows());
  for (int v = 0; v < k.rows(); ++v) {
    const int vcol = [&] {
      for (int w = 0; w < k.cols(); ++w)
        if (k.vertices[w] == k.row_vertices[v]) return w;
      throw internal_error("row vertex missing from the vertex list");
    }();
    m[vcol][v] += 1;
    for (int w = 0; w < k.cols(); ++w) m[w][v] -= k.A[v][w];
  }
  return m;
}

ZMat assemble_phi1(const KatsuraTriple& k, const UnitsModel& u) {
  const int kk = u.n_gens();
  const ExpMat logc = encode_c(k, u);
  const ZMat iat = kh_ia_t(k);
  WMat w = wmat(2 * k.cols(), 2 * k.rows(), kk);
  for (int row = 0; row < k.cols(); ++row)
    for (int col = 0; col < k.rows(); ++col) {
      w[row][col].a = iat[row][col];
      w[k.cols() + row][k.rows() + col].a =
          (k.vertices[row] == k.row_vertices[col] ? 1 : 0) - k.B[col][row];
      // -C^*_{row,col} = log C_{col,row}
      w[row][k.rows() + col].xi = logc[col][row];
    }
  return assembled_graded(w, k.cols(), k.rows(), kk, u.torsion());
}

ZMat assemble_checked(const KatsuraTriple& k, const UnitsModel& u) {
  const int kk = u.n_gens();
  const ExpMat logc = encode_c(k, u);
  WMat w = wmat(2 * k.rows(), 2 * k.cols(), kk);
  for (int row = 0; row < k.rows(); ++row)
    for (int col = 0; col < k.cols(); ++col) {
      const long diag = (k.row_vertices[row] == k.vertices[col]) ? 1 : 0;
      // units move by I - B, integers by I - A, and the integer coordinates
      // feed the units through the twists: (I-D)(n,u)_v has unit part
      // u_v - B.log u - log C . n
      w[row][col].a = diag - k.B[row][col];
      w[k.rows() + row][k.cols() + col].a = diag - k.A[row][col];
      for (int g = 0; g < kk; ++g)
        w[row][k.cols() + col].xi[static_cast<size_t>(g)] =
            -logc[row][col][static_cast<size_t>(g)];
    }
  return assembled_graded(w, k.rows(), k.cols(), kk, u.torsion());
}

KHResult kh_groups(const KatsuraTriple& k, const UnitsModel& u) {
  KHResult r;
  const ZMat iat = kh_ia_t(k);
  const auto ck0 = coker_ker(iat);
  r.kh0 = ck0.coker;
  r.ker_ia_rank = ck0.ker_rank;
  r.witness.snf_ia = ck0.snf_diag;

  const ZMat phi1 = assemble_phi1(k, u);
  const auto ck1 = coker_ker(phi1);
  r.coker_phi1 = ck1.coker;
  r.witness.snf_phi1 = ck1.snf_diag;

  r.kh1 = ab_direct_sum(r.coker_phi1, ab_free(r.ker_ia_rank));
  r.witness.ses = "0 -> " + r.coker_phi1.str() + " -> " + r.kh1.str() +
                  " -> " + ab_free(r.ker_ia_rank).str() + " -> 0";
  return r;
}

BFResult bf_modules(const KatsuraTriple& k, const UnitsModel& u) {
  BFResult r;
  r.bf = coker_ker(assemble_phi1(k, u)).coker;
  r.bf_checked = coker_ker(assemble_checked(k, u)).coker;
  return r;
}

}  // namespace ep
