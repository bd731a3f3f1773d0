#include "ep/snf.hpp"

#include <algorithm>

#include "ep/errors.hpp"

namespace ep {

ZMat zmat(int rows, int cols) {
  return ZMat(rows, std::vector<mpz_class>(cols, 0));
}

ZMat zmat_identity(int n) {
  ZMat m = zmat(n, n);
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

ZMat zmat_mul(const ZMat& a, const ZMat& b) {
  const int m = static_cast<int>(a.size());
  const int k = m ? static_cast<int>(a[0].size()) : 0;
  const int n = k && !b.empty() ? static_cast<int>(b[0].size()) : 0;
  check_internal(static_cast<int>(b.size()) == k, "matrix product shape");
  ZMat r = zmat(m, n);
  for (int i = 0; i < m; ++i)
    for (int x = 0; x < k; ++x) {
      if (a[i][x] == 0) continue;
      for (int j = 0; j < n; ++j) r[i][j] += a[i][x] * b[x][j];
    }
  return r;
}

ZMat zmat_transpose(const ZMat& a) {
  const int m = static_cast<int>(a.size());
  const int n = m ? static_cast<int>(a[0].size()) : 0;
  ZMat r = zmat(n, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) r[j][i] = a[i][j];
  return r;
}

bool zmat_eq(const ZMat& a, const ZMat& b) { return a == b; }

// Bareiss fraction-free elimination.
mpz_class zmat_det(const ZMat& a) {
  const int n = static_cast<int>(a.size());
  for (const auto& row : a)
    check_internal(static_cast<int>(row.size()) == n, "det of non-square");
  if (n == 0) return 1;
  ZMat m = a;
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        mpz_class t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace {

struct Worker {
  ZMat u, s, v;
  int m, n;

  explicit Worker(const ZMat& mat) {
    m = static_cast<int>(mat.size());
    n = m ? static_cast<int>(mat[0].size()) : 0;
    for (const auto& row : mat)
      check_internal(static_cast<int>(row.size()) == n, "ragged matrix");
    u = zmat_identity(m);
    s = mat;
    v = zmat_identity(n);
  }

  // S <- E S with E = row_i += q row_j; U absorbs E^-1 on the right.
  void row_addmul(int i, int j, const mpz_class& q) {
    for (int x = 0; x < n; ++x) s[i][x] += q * s[j][x];
    for (int x = 0; x < m; ++x) u[x][j] -= q * u[x][i];
  }
  void row_swap(int i, int j) {
    std::swap(s[i], s[j]);
    for (int x = 0; x < m; ++x) std::swap(u[x][i], u[x][j]);
  }
  void row_negate(int i) {
    for (int x = 0; x < n; ++x) s[i][x] = -s[i][x];
    for (int x = 0; x < m; ++x) u[x][i] = -u[x][i];
  }
  // S <- S E with E = col_i += q col_j; V absorbs E^-1 on the left.
  void col_addmul(int i, int j, const mpz_class& q) {
    for (int x = 0; x < m; ++x) s[x][i] += q * s[x][j];
    for (int x = 0; x < n; ++x) v[j][x] -= q * v[i][x];
  }
  void col_swap(int i, int j) {
    for (int x = 0; x < m; ++x) std::swap(s[x][i], s[x][j]);
    std::swap(v[i], v[j]);
  }

  bool find_pivot(int k, int& pi, int& pj) const {
    pi = -1;
    pj = -1;
    for (int i = k; i < m; ++i)
      for (int j = k; j < n; ++j) {
        if (s[i][j] == 0) continue;
        if (pi < 0 ||
            mpz_cmpabs(s[i][j].get_mpz_t(), s[pi][pj].get_mpz_t()) < 0) {
          pi = i;
          pj = j;
        }
      }
    return pi >= 0;
  }

  void diagonalize(int from) {
    const int rmax = std::min(m, n);
    for (int k = from; k < rmax; ++k) {
      int pi, pj;
      if (!find_pivot(k, pi, pj)) return;
      if (pi != k) row_swap(k, pi);
      if (pj != k) col_swap(k, pj);
      for (;;) {
        bool clean = true;
        for (int i = k + 1; i < m; ++i) {
          if (s[i][k] == 0) continue;
          mpz_class q = s[i][k] / s[k][k];  // truncated
          row_addmul(i, k, -q);
          if (s[i][k] != 0) clean = false;
        }
        for (int j = k + 1; j < n; ++j) {
          if (s[k][j] == 0) continue;
          mpz_class q = s[k][j] / s[k][k];
          col_addmul(j, k, -q);
          if (s[k][j] != 0) clean = false;
        }
        if (clean) break;
        // a smaller remainder appeared somewhere in row/column k
        if (!find_pivot(k, pi, pj)) break;
        if (pi != k) row_swap(k, pi);
        if (pj != k) col_swap(k, pj);
      }
      if (s[k][k] < 0) row_negate(k);
    }
  }

  void fix_divisibility() {
    const int rmax = std::min(m, n);
    for (;;) {
      int bad = -1;
      for (int k = 0; k + 1 < rmax; ++k) {
        if (s[k][k] == 0 || s[k + 1][k + 1] == 0) break;
        if (s[k + 1][k + 1] % s[k][k] != 0) {
          bad = k;
          break;
        }
      }
      if (bad < 0) return;
      col_addmul(bad, bad + 1, 1);
      diagonalize(bad);
    }
  }
};

}  // namespace

SNFResult smith_normal_form(const ZMat& mat) {
  Worker w(mat);
  w.diagonalize(0);
  w.fix_divisibility();
  // invariants: reconstruction and unimodularity
  check_internal(zmat_eq(zmat_mul(w.u, zmat_mul(w.s, w.v)), mat),
                 "snf reconstruction failed");
  mpz_class du = zmat_det(w.u), dv = zmat_det(w.v);
  check_internal((du == 1 || du == -1) && (dv == 1 || dv == -1),
                 "snf transforms are not unimodular");
  const int rmax = std::min(w.m, w.n);
  for (int k = 0; k < rmax; ++k) {
    check_internal(w.s[k][k] >= 0, "snf diagonal sign");
    if (k + 1 < rmax && w.s[k + 1][k + 1] != 0)
      check_internal(w.s[k][k] != 0 && w.s[k + 1][k + 1] % w.s[k][k] == 0,
                     "snf divisibility chain");
    for (int j = 0; j < w.n; ++j)
      if (j != k)
        check_internal(w.s[k][j] == 0, "snf off-diagonal residue");
  }
  return {w.u, w.s, w.v};
}

std::vector<mpz_class> snf_diagonal(const ZMat& m) {
  SNFResult r = smith_normal_form(m);
  std::vector<mpz_class> d;
  const int rmax = std::min(static_cast<int>(r.s.size()),
                            r.s.empty() ? 0 : static_cast<int>(r.s[0].size()));
  for (int k = 0; k < rmax; ++k)
    if (r.s[k][k] != 0) d.push_back(r.s[k][k]);
  return d;
}

}  // namespace ep
