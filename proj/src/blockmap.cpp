#include "ep/blockmap.hpp"

#include <cstdlib>

#include "ep/errors.hpp"

namespace ep {
namespace {

void check_square(const ZMat& m, int n, const std::string& name) {
  if (static_cast<int>(m.size()) != n)
    throw schema_error(name + " must be " + std::to_string(n) + "x" +
                       std::to_string(n));
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n)
      throw schema_error(name + " must be " + std::to_string(n) + "x" +
                         std::to_string(n));
}

WEntry wentry_mul(const WEntry& x, const WEntry& y) {
  const int k = static_cast<int>(x.xi.size());
  check_internal(y.xi.size() == x.xi.size(), "W-entry generator count mismatch");
  WEntry r(k);
  r.a = x.a * y.a;
  for (int g = 0; g < k; ++g) r.xi[g] = x.a * y.xi[g] + y.a * x.xi[g];
  return r;
}

void wentry_addto(WEntry& x, const WEntry& y) {
  x.a += y.a;
  for (size_t g = 0; g < x.xi.size(); ++g) x.xi[g] += y.xi[g];
}

bool xi_zero(const WEntry& e) {
  for (const auto& z : e.xi)
    if (z != 0) return false;
  return true;
}

}  // namespace

bool WEntry::is_zero() const {
  if (a != 0) return false;
  return xi_zero(*this);
}

WMat wmat(int rows, int cols, int k) {
  return WMat(static_cast<size_t>(rows),
              std::vector<WEntry>(static_cast<size_t>(cols), WEntry(k)));
}

WMat wmat_from_int(const ZMat& m, int k) {
  WMat r = wmat(static_cast<int>(m.size()),
                m.empty() ? 0 : static_cast<int>(m[0].size()), k);
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j) r[i][j].a = m[i][j];
  return r;
}

WMat wmat_mul(const WMat& x, const WMat& y) {
  check_internal(!x.empty() && !y.empty() && x[0].size() == y.size(),
                 "W-matrix shape mismatch in product");
  const int k = static_cast<int>(x[0][0].xi.size());
  WMat r = wmat(static_cast<int>(x.size()), static_cast<int>(y[0].size()), k);
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t l = 0; l < y.size(); ++l) {
      if (x[i][l].is_zero()) continue;
      for (size_t j = 0; j < y[0].size(); ++j)
        wentry_addto(r[i][j], wentry_mul(x[i][l], y[l][j]));
    }
  return r;
}

bool wmat_eq(const WMat& x, const WMat& y) {
  if (x.size() != y.size()) return false;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i].size() != y[i].size()) return false;
    for (size_t j = 0; j < x[i].size(); ++j) {
      if (x[i][j].a != y[i][j].a || x[i][j].xi != y[i][j].xi) return false;
    }
  }
  return true;
}

WMat BlockMap::dstar() const {
  WMat w = wmat(2 * half, 2 * half, k);
  for (int i = 0; i < half; ++i)
    for (int j = 0; j < half; ++j) {
      w[i][j].a = a[j][i];
      w[half + i][half + j].a = b[j][i];
      w[i][half + j].xi = cstar[i][j];
    }
  return w;
}

BlockMap stabilize(const ZMat& m, const ZMat& n, const ExpMat& p, int k) {
  const int sz = static_cast<int>(m.size());
  if (sz == 0) throw schema_error("stabilize needs matrices of size >= 1");
  check_square(m, sz, "M");
  check_square(n, sz, "N");
  if (static_cast<int>(p.size()) != sz)
    throw schema_error("P must match the size of M and N");
  for (const auto& row : p) {
    if (static_cast<int>(row.size()) != sz)
      throw schema_error("P must match the size of M and N");
    for (const auto& e : row)
      if (static_cast<int>(e.size()) != k)
        throw schema_error("P entries must have one exponent per unit generator");
  }

  BlockMap e;
  e.half = 2 * sz;
  e.k = k;
  // graded matrix [[M,0],[0,I]] upper left, [[N,0],[0,I]] lower right,
  // [[P,0],[0,0]] coupling; fields store the transposes of the diagonal
  // blocks so that dstar() reproduces it.
  ZMat tl = zmat(e.half, e.half), br = zmat(e.half, e.half);
  for (int i = 0; i < sz; ++i) {
    for (int j = 0; j < sz; ++j) {
      tl[i][j] = m[i][j];
      br[i][j] = n[i][j];
    }
    tl[sz + i][sz + i] = 1;
    br[sz + i][sz + i] = 1;
  }
  e.a = zmat_transpose(tl);
  e.b = zmat_transpose(br);
  e.cstar.assign(static_cast<size_t>(e.half),
                 std::vector<ExpVec>(static_cast<size_t>(e.half),
                                     ExpVec(static_cast<size_t>(k), 0)));
  for (int i = 0; i < sz; ++i)
    for (int j = 0; j < sz; ++j) e.cstar[i][j] = p[i][j];
  return e;
}

ZMat assembled_graded(const WMat& w, int row_half, int col_half, int k,
                      const std::vector<mpz_class>& torsion) {
  check_internal(static_cast<int>(torsion.size()) == k,
                 "torsion list must have one entry per unit generator");
  check_internal(static_cast<int>(w.size()) == 2 * row_half,
                 "graded matrix has wrong row count");
  for (const auto& row : w)
    check_internal(static_cast<int>(row.size()) == 2 * col_half,
                   "graded matrix has wrong column count");
  for (int i = 0; i < 2 * row_half; ++i)
    for (int j = 0; j < 2 * col_half; ++j) {
      const bool urow = i < row_half, ucol = j < col_half;
      if (!urow && ucol)
        check_internal(w[i][j].is_zero(), "graded matrix: lower left not zero");
      if (urow == ucol)
        check_internal(xi_zero(w[i][j]),
                       "graded matrix: exponent part on a diagonal block");
      if (urow && !ucol)
        check_internal(w[i][j].a == 0,
                       "graded matrix: integer part on the coupling block");
    }

  int tors = 0;
  for (const auto& o : torsion)
    if (o != 0) ++tors;
  const int rows = row_half * k + row_half;
  const int cols = col_half * k + col_half + row_half * tors;
  ZMat m = zmat(rows, cols);
  for (int i = 0; i < row_half; ++i)
    for (int j = 0; j < col_half; ++j) {
      for (int g = 0; g < k; ++g) {
        m[i * k + g][j * k + g] = w[i][j].a;  // unit block, multiplicatively
        m[i * k + g][col_half * k + j] = w[i][col_half + j].xi[g];
      }
      m[row_half * k + i][col_half * k + j] = w[row_half + i][col_half + j].a;
    }
  int col = col_half * k + col_half;
  for (int i = 0; i < row_half; ++i)
    for (int g = 0; g < k; ++g) {
      if (torsion[g] == 0) continue;
      m[i * k + g][col++] = torsion[g];
    }
  return m;
}

ConjugateReport conjugate(const BlockMap& e, const ZMat& u, const ZMat& v,
                          const std::vector<mpz_class>& torsion) {
  const int m = e.half, sz = 2 * m;
  check_square(u, sz, "U");
  check_square(v, sz, "V");
  for (int i = m; i < sz; ++i)
    for (int j = 0; j < m; ++j)
      if (u[i][j] != 0 || v[i][j] != 0)
        throw domain_error(
            "conjugation matrices must keep the lower left block zero");
  if (abs(zmat_det(u)) != 1 || abs(zmat_det(v)) != 1)
    throw domain_error("conjugation matrices must be unimodular");

  const WMat de = e.dstar();
  const WMat w = wmat_mul(wmat_from_int(u, e.k), wmat_mul(de, wmat_from_int(v, e.k)));

  ConjugateReport rep;
  rep.structure_ok = true;
  for (int i = 0; i < sz && rep.structure_ok; ++i)
    for (int j = 0; j < sz && rep.structure_ok; ++j) {
      const bool urow = i < m, ucol = j < m;
      if (!urow && ucol && !w[i][j].is_zero()) {
        rep.structure_ok = false;
        rep.structure_detail = "lower left block of UEV is not zero";
      } else if (urow == ucol && !xi_zero(w[i][j])) {
        rep.structure_ok = false;
        rep.structure_detail = "UEV has unit parts on a diagonal block";
      } else if (urow && !ucol && w[i][j].a != 0) {
        rep.structure_ok = false;
        rep.structure_detail =
            "UEV has integer parts on the coupling block; the unit and "
            "integer coordinates stay coupled";
      }
    }
  if (!rep.structure_ok) return rep;

  // UEV = [[I - A'^t, C*'],[0, I - B'^t]]
  BlockMap r;
  r.half = m;
  r.k = e.k;
  ZMat at = zmat(m, m), bt = zmat(m, m);
  r.cstar.assign(static_cast<size_t>(m),
                 std::vector<ExpVec>(static_cast<size_t>(m),
                                     ExpVec(static_cast<size_t>(e.k), 0)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      at[i][j] = (i == j ? 1 : 0) - w[i][j].a;
      bt[i][j] = (i == j ? 1 : 0) - w[m + i][m + j].a;
      r.cstar[i][j] = w[i][m + j].xi;
    }
  r.a = zmat_transpose(at);
  r.b = zmat_transpose(bt);
  rep.result = r;

  rep.a_nonneg = true;
  rep.cond_a0b0 = true;
  rep.cond_a0c1 = true;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (r.a[i][j] < 0) rep.a_nonneg = false;
      if (r.a[i][j] == 0) {
        if (r.b[i][j] != 0) rep.cond_a0b0 = false;
        // cstar[j][i] encodes the inverse of the unit attached to (i,j)
        for (const auto& z : r.cstar[j][i])
          if (z != 0) rep.cond_a0c1 = false;
      }
    }
  rep.kspi_form = rep.a_nonneg && rep.cond_a0b0 && rep.cond_a0c1;

  const auto cke = coker_ker(assembled_graded(de, m, m, e.k, torsion));
  const auto ckw = coker_ker(assembled_graded(w, m, m, e.k, torsion));
  rep.coker_e = cke.coker;
  rep.coker_w = ckw.coker;
  rep.ker_rank_e = cke.ker_rank;
  rep.ker_rank_w = ckw.ker_rank;
  rep.coker_invariant =
      cke.coker == ckw.coker && cke.ker_rank == ckw.ker_rank;
  return rep;
}

ZMat realization_u(int n) {
  ZMat u = zmat(4 * n, 4 * n);
  for (int i = 0; i < 4 * n; ++i) u[i][i] = 1;
  for (int i = 0; i < n; ++i) u[i][n + i] = 1;
  return u;
}

ZMat realization_v(int n, const ZMat& y) {
  check_square(y, n, "Y");
  ZMat v = zmat(4 * n, 4 * n);
  for (int i = 0; i < n; ++i) {
    v[i][n + i] = -1;        // block (1,2) = -I
    v[n + i][i] = 1;         // block (2,1) = I
    v[2 * n + i][3 * n + i] = -1;  // block (3,4) = -I
    v[3 * n + i][2 * n + i] = -1;  // block (4,3) = -I
    for (int j = 0; j < n; ++j) v[n + i][n + j] = y[i][j];  // block (2,2) = Y
  }
  return v;
}

YSearchResult search_y(const ZMat& m, const ZMat& n, const ExpMat& p, int k,
                       const std::vector<mpz_class>& torsion, long bound,
                       long budget) {
  const int sz = static_cast<int>(m.size());
  const BlockMap e = stabilize(m, n, p, k);
  const ZMat u = realization_u(sz);

  YSearchResult res;
  const long width = 2 * bound + 1;
  std::vector<long> idx(static_cast<size_t>(sz) * sz, 0);
  while (res.tried < budget) {
    ZMat y = zmat(sz, sz);
    for (int i = 0; i < sz; ++i)
      for (int j = 0; j < sz; ++j) y[i][j] = idx[static_cast<size_t>(i) * sz + j] - bound;
    const auto rep = conjugate(e, u, realization_v(sz, y), torsion);
    ++res.tried;
    if (rep.structure_ok && rep.kspi_form) {
      res.found = true;
      res.y = y;
      res.report = rep;
      return res;
    }
    size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == width) idx[pos++] = 0;
    if (pos == idx.size()) break;  // exhausted the whole grid
  }
  return res;
}

ZMat random_block_unimodular(int half, std::mt19937_64& rng, int ops) {
  ZMat u = zmat_identity(2 * half);
  std::uniform_int_distribution<int> which(0, 2), coef(-2, 2);
  for (int step = 0; step < ops; ++step) {
    const int base = (rng() % 2 == 0) ? 0 : half;
    std::uniform_int_distribution<int> pick(base, base + half - 1);
    int i = pick(rng), j = pick(rng);
    switch (which(rng)) {
      case 0: {  // row j += q * row i
        if (i == j) break;
        const int q = coef(rng);
        for (int c = 0; c < 2 * half; ++c) u[j][c] += q * u[i][c];
        break;
      }
      case 1:
        std::swap(u[i], u[j]);
        break;
      default:
        for (int c = 0; c < 2 * half; ++c) u[i][c] = -u[i][c];
        break;
    }
  }
  return u;
}

}  // namespace ep
