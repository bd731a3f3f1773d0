#include <random>
#include <vector>

#include "doctest.h"
#include "ep/abgroup.hpp"
#include "ep/blockmap.hpp"
#include "ep/errors.hpp"
#include "ep/ktheory.hpp"
#include "ep/snf.hpp"
#include "ep/units.hpp"
#include "helpers.hpp"

using namespace ep;
using namespace ep::testing;

namespace {

ZMat random_zmat(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-4, 4);
  ZMat m = zmat(n, n);
  for (auto& row : m)
    for (auto& x : row) x = d(rng);
  return m;
}

}  // namespace

TEST_CASE("smith normal form") {
  CHECK(snf_diagonal({{0}}).empty());
  CHECK(snf_diagonal({{-2}}) == std::vector<mpz_class>{2});
  CHECK(snf_diagonal({{2, 1}, {0, 2}}) ==
        std::vector<mpz_class>{1, 4});
  CHECK(snf_diagonal({{2, 0}, {0, 3}}) == std::vector<mpz_class>{1, 6});

  std::mt19937_64 rng(41);
  for (int i = 0; i < 25; ++i) {
    const ZMat m = random_zmat(4, rng);
    const SNFResult r = smith_normal_form(m);
    CHECK(zmat_eq(zmat_mul(r.u, zmat_mul(r.s, r.v)), m));
    mpz_class du = zmat_det(r.u), dv = zmat_det(r.v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    // diagonal, nonnegative, divisibility chain
    mpz_class prev = -1;
    for (size_t a = 0; a < r.s.size(); ++a)
      for (size_t b = 0; b < r.s[a].size(); ++b) {
        if (a != b) CHECK(r.s[a][b] == 0);
      }
    for (size_t a = 0; a < r.s.size() && a < r.s[0].size(); ++a) {
      const mpz_class& x = r.s[a][a];
      CHECK(x >= 0);
      if (prev > 0 && x != 0) CHECK(x % prev == 0);
      prev = x;
    }
  }
}

TEST_CASE("cokernels and kernels") {
  const CokerKer a = coker_ker({{2, 0}, {0, 3}});
  CHECK(a.coker == ab_of(0, {6}));
  CHECK(a.ker_rank == 0);

  const CokerKer b = coker_ker({{2, 0}});  // Z^2 -> Z
  CHECK(b.coker == ab_of(0, {2}));
  CHECK(b.ker_rank == 1);

  const CokerKer c = coker_ker({{0, 0}, {0, 0}});
  CHECK(c.coker == ab_free(2));
  CHECK(c.ker_rank == 2);
}

TEST_CASE("abelian group values") {
  CHECK(ab_free(0).trivial());
  CHECK(ab_free(0).str() == "0");
  CHECK(ab_free(2).str() == "Z^2");
  CHECK(ab_of(1, {2}).str() == "Z ⊕ Z/2");
  // invariant factors: Z/4 + Z/2 normalizes to [2, 4]
  CHECK(ab_of(0, {4, 2}).torsion == std::vector<mpz_class>{2, 4});
  CHECK(ab_of(0, {1, 1}).trivial());
  CHECK(ab_direct_sum(ab_of(1, {2}), ab_of(0, {3})) == ab_of(1, {6}));
}

TEST_CASE("prime field units") {
  const UnitsModel u = UnitsModel::for_field(F(7));
  CHECK(u.n_gens() == 1);
  CHECK(u.torsion() == std::vector<mpz_class>{6});
  CHECK(u.primitive_root() == 3);
  CHECK(u.encode(Scalar::from_long(3, F(7))) == std::vector<mpz_class>{1});
  CHECK(u.encode(Scalar::from_long(2, F(7))) == std::vector<mpz_class>{2});
  CHECK(u.encode(Scalar::from_long(6, F(7))) == std::vector<mpz_class>{3});
  CHECK(u.encode(Scalar::one(F(7))) == std::vector<mpz_class>{0});
  for (long x = 1; x < 7; ++x) {
    const Scalar s = Scalar::from_long(x, F(7));
    CHECK(u.decode(u.encode(s)) == s);
  }
  CHECK_THROWS_AS(u.encode(Scalar::zero(F(7))), domain_error);

  // F_2 has a trivial unit group
  const UnitsModel u2 = UnitsModel::for_field(F(2));
  CHECK(u2.n_gens() == 0);
  CHECK(u2.encode(Scalar::one(F(2))).empty());

  // the discrete log table refuses oversized primes
  CHECK_THROWS_AS(UnitsModel::for_field(F(1000003), {}, 1000000),
                  domain_error);
  // prime lists only make sense over Q
  CHECK_THROWS_AS(UnitsModel::for_field(F(7), {2}), schema_error);
}

TEST_CASE("rational units over a prime support") {
  const UnitsModel u = UnitsModel::for_field(Q(), {3, 2});
  CHECK(u.n_gens() == 3);  // -1, then 2, 3 sorted
  CHECK(u.torsion() == std::vector<mpz_class>{2, 0, 0});
  CHECK(u.primes() == std::vector<long>{2, 3});

  const Scalar x = Scalar::from_string("-8/9", Q());
  CHECK(u.encode(x) == std::vector<mpz_class>{1, 3, -2});
  CHECK(u.decode({1, 3, -2}) == x);
  CHECK(u.encode(Scalar::one(Q())) == std::vector<mpz_class>{0, 0, 0});
  CHECK(u.decode({1, 0, 0}) == Scalar::from_long(-1, Q()));

  CHECK_THROWS_AS(u.encode(Scalar::from_string("5/3", Q())), encoding_error);
  CHECK_THROWS_AS(UnitsModel::for_field(Q(), {4}), schema_error);
  CHECK_THROWS_AS(UnitsModel::for_field(Q(), {2, 2}), schema_error);
}

TEST_CASE("kh0 of the one vertex systems") {
  for (long n = 2; n <= 8; ++n) {
    const KHResult r = kh_groups(kat({{n}}, {{1}}, F(2)),
                                 UnitsModel::for_field(F(2)));
    if (n == 2)
      CHECK(r.kh0.trivial());
    else
      CHECK(r.kh0 == ab_of(0, {n - 1}));
    CHECK(r.ker_ia_rank == 0);
  }
}

TEST_CASE("kh1 with trivial units reduces to the B side") {
  // over F_2 the unit block is empty, so phi_1 is just delta - B^t
  const KHResult r =
      kh_groups(kat({{3}}, {{1}}, F(2)), UnitsModel::for_field(F(2)));
  CHECK(r.kh0 == ab_of(0, {2}));
  CHECK(r.kh1 == ab_free(1));
  CHECK(r.coker_phi1 == ab_free(1));
}

TEST_CASE("kh1 over F7 with a coupled twist") {
  // units Z/6 generated by 3; C = (3) couples the integer column into them
  const FieldSpec f7 = F(7);
  const UnitsModel u = UnitsModel::for_field(f7);
  const KHResult twisted = kh_groups(
      kat_c({{3}}, {{1}}, {{Scalar::from_long(3, f7)}}, f7), u);
  CHECK(twisted.witness.snf_phi1 == std::vector<mpz_class>{1});
  CHECK(twisted.kh1 == ab_free(1));
  CHECK(twisted.kh0 == ab_of(0, {2}));

  // with C = 1 the coupling vanishes and the torsion survives the -2 action
  const KHResult plain = kh_groups(kat({{3}}, {{1}}, f7), u);
  CHECK(plain.kh1 == ab_of(1, {2}));

  // cross-check the twisted case against the raw lattice
  // phi_1 = [[-2, 1, 6], [0, 0, 0]] on Z^2
  const CokerKer ck = coker_ker({{-2, 1, 6}, {0, 0, 0}});
  CHECK(ck.coker == twisted.coker_phi1);
}

TEST_CASE("kh1 keeps the whole unit group when nothing moves") {
  // A = B = (1): identity action, phi_1 = 0, and ker(I - A^t) is free rank 1
  const FieldSpec f7 = F(7);
  const KHResult r =
      kh_groups(kat({{1}}, {{1}}, f7), UnitsModel::for_field(f7));
  CHECK(r.coker_phi1 == ab_of(1, {6}));
  CHECK(r.ker_ia_rank == 1);
  CHECK(r.kh1 == ab_of(2, {6}));
  CHECK(r.witness.ses.find("->") != std::string::npos);
}

TEST_CASE("kh is invariant under vertex relabeling") {
  const FieldSpec f7 = F(7);
  const UnitsModel u = UnitsModel::for_field(f7);
  const Scalar c3 = Scalar::from_long(3, f7), one = Scalar::one(f7);
  const KatsuraTriple k1 = make_katsura(
      {"v0", "v1"}, {"v0", "v1"}, {{2, 1}, {1, 1}}, {{1, 0}, {0, 1}},
      {{c3, one}, {one, one}}, f7);
  // swap the two vertices
  const KatsuraTriple k2 = make_katsura(
      {"v1", "v0"}, {"v1", "v0"}, {{1, 1}, {1, 2}}, {{1, 0}, {0, 1}},
      {{one, one}, {one, c3}}, f7);
  const KHResult r1 = kh_groups(k1, u), r2 = kh_groups(k2, u);
  CHECK(r1.kh0 == r2.kh0);
  CHECK(r1.kh1 == r2.kh1);

  const BFResult b1 = bf_modules(k1, u), b2 = bf_modules(k2, u);
  CHECK(b1.bf == b2.bf);
  CHECK(b1.bf_checked == b2.bf_checked);
}

TEST_CASE("checked module of the twisted oracle") {
  const FieldSpec f7 = F(7);
  const BFResult r = bf_modules(
      kat_c({{3}}, {{1}}, {{Scalar::from_long(3, f7)}}, f7),
      UnitsModel::for_field(f7));
  CHECK(r.bf == ab_free(1));
  // assembled checked matrix is [[0, -1, 6], [0, -2, 0]]
  CHECK(r.bf_checked == coker_ker({{0, -1, 6}, {0, -2, 0}}).coker);
}

TEST_CASE("w entry arithmetic") {
  WEntry x(1), y(1);
  x.a = 2;
  x.xi = {mpz_class(1)};
  y.a = 3;
  y.xi = {mpz_class(4)};
  const WMat p = wmat_mul({{x}}, {{y}});
  CHECK(p[0][0].a == 6);
  CHECK(p[0][0].xi == std::vector<mpz_class>{11});  // 2*4 + 3*1

  CHECK(WEntry(2).is_zero());
  CHECK_FALSE(x.is_zero());
  CHECK(wmat_eq({{x}}, {{x}}));
  CHECK_FALSE(wmat_eq({{x}}, {{y}}));
}

TEST_CASE("stabilized block map") {
  const UnitsModel u = UnitsModel::for_field(Q(), {5});
  const ExpVec lp = u.encode(Scalar::from_long(5, Q()));
  const BlockMap e = stabilize({{2}}, {{3}}, {{lp}}, u.n_gens());
  CHECK(e.half == 2);
  CHECK(e.k == u.n_gens());
  CHECK(zmat_eq(e.a, {{2, 0}, {0, 1}}));
  CHECK(zmat_eq(e.b, {{3, 0}, {0, 1}}));
  CHECK(e.cstar[0][0] == lp);
  CHECK(e.cstar[1][1] == ExpVec(static_cast<size_t>(u.n_gens()), 0));

  const WMat d = e.dstar();
  CHECK(d[0][0].a == 2);
  CHECK(d[2][2].a == 3);
  CHECK(d[0][2].xi == lp);
  CHECK(d[2][0].is_zero());
}

TEST_CASE("graded assembly validates its shape") {
  WMat w = wmat(2, 2, 1);
  w[0][0].a = 2;
  w[1][1].a = 3;
  w[0][1].xi = {mpz_class(1)};
  const ZMat m = assembled_graded(w, 1, 1, 1, {mpz_class(0)});
  CHECK(zmat_eq(m, {{2, 1}, {0, 3}}));

  // torsion adds a relation column on the unit row
  const ZMat mt = assembled_graded(w, 1, 1, 1, {mpz_class(6)});
  CHECK(zmat_eq(mt, {{2, 1, 6}, {0, 3, 0}}));

  WMat bad = w;
  bad[1][0].a = 1;  // lower left must stay zero
  CHECK_THROWS_AS(assembled_graded(bad, 1, 1, 1, {mpz_class(0)}),
                  internal_error);
  WMat bad2 = w;
  bad2[0][0].xi = {mpz_class(1)};  // no exponents on diagonal blocks
  CHECK_THROWS_AS(assembled_graded(bad2, 1, 1, 1, {mpz_class(0)}),
                  internal_error);
}

TEST_CASE("conjugating by the identity flips to the triple form") {
  const UnitsModel u = UnitsModel::for_field(Q(), {5});
  const ExpVec lp = u.encode(Scalar::from_long(5, Q()));
  const BlockMap e = stabilize({{2}}, {{3}}, {{lp}}, u.n_gens());
  const ZMat id = zmat_identity(4);
  const ConjugateReport rep = conjugate(e, id, id, u.torsion());
  REQUIRE(rep.structure_ok);
  // I - A'^t = A^t solves to A' = I - A
  CHECK(zmat_eq(rep.result.a, {{-1, 0}, {0, 0}}));
  CHECK(zmat_eq(rep.result.b, {{-2, 0}, {0, 0}}));
  CHECK(rep.result.cstar[0][0] == lp);
  CHECK(rep.coker_invariant);
  CHECK(rep.coker_e == rep.coker_w);
  CHECK(rep.ker_rank_e == rep.ker_rank_w);
  CHECK_FALSE(rep.a_nonneg);  // -1 entry
  CHECK_FALSE(rep.kspi_form);
}

TEST_CASE("conjugation rejects non-unimodular or badly shaped inputs") {
  const UnitsModel u = UnitsModel::for_field(Q(), {});
  const BlockMap e =
      stabilize({{2}}, {{3}}, {{ExpVec{mpz_class(0)}}}, u.n_gens());
  ZMat two = zmat_identity(4);
  two[0][0] = 2;  // det 2
  CHECK_THROWS_AS(conjugate(e, two, zmat_identity(4), u.torsion()),
                  domain_error);
  ZMat low = zmat_identity(4);
  low[3][0] = 1;  // nonzero lower left block
  CHECK_THROWS_AS(conjugate(e, low, zmat_identity(4), u.torsion()),
                  domain_error);
}

TEST_CASE("the displayed conjugation pair never lands in kspi form") {
  const UnitsModel u = UnitsModel::for_field(Q(), {5});
  const ExpVec lp = u.encode(Scalar::from_long(5, Q()));
  for (long y = -2; y <= 2; ++y) {
    const ConjugateReport rep =
        conjugate(stabilize({{2}}, {{3}}, {{lp}}, u.n_gens()),
                  realization_u(1), realization_v(1, {{y}}), u.torsion());
    REQUIRE(rep.structure_ok);
    CHECK(rep.coker_invariant);
    CHECK_FALSE(rep.a_nonneg);
    CHECK_FALSE(rep.kspi_form);
  }

  const YSearchResult sr =
      search_y({{2}}, {{3}}, {{lp}}, u.n_gens(), u.torsion(), 2, 1000);
  CHECK_FALSE(sr.found);
  CHECK(sr.tried == 5);
}

TEST_CASE("random block unimodular conjugators preserve cokernels") {
  const UnitsModel u = UnitsModel::for_field(Q(), {5});
  const ExpVec lp = u.encode(Scalar::from_long(5, Q()));
  const BlockMap e = stabilize({{2}}, {{-3}}, {{lp}}, u.n_gens());
  std::mt19937_64 rng(97);
  for (int i = 0; i < 20; ++i) {
    const ZMat uu = random_block_unimodular(2, rng);
    const ZMat vv = random_block_unimodular(2, rng);
    const mpz_class du = zmat_det(uu);
    CHECK((du == 1 || du == -1));
    for (int r = 2; r < 4; ++r)
      for (int c = 0; c < 2; ++c) CHECK(uu[r][c] == 0);
    const ConjugateReport rep = conjugate(e, uu, vv, u.torsion());
    if (rep.structure_ok) {
      CHECK(rep.coker_invariant);
      CHECK(rep.coker_e == rep.coker_w);
    }
  }
}
