#include <string>
#include <vector>

#include "doctest.h"
#include "ep/errors.hpp"
#include "ep/katsura.hpp"
#include "helpers.hpp"

using namespace ep;
using namespace ep::testing;

TEST_CASE("tau and psi split the affine step") {
  for (long A = 1; A <= 5; ++A)
    for (long B = -6; B <= 6; ++B)
      for (long n = 0; n < A; ++n) {
        const long tau = kat_tau(A, B, n);
        const long psi = kat_psi(A, B, n);
        CHECK(tau >= 0);
        CHECK(tau < A);
        CHECK(A * psi + tau == B + n);
      }
}

TEST_CASE("triple invariants are enforced") {
  const FieldSpec q = Q();
  const auto ones = [&](int r, int c) {
    return std::vector<std::vector<Scalar>>(
        r, std::vector<Scalar>(c, Scalar::one(q)));
  };
  // negative multiplicity
  CHECK_THROWS_AS(make_katsura({"v0"}, {"v0"}, {{-1}}, {{0}}, ones(1, 1), q),
                  domain_error);
  // zero row
  CHECK_THROWS_AS(make_katsura({"v0"}, {"v0"}, {{0}}, {{0}}, ones(1, 1), q),
                  domain_error);
  // A = 0 forces B = 0
  CHECK_THROWS_AS(make_katsura({"v0", "v1"}, {"v0"}, {{2, 0}}, {{1, 1}},
                               ones(1, 2), q),
                  domain_error);
  // A = 0 forces C = 1
  {
    auto c = ones(1, 2);
    c[0][1] = Scalar::from_long(2, q);
    CHECK_THROWS_AS(
        make_katsura({"v0", "v1"}, {"v0"}, {{2, 0}}, {{1, 0}}, c, q),
        domain_error);
  }
  // C entries must be units
  {
    auto c = ones(1, 1);
    c[0][0] = Scalar::zero(q);
    CHECK_THROWS_AS(make_katsura({"v0"}, {"v0"}, {{2}}, {{1}}, c, q),
                    domain_error);
  }
  // shapes must agree
  CHECK_THROWS_AS(make_katsura({"v0"}, {"v0"}, {{2, 1}}, {{1}}, ones(1, 1), q),
                  schema_error);
  // row vertices must be declared vertices
  CHECK_THROWS_AS(make_katsura({"v0"}, {"w"}, {{2}}, {{1}}, ones(1, 1), q),
                  schema_error);
  // rectangular systems with sinks are fine
  const KatsuraTriple k =
      make_katsura({"v0", "v1"}, {"v0"}, {{1, 1}}, {{1, 0}}, ones(1, 2), q);
  CHECK(k.rows() == 1);
  CHECK(k.cols() == 2);
}

TEST_CASE("the built tuple lays edges out row major") {
  CHECK(kat_edge_id("a", "b", 3) == "e(a,b,3)");
  const KatsuraTriple k = kat({{2, 1}, {1, 1}}, {{1, 0}, {0, 1}});
  const EPTuple t = build_tuple(k);
  const Graph& g = t.graph();
  CHECK(g.n_edges() == 5);
  CHECK(g.ename(0) == "e(v0,v0,0)");
  CHECK(g.ename(1) == "e(v0,v0,1)");
  CHECK(g.ename(2) == "e(v0,v1,0)");
  CHECK(g.ename(3) == "e(v1,v0,0)");
  CHECK(g.ename(4) == "e(v1,v1,0)");
  CHECK(g.src(2) == g.vindex("v0"));
  CHECK(g.rng(2) == g.vindex("v1"));
  CHECK(validate(t).valid);
}

TEST_CASE("kspi verdicts") {
  CHECK(is_kspi(kat({{2}}, {{1}})).kspi);

  const KspiReport diag = is_kspi(kat({{2}}, {{2}}));
  CHECK_FALSE(diag.kspi);
  CHECK_FALSE(diag.diag_b_one);
  CHECK(diag.first_failure.substr(0, 3) == "(d)");

  const KspiReport loop = is_kspi(kat({{1}}, {{1}}));
  CHECK_FALSE(loop.kspi);
  CHECK_FALSE(loop.two_first_return_loops);
  CHECK(loop.first_failure.substr(0, 3) == "(c)");

  const KspiReport split = is_kspi(kat({{2, 0}, {0, 2}}, {{1, 0}, {0, 1}}));
  CHECK_FALSE(split.kspi);
  CHECK(split.first_failure.substr(0, 3) == "(b)");

  // two loops plus a detour: still two first-return loops at each vertex
  const KspiReport two = is_kspi(kat({{2, 1}, {1, 1}}, {{1, 0}, {0, 1}}));
  CHECK(two.kspi);
  CHECK(two.two_first_return_loops);
}

TEST_CASE("hausdorff holds when no residual can vanish") {
  const HausdorffReport rep = hausdorff_condition(kat({{2}}, {{2}}));
  CHECK(rep.verdict == Hausdorff::Holds);
  CHECK(rep.explored_fully);
  CHECK(rep.findings.empty());
  CHECK_FALSE(rep.has_certificate);
  CHECK(rep.l_cap == 2);  // lcm of the positive A entries
}

TEST_CASE("hausdorff fails on a pumpable cycle") {
  // loop with nonzero residual at v0 and a vanishing slot toward the sink
  const KatsuraTriple k = kat({{1, 1}}, {{1, 0}});
  const HausdorffReport rep = hausdorff_condition(k);
  CHECK(rep.verdict == Hausdorff::Fails);
  REQUIRE(rep.has_certificate);
  CHECK(rep.cert_l >= 1);
  REQUIRE(!rep.cert_cycle.empty());
  CHECK(rep.cert_cycle.front() == 0);
  // the minimal strongly fixed paths e0^k f pile up at (v0, v1)
  bool seen = false;
  for (const auto& f : rep.findings)
    if (f.at_v == 0 && f.to_w == 1 && f.count > 1) seen = true;
  CHECK(seen);
}

TEST_CASE("hausdorff reports undetermined when capped") {
  // same system that fails, but with no state budget to certify it
  const KatsuraTriple k = kat({{1, 1}}, {{1, 0}});
  const HausdorffReport rep = hausdorff_condition(k, 12, 0, 0);
  CHECK(rep.verdict == Hausdorff::Undetermined);
  CHECK_FALSE(rep.explored_fully);
}

TEST_CASE("flatness row conditions") {
  // B matches A everywhere: condition (i)
  const KregReport r1 = kreg_conditions(kat({{2}}, {{2}}));
  CHECK(r1.cond_i);
  CHECK(r1.kregular);
  REQUIRE(r1.pairs.size() == 1);
  CHECK(r1.pairs[0].status == FlatStatus::FlatUnit);

  // mixed zero and nonzero B on one row: neither condition
  const KregReport r2 = kreg_conditions(kat({{1, 2}}, {{0, 1}}));
  CHECK_FALSE(r2.cond_i);
  CHECK_FALSE(r2.cond_ii);
  CHECK_FALSE(r2.kregular);
  REQUIRE(r2.pairs.size() == 2);
  CHECK(r2.pairs[0].status == FlatStatus::NotFlat);
  CHECK(r2.pairs[1].status == FlatStatus::FlatUnit);

  // B vanishes on the whole row: condition (ii)
  const KregReport r3 = kreg_conditions(kat({{1, 2}}, {{0, 0}}));
  CHECK_FALSE(r3.cond_i);
  CHECK(r3.cond_ii);
  CHECK(r3.kregular);
  for (const auto& p : r3.pairs) CHECK(p.status == FlatStatus::FlatZeroRow);
}

TEST_CASE("corner unit identities") {
  const auto all_ok = [](const std::vector<UvwPairReport>& rs) {
    for (const auto& r : rs) {
      CHECK(r.intermediate_ok);
      CHECK(r.closed_form_ok);
      CHECK(r.corner_inverse_ok);
    }
  };
  all_ok(uvw_identity_report(kat({{2}}, {{1}})));
  all_ok(uvw_identity_report(kat({{2, 1}, {1, 1}}, {{1, 0}, {0, 1}})));

  // nontrivial twist over a prime field
  const FieldSpec f7 = F(7);
  all_ok(uvw_identity_report(
      kat_c({{3}}, {{2}}, {{Scalar::from_long(3, f7)}}, f7)));

  // the parallel path computes the same reports
  const auto serial = uvw_identity_report(kat({{2}}, {{1}}), false);
  const auto parallel = uvw_identity_report(kat({{2}}, {{1}}), true);
  REQUIRE(serial.size() == parallel.size());
  for (size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].row == parallel[i].row);
    CHECK(serial[i].col == parallel[i].col);
    CHECK(serial[i].intermediate_ok == parallel[i].intermediate_ok);
  }
}
