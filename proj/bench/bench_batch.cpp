// Timing comparison of the batch kernels against their serial reference.
// Not a test: results are informational and depend on the machine.
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "ep/batch.hpp"
#include "ep/katsura.hpp"
#include "ep/random_tuples.hpp"

using namespace ep;

namespace {

double seconds(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void row(const std::string& name, double serial, double parallel, bool same) {
  std::printf("%-28s %10.3fs %10.3fs   x%.2f  %s\n", name.c_str(), serial,
              parallel, parallel > 0 ? serial / parallel : 0.0,
              same ? "results agree" : "RESULTS DIFFER");
}

KatsuraTriple kat21() {
  const FieldSpec f{7};
  return make_katsura({"v0"}, {"v0"}, {{2}}, {{1}},
                      {{Scalar::from_long(3, f)}}, f);
}

}  // namespace

int main(int argc, char** argv) {
  const long scale = argc > 1 ? std::stol(argv[1]) : 1;
  std::printf("openmp: %s\n", openmp_enabled() ? "enabled" : "disabled");
  std::printf("%-28s %11s %11s %7s\n", "kernel", "serial", "parallel",
              "speedup");

  // normal forms of random elements
  {
    const EPTuple t = build_tuple(kat21());
    const auto section = default_section(t);
    const auto paths = paths_up_to(t.graph(), 3);
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<size_t> pick(0, paths.size() - 1);
    std::uniform_int_distribution<long> ex(-3, 3), co(-3, 3);
    std::vector<AlgElem> xs;
    for (long i = 0; i < 4000 * scale; ++i) {
      AlgElem x = alg_zero(t);
      for (int term = 0; term < 3; ++term) {
        const Path a = paths[pick(rng)];
        const Path b = paths[pick(rng)];
        if (path_rng(t.graph(), a) != path_rng(t.graph(), b)) continue;
        const GElem g = t.group().pow(t.group().gen_t(), ex(rng));
        x += alg_from(t, STriple::make(t, a, g, b),
                      Scalar::from_long(co(rng), t.field()));
      }
      xs.push_back(std::move(x));
    }
    std::vector<AlgElem> rs, rp;
    const double ts =
        seconds([&] { rs = nf_batch(t, xs, section, NFOptions{}, false); });
    const double tp =
        seconds([&] { rp = nf_batch(t, xs, section, NFOptions{}, true); });
    row("nf_batch", ts, tp, rs == rp);
  }

  // cocycle law probes
  {
    std::mt19937_64 rng(2);
    const EPTuple t = random_tuple(FieldSpec{5}, RandomGroup::Z6, rng);
    CocycleSampleStats ss, sp;
    const double ts = seconds(
        [&] { ss = cocycle_sample_batch(t, 200000 * scale, 8, 7, false); });
    const double tp = seconds(
        [&] { sp = cocycle_sample_batch(t, 200000 * scale, 8, 7, true); });
    row("cocycle_sample_batch", ts, tp,
        ss.samples == sp.samples && ss.failures == sp.failures);
  }

  // corner unit identities, one report per (v, w) pair
  {
    const FieldSpec f{7};
    std::vector<std::vector<long>> a(3, {3, 3, 3}), b(3, {2, 2, 2});
    std::vector<std::vector<Scalar>> c(
        3, std::vector<Scalar>(3, Scalar::from_long(3, f)));
    const KatsuraTriple k =
        make_katsura({"v0", "v1", "v2"}, {"v0", "v1", "v2"}, a, b, c, f);
    std::vector<UvwPairReport> rs, rp;
    const double ts = seconds([&] { rs = uvw_identity_report(k, false); });
    const double tp = seconds([&] { rp = uvw_identity_report(k, true); });
    bool same = rs.size() == rp.size();
    for (size_t i = 0; same && i < rs.size(); ++i)
      same = rs[i].row == rp[i].row && rs[i].col == rp[i].col &&
             rs[i].intermediate_ok == rp[i].intermediate_ok &&
             rs[i].closed_form_ok == rp[i].closed_form_ok &&
             rs[i].corner_inverse_ok == rp[i].corner_inverse_ok;
    row("uvw_identity_report", ts, tp, same);
  }

  return 0;
}
