#include "ep/batch.hpp"

#include <atomic>
#include <mutex>
#include <random>

#include "ep/errors.hpp"

namespace ep {

void parallel_for(long n, const std::function<void(long)>& fn, bool parallel) {
#ifdef _OPENMP
  if (parallel && n > 1) {
    std::exception_ptr err;
    std::mutex mu;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    return;
  }
#else
  (void)parallel;
#endif
  for (long i = 0; i < n; ++i) fn(i);
}

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

std::vector<AlgElem> nf_batch(const EPTuple& t, const std::vector<AlgElem>& xs,
                              const std::vector<int>& section,
                              const NFOptions& opts, bool parallel) {
  std::vector<AlgElem> out(xs.size(), alg_zero(t));
  parallel_for(
      static_cast<long>(xs.size()),
      [&](long i) { out[static_cast<size_t>(i)] = nf_L(t, xs[static_cast<size_t>(i)], section, opts).value; },
      parallel);
  return out;
}

namespace {

GElem random_gelem(const GroupModel& g, std::mt19937_64& rng) {
  GElem e;
  switch (g.kind()) {
    case GroupKind::Trivial:
      return g.id();
    case GroupKind::Z: {
      std::uniform_int_distribution<long> d(-1000, 1000);
      e.z = d(rng);
      return e;
    }
    case GroupKind::Cyclic: {
      std::uniform_int_distribution<int> d(0, static_cast<int>(g.order()) - 1);
      e.i = d(rng);
      return e;
    }
    case GroupKind::Table: {
      std::uniform_int_distribution<int> d(0, static_cast<int>(g.order()) - 1);
      e.i = d(rng);
      return e;
    }
  }
  return e;
}

Path random_path(const Graph& g, int max_len, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick_v(0, g.n_vertices() - 1);
  std::uniform_int_distribution<int> pick_len(0, max_len);
  Path p = vertex_path(pick_v(rng));
  const int want = pick_len(rng);
  int at = p.base;
  for (int step = 0; step < want; ++step) {
    const auto& out = g.out_edges(at);
    if (out.empty()) break;
    std::uniform_int_distribution<size_t> pick_e(0, out.size() - 1);
    const int e = out[pick_e(rng)];
    p.edges.push_back(e);
    at = g.rng(e);
  }
  return p;
}

}  // namespace

CocycleSampleStats cocycle_sample_batch(const EPTuple& t, long samples,
                                        int path_len, unsigned long seed,
                                        bool parallel) {
  std::vector<uint8_t> ok(static_cast<size_t>(samples), 1);
  parallel_for(
      samples,
      [&](long i) {
        std::mt19937_64 rng(seed + static_cast<unsigned long>(i));
        const GElem g = random_gelem(t.group(), rng);
        const GElem h = random_gelem(t.group(), rng);
        const Path a = random_path(t.graph(), path_len, rng);
        const auto ph = t.push_path(h, a);
        const GElem gh = t.group().mul(g, h);
        const bool phi_ok =
            t.phi_path(gh, a) ==
            t.group().mul(t.phi_path(g, ph.image), ph.residual);
        const bool c_ok = t.c_path(gh, a) == t.c_path(g, ph.image) * ph.twist;
        const bool act_ok = t.act_path(gh, a) == t.act_path(g, ph.image);
        ok[static_cast<size_t>(i)] = (phi_ok && c_ok && act_ok) ? 1 : 0;
      },
      parallel);

  CocycleSampleStats stats;
  stats.samples = samples;
  for (long i = 0; i < samples; ++i) {
    if (ok[static_cast<size_t>(i)]) continue;
    ++stats.failures;
    if (stats.first_witness.empty()) {
      std::mt19937_64 rng(seed + static_cast<unsigned long>(i));
      const GElem g = random_gelem(t.group(), rng);
      const GElem h = random_gelem(t.group(), rng);
      const Path a = random_path(t.graph(), path_len, rng);
      stats.first_witness = "g=" + t.group().str(g) + " h=" + t.group().str(h) +
                            " path=" + path_str(t.graph(), a);
    }
  }
  return stats;
}

}  // namespace ep
