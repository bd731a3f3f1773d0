#pragma once
#include <functional>
#include <vector>

#include "ep/algebra.hpp"

namespace ep {

// Runs fn(0..n-1); with parallel set and OpenMP available the iterations run
// on all threads, otherwise serially. Iterations must be independent.
void parallel_for(long n, const std::function<void(long)>& fn, bool parallel);

bool openmp_enabled();

// Batch normal forms; results match the serial loop element for element.
std::vector<AlgElem> nf_batch(const EPTuple& t,
                              const std::vector<AlgElem>& xs,
                              const std::vector<int>& section,
                              const NFOptions& opts, bool parallel);

// Cocycle-law spot check on random (g, h, path) probes:
// phi(gh, a) = phi(g, h(a)) phi(h, a) and c(gh, a) = c(g, h(a)) c(h, a).
// Probe i is generated from seed+i, so the outcome is schedule independent.
struct CocycleSampleStats {
  long samples = 0;
  long failures = 0;
  std::string first_witness;
};
CocycleSampleStats cocycle_sample_batch(const EPTuple& t, long samples,
                                        int path_len, unsigned long seed,
                                        bool parallel);

}  // namespace ep
