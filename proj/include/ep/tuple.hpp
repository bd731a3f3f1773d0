#pragma once
#include <optional>
#include <string>
#include <vector>

#include "ep/graph.hpp"
#include "ep/group.hpp"
#include "ep/scalar.hpp"

namespace ep {

// Group action on a graph together with the edge cocycle phi and the unit
// twist c, both stored on generator slots (t for Z/Cyclic, every element for
// Table groups) and extended to arbitrary elements and paths on demand.
class EPTuple {
 public:
  // act_v[s][v], act_e[s][e], phi[s][e], c[s][e] indexed by generator slot.
  static EPTuple make(Graph graph, GroupModel group, FieldSpec field,
                      std::vector<std::vector<int>> act_v,
                      std::vector<std::vector<int>> act_e,
                      std::vector<std::vector<GElem>> phi,
                      std::vector<std::vector<Scalar>> c);

  const Graph& graph() const { return graph_; }
  const GroupModel& group() const { return group_; }
  FieldSpec field() const { return field_; }

  // One-step data on generator slots (raw tables).
  int act_v_slot(int s, int v) const { return act_v_[s][v]; }
  int act_e_slot(int s, int e) const { return act_e_[s][e]; }

  int act_vertex(const GElem& g, int v) const;
  int act_edge(const GElem& g, int e) const;
  GElem phi_edge(const GElem& g, int e) const;
  Scalar c_edge(const GElem& g, int e) const;
  // phi_c(g, e) = c(g, e) phi(g, e) packaged as a pair.
  std::pair<GElem, Scalar> phic_edge(const GElem& g, int e) const;

  Path act_path(const GElem& g, const Path& a) const;
  GElem phi_path(const GElem& g, const Path& a) const;
  Scalar c_path(const GElem& g, const Path& a) const;
  // g(a), phi(g,a), c(g,a) in one pass.
  struct Pushed {
    Path image;
    GElem residual;
    Scalar twist;
  };
  Pushed push_path(const GElem& g, const Path& a) const;

 private:
  Graph graph_;
  GroupModel group_;
  FieldSpec field_;
  std::vector<std::vector<int>> act_v_, act_e_;
  std::vector<std::vector<GElem>> phi_;
  std::vector<std::vector<Scalar>> c_;

  // Cycle caches for the generator t of Z/Cyclic groups.
  struct Cycles {
    // vertex orbits under t
    std::vector<int> v_orbit_id, v_orbit_pos;
    std::vector<std::vector<int>> v_orbits;
    // edge orbits under t with phi exponents and twists along the cycle
    std::vector<int> e_orbit_id, e_orbit_pos;
    std::vector<std::vector<int>> e_orbits;
    std::vector<std::vector<mpz_class>> phiexp;    // exponent of phi(t, orbit[j])
    std::vector<std::vector<mpz_class>> phipref;   // prefix sums, size P+1
    std::vector<std::vector<Scalar>> ctw;          // c(t, orbit[j])
    std::vector<Scalar> cprod;                     // product over the orbit
  } cyc_;
  bool has_cycles_ = false;

  void build_cycles();
  // phi(t^k, e) exponent and c(t^k, e) for cyclic-generated kinds.
  mpz_class phi_exp_pow(const mpz_class& k, int e) const;
  Scalar c_pow(const mpz_class& k, int e) const;
  mpz_class gelem_exp(const GElem& g) const;  // exponent of g as power of t
};

// --- validation ---

struct CheckResult {
  std::string name;
  bool ok = true;
  std::string witness;  // first failure found, empty when ok
};

struct ValidationReport {
  bool valid = true;
  std::vector<CheckResult> checks;
};

// Exhaustive for finite groups. For Z the cocycle laws hold by construction
// (phi and c are generated from the t-tables); the report verifies the
// equivariance and EP conditions on t and on random words of length <= word_len.
ValidationReport validate(const EPTuple& t, int word_len = 4,
                          unsigned long seed = 1);

// --- the map nabla_e(g) = (g^{-1}(e), phi(g, g^{-1}(e))) ---

enum class NablaVerdict { Injective, NonInjective, Undetermined };

struct NablaReport {
  NablaVerdict verdict = NablaVerdict::Undetermined;
  bool image_singleton_trivial = false;  // image == {(e, 1)}
  // sample of the image: (edge, group element, multiplicity seen)
  struct ImagePoint {
    int edge;
    GElem h;
    long mult;
  };
  std::vector<ImagePoint> sample;
  // Z only: orbit period of e under t and the phi(t^P, e) exponent; the map
  // is injective iff d != 0.
  long period = 0;
  mpz_class d = 0;
};

// sample_k bounds the displayed image sample for Z (exponents in [-K, K]);
// verdicts are exact for every supported group kind.
NablaReport nabla(const EPTuple& t, int e, long sample_k = 64);

// g with nabla_e(g) = (f, h), when one exists. When nabla_e is not injective
// the returned witness is one of possibly many preimages.
std::optional<GElem> nabla_preimage(const EPTuple& t, int e, int f,
                                    const GElem& h);

// --- stratification of regular vertices ---

struct Stratification {
  std::vector<int> reg0, reg1, other;  // reg0 wins on overlap
  bool covers = false;    // every regular vertex lies in reg0 or reg1
  bool disjoint = false;  // reg0 and reg1 (before overlap resolution) disjoint
  bool pseudo_free = false;            // nabla_e injective for every edge
  bool partially_pseudo_free = false;  // every regular vertex in reg1
};

Stratification stratify_regular(const EPTuple& t);

// Section of s over the regular vertices: section[v] = chosen edge with
// src == v, -1 elsewhere. The default picks, per regular vertex, the first
// out-edge whose nabla image is {(e,1)} if the vertex qualifies for reg0,
// otherwise the first out-edge with nabla injective.
std::vector<int> default_section(const EPTuple& t);
// Throws domain_error when the map is not a valid admissible section.
void check_section(const EPTuple& t, const std::vector<int>& section);

}  // namespace ep
