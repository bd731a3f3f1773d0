#pragma once
#include <map>
#include <string>
#include <vector>

#include "ep/semigroup.hpp"

namespace ep {

// Basis triple alpha g beta^* with r(alpha) = g(r(beta)).
struct TripleKey {
  Path alpha;
  GElem g;
  Path beta;

  bool operator==(const TripleKey&) const = default;
};

// Level-major order: |alpha| first, so map iteration visits shallow terms
// first and reverse iteration visits the deepest terms first.
struct TripleKeyLess {
  bool operator()(const TripleKey& a, const TripleKey& b) const {
    if (a.alpha.edges.size() != b.alpha.edges.size())
      return a.alpha.edges.size() < b.alpha.edges.size();
    if (auto c = a.alpha <=> b.alpha; c != 0) return c < 0;
    if (auto c = a.g <=> b.g; c != 0) return c < 0;
    return (a.beta <=> b.beta) < 0;
  }
};

// Finite linear combination of basis triples; zero coefficients are never
// stored.
class AlgElem {
 public:
  using TermMap = std::map<TripleKey, Scalar, TripleKeyLess>;

  explicit AlgElem(FieldSpec f) : field_(f) {}

  FieldSpec field() const { return field_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  void add_term(const TripleKey& k, const Scalar& coeff);
  void add_striple(const EPTuple& t, const STriple& s, const Scalar& coeff);

  AlgElem& operator+=(const AlgElem& o);
  AlgElem& operator-=(const AlgElem& o);
  AlgElem operator+(const AlgElem& o) const;
  AlgElem operator-(const AlgElem& o) const;
  AlgElem operator-() const;
  AlgElem scaled(const Scalar& s) const;
  bool operator==(const AlgElem& o) const {
    return field_ == o.field_ && terms_ == o.terms_;
  }

 private:
  FieldSpec field_;
  TermMap terms_;
};

AlgElem alg_zero(const EPTuple& t);
AlgElem alg_from(const EPTuple& t, const STriple& s,
                 const Scalar& coeff);
AlgElem alg_from(const EPTuple& t, const STriple& s);

// Product in the twisted semigroup algebra: on basis triples
// s . t = omega(s, t) * mul(s, t).
AlgElem alg_mul(const EPTuple& t, const AlgElem& x, const AlgElem& y);
// x^n for n >= 0, with x^0 = unit (a local identity for the corner at hand).
AlgElem alg_pow(const EPTuple& t, const AlgElem& x, long n,
                const AlgElem& unit);

std::string alg_str(const EPTuple& t, const AlgElem& x);

// Kernel-ideal generator at a regular vertex:
// q_v g = v g - sum_{s(e)=v} e phi_c(g, g^-1(e)) (g^-1(e))^*.
AlgElem q_elem(const EPTuple& t, int v, const GElem& g);

// alpha (q_v g) beta~^* expanded in the triple basis; v = r(alpha) must be
// regular and r(beta~) must be g^-1(v).
AlgElem kernel_gen(const EPTuple& t, const Path& alpha, const GElem& g,
                   const Path& beta_tilde);

struct NFOptions {
  long max_steps = 1000000;
};

struct NFResult {
  AlgElem value;
  long steps = 0;
  NFResult(AlgElem v, long s) : value(std::move(v)), steps(s) {}
};

// Normal form in L(G,E,phi_c) relative to the section. Requires every
// regular vertex to lie in reg0 or reg1. Throws divergence_error at the
// step cap.
NFResult nf_L(const EPTuple& t, const AlgElem& x,
              const std::vector<int>& section, const NFOptions& opts = {});

bool equal_in_L(const EPTuple& t, const AlgElem& x, const AlgElem& y,
                const std::vector<int>& section, const NFOptions& opts = {});

// Coordinates of a kernel element over the kernel basis
// { alpha (q_v g) beta~^* }.
struct KernelCoord {
  Path alpha;
  int v = -1;  // r(alpha)
  GElem g;
  Path beta;
  Scalar coeff;
};

std::vector<KernelCoord> to_kernel_basis(const EPTuple& t, const AlgElem& x,
                                         const std::vector<int>& section,
                                         const NFOptions& opts = {});

}  // namespace ep
