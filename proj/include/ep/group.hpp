#pragma once
#include <gmpxx.h>

#include <compare>
#include <string>
#include <vector>

namespace ep {

enum class GroupKind { Trivial, Z, Cyclic, Table };

// Group element. For Z the exponent z of the generator t is used; for the
// finite kinds the element index i is used. Interpret only through a
// GroupModel of the matching kind.
struct GElem {
  mpz_class z = 0;
  int i = 0;

  bool operator==(const GElem& o) const { return z == o.z && i == o.i; }
  auto operator<=>(const GElem& o) const {
    if (auto c = i <=> o.i; c != 0) return c;
    int c = cmp(z, o.z);
    return c < 0   ? std::strong_ordering::less
           : c > 0 ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }
};

// Z (infinite cyclic, generator t), finite cyclic (generator t, order m),
// an explicit multiplication table, or the trivial group.
class GroupModel {
 public:
  static GroupModel trivial();
  static GroupModel integers();
  static GroupModel cyclic(long m);
  // mul[i][j] = index of elements[i]*elements[j]; group axioms are checked.
  static GroupModel table(const std::vector<std::string>& elements,
                          const std::vector<std::vector<int>>& mul);

  GroupKind kind() const { return kind_; }
  bool finite() const { return kind_ != GroupKind::Z; }
  long order() const;  // throws domain_error for Z

  GElem id() const;
  bool is_id(const GElem& g) const;
  GElem mul(const GElem& a, const GElem& b) const;
  GElem inv(const GElem& a) const;
  GElem pow(const GElem& a, const mpz_class& k) const;
  // Generator element: t for Z/Cyclic; throws for Trivial/Table (every
  // element of a table group is treated as a generator by callers).
  GElem gen_t() const;

  std::vector<GElem> elements() const;  // finite kinds only

  // "1", "t", "t^k" for Z/Cyclic/Trivial; element names for Table.
  GElem parse(const std::string& s) const;
  std::string str(const GElem& g) const;

  // Number of stored generator columns in action/cocycle tables: 0 for
  // Trivial, 1 for Z and Cyclic (the generator t), order() for Table.
  int n_gen_slots() const;
  // The group element for slot s.
  GElem slot_elem(int s) const;

  const std::vector<std::string>& table_names() const { return names_; }

 private:
  GroupKind kind_ = GroupKind::Trivial;
  long m_ = 1;  // Cyclic order
  std::vector<std::string> names_;
  std::vector<std::vector<int>> mul_;
  std::vector<int> inv_;
  int id_ = 0;
};

}  // namespace ep
