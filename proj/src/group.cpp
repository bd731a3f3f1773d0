#include "ep/group.hpp"

#include "ep/errors.hpp"

namespace ep {

GroupModel GroupModel::trivial() { return GroupModel{}; }

GroupModel GroupModel::integers() {
  GroupModel g;
  g.kind_ = GroupKind::Z;
  return g;
}

GroupModel GroupModel::cyclic(long m) {
  if (m < 1) throw schema_error("cyclic order must be >= 1");
  GroupModel g;
  g.kind_ = m == 1 ? GroupKind::Trivial : GroupKind::Cyclic;
  g.m_ = m;
  return g;
}

GroupModel GroupModel::table(const std::vector<std::string>& elements,
                             const std::vector<std::vector<int>>& mul) {
  const int n = static_cast<int>(elements.size());
  if (n == 0) throw schema_error("empty element list");
  if (static_cast<int>(mul.size()) != n)
    throw schema_error("mul table must be square of the element count");
  for (const auto& row : mul) {
    if (static_cast<int>(row.size()) != n)
      throw schema_error("mul table must be square of the element count");
    for (int x : row)
      if (x < 0 || x >= n) throw schema_error("mul table index out of range");
  }
  GroupModel g;
  g.kind_ = GroupKind::Table;
  g.names_ = elements;
  g.mul_ = mul;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (elements[i] == elements[j])
        throw schema_error("duplicate element name: " + elements[i]);
  // identity
  int id = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n; ++x)
      ok = ok && mul[e][x] == x && mul[x][e] == x;
    if (ok) {
      id = e;
      break;
    }
  }
  if (id < 0) throw schema_error("mul table has no identity");
  g.id_ = id;
  // associativity
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
          throw schema_error("mul table is not associative");
  // inverses
  g.inv_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (mul[a][b] == id && mul[b][a] == id) {
        g.inv_[a] = b;
        break;
      }
    if (g.inv_[a] < 0)
      throw schema_error("element without inverse: " + elements[a]);
  }
  return g;
}

long GroupModel::order() const {
  switch (kind_) {
    case GroupKind::Trivial:
      return 1;
    case GroupKind::Cyclic:
      return m_;
    case GroupKind::Table:
      return static_cast<long>(names_.size());
    case GroupKind::Z:
      throw domain_error("order() of Z");
  }
  return 1;
}

GElem GroupModel::id() const {
  GElem e;
  if (kind_ == GroupKind::Table) e.i = id_;
  return e;
}

bool GroupModel::is_id(const GElem& g) const { return g == id(); }

GElem GroupModel::mul(const GElem& a, const GElem& b) const {
  GElem r;
  switch (kind_) {
    case GroupKind::Trivial:
      break;
    case GroupKind::Z:
      r.z = a.z + b.z;
      break;
    case GroupKind::Cyclic:
      r.i = static_cast<int>((a.i + b.i) % m_);
      break;
    case GroupKind::Table:
      r.i = mul_[a.i][b.i];
      break;
  }
  return r;
}

GElem GroupModel::inv(const GElem& a) const {
  GElem r;
  switch (kind_) {
    case GroupKind::Trivial:
      break;
    case GroupKind::Z:
      r.z = -a.z;
      break;
    case GroupKind::Cyclic:
      r.i = static_cast<int>((m_ - a.i) % m_);
      break;
    case GroupKind::Table:
      r.i = inv_[a.i];
      break;
  }
  return r;
}

GElem GroupModel::pow(const GElem& a, const mpz_class& k) const {
  GElem r;
  switch (kind_) {
    case GroupKind::Trivial:
      break;
    case GroupKind::Z:
      r.z = a.z * k;
      break;
    case GroupKind::Cyclic: {
      mpz_class e = (mpz_class(a.i) * k) % m_;
      long x = e.get_si();
      r.i = static_cast<int>(x < 0 ? x + m_ : x);
      break;
    }
    case GroupKind::Table: {
      // element order divides |G|
      long ord = 1;
      GElem p = a;
      while (!is_id(p)) {
        p = mul(p, a);
        ++ord;
      }
      mpz_class e = k % ord;
      long x = e.get_si();
      if (x < 0) x += ord;
      r = id();
      for (long i = 0; i < x; ++i) r = mul(r, a);
      break;
    }
  }
  return r;
}

GElem GroupModel::gen_t() const {
  GElem r;
  switch (kind_) {
    case GroupKind::Z:
      r.z = 1;
      return r;
    case GroupKind::Cyclic:
      r.i = m_ > 1 ? 1 : 0;
      return r;
    default:
      throw domain_error("gen_t() on a group without distinguished generator");
  }
}

std::vector<GElem> GroupModel::elements() const {
  if (!finite()) throw domain_error("elements() of Z");
  std::vector<GElem> out;
  const long n = order();
  for (long i = 0; i < n; ++i) {
    GElem e;
    e.i = static_cast<int>(i);
    out.push_back(e);
  }
  return out;
}

GElem GroupModel::parse(const std::string& s) const {
  if (kind_ == GroupKind::Table) {
    for (int i = 0; i < static_cast<int>(names_.size()); ++i)
      if (names_[i] == s) {
        GElem e;
        e.i = i;
        return e;
      }
    throw schema_error("unknown group element: " + s);
  }
  if (s == "1") return id();
  if (kind_ == GroupKind::Trivial)
    throw schema_error("trivial group has only element \"1\", got: " + s);
  mpz_class k;
  if (s == "t")
    k = 1;
  else if (s.rfind("t^", 0) == 0) {
    try {
      k = mpz_class(s.substr(2));
    } catch (const std::exception&) {
      throw schema_error("bad group element: " + s);
    }
  } else {
    throw schema_error("bad group element (expected 1, t, or t^k): " + s);
  }
  return pow(gen_t(), k);
}

std::string GroupModel::str(const GElem& g) const {
  switch (kind_) {
    case GroupKind::Trivial:
      return "1";
    case GroupKind::Table:
      return names_[g.i];
    case GroupKind::Z:
      if (g.z == 0) return "1";
      if (g.z == 1) return "t";
      return "t^" + g.z.get_str();
    case GroupKind::Cyclic:
      if (g.i == 0) return "1";
      if (g.i == 1) return "t";
      return "t^" + std::to_string(g.i);
  }
  return "1";
}

int GroupModel::n_gen_slots() const {
  switch (kind_) {
    case GroupKind::Trivial:
      return 0;
    case GroupKind::Z:
    case GroupKind::Cyclic:
      return 1;
    case GroupKind::Table:
      return static_cast<int>(names_.size());
  }
  return 0;
}

GElem GroupModel::slot_elem(int s) const {
  GElem e;
  switch (kind_) {
    case GroupKind::Trivial:
      throw domain_error("trivial group has no generator slots");
    case GroupKind::Z:
      check_internal(s == 0, "bad generator slot");
      e.z = 1;
      return e;
    case GroupKind::Cyclic:
      check_internal(s == 0, "bad generator slot");
      e.i = m_ > 1 ? 1 : 0;
      return e;
    case GroupKind::Table:
      e.i = s;
      return e;
  }
  return e;
}

}  // namespace ep
