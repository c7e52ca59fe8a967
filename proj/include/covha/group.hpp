#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace covha {

inline constexpr int kDefaultMaxOrder = 64;

/// Effective order cap: explicit argument wins, then COVHA_MAX_ORDER, then 64.
inline int resolve_max_order(int explicit_cap = 0) {
  if (explicit_cap > 0) return explicit_cap;
  if (const char* env = std::getenv("COVHA_MAX_ORDER")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return kDefaultMaxOrder;
}

/// Finite group as a validated Cayley table over element indices 0..order-1.
/// The table is the single source of truth; identity and inverses are derived
/// during validation. Finite groups are unimodular, so the modular function
/// is the constant 1.
struct Group {
  int order = 0;
  std::vector<int> cayley;  // row-major: cayley[x*order + y] == x*y
  int identity = 0;
  std::vector<int> inverses;
  std::string name;

  int mul(int x, int y) const { return cayley[static_cast<size_t>(x) * order + y]; }
  int inv(int x) const { return inverses[x]; }
  double modular(int) const { return 1.0; }

  int pow(int x, int e) const {
    int r = identity;
    for (int i = 0; i < e; ++i) r = mul(r, x);
    return r;
  }

  int element_order(int x) const {
    int r = x, n = 1;
    while (r != identity) {
      r = mul(r, x);
      ++n;
    }
    return n;
  }

  bool is_abelian() const {
    for (int x = 0; x < order; ++x)
      for (int y = x + 1; y < order; ++y)
        if (mul(x, y) != mul(y, x)) return false;
    return true;
  }
};

/// Validates closure, identity, inverses and associativity; throws on failure.
inline Group make_group(std::vector<int> cayley_table, std::string name = {}, int max_order = 0) {
  Group g;
  const size_t sz = cayley_table.size();
  int n = 0;
  while (static_cast<size_t>(n) * n < sz) ++n;
  if (static_cast<size_t>(n) * n != sz || n == 0)
    throw std::invalid_argument("group table is not square");
  const int cap = resolve_max_order(max_order);
  if (n > cap)
    throw std::invalid_argument("group order " + std::to_string(n) + " exceeds cap " +
                                std::to_string(cap));
  for (int v : cayley_table)
    if (v < 0 || v >= n) throw std::invalid_argument("group table entry out of range");

  g.order = n;
  g.cayley = std::move(cayley_table);
  g.name = std::move(name);

  int e = -1;
  for (int c = 0; c < n && e < 0; ++c) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      ok = g.mul(c, x) == x && g.mul(x, c) == x;
    if (ok) e = c;
  }
  if (e < 0) throw std::invalid_argument("group table has no identity");
  g.identity = e;

  g.inverses.assign(n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y)
      if (g.mul(x, y) == e && g.mul(y, x) == e) {
        g.inverses[x] = y;
        break;
      }
    if (g.inverses[x] < 0)
      throw std::invalid_argument("group element " + std::to_string(x) + " has no inverse");
  }

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z)))
          throw std::invalid_argument("group table is not associative");
  return g;
}

inline Group cyclic_group(int n, int max_order = 0) {
  if (n < 1) throw std::invalid_argument("cyclic group order must be positive");
  std::vector<int> t(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[static_cast<size_t>(i) * n + j] = (i + j) % n;
  return make_group(std::move(t), "Z" + std::to_string(n), max_order);
}

/// Order 2n; element a + n*b stands for r^a s^b with s r s = r^-1.
inline Group dihedral_group(int n, int max_order = 0) {
  if (n < 1) throw std::invalid_argument("dihedral parameter must be positive");
  const int ord = 2 * n;
  auto idx = [n](int a, int b) { return ((a % n + n) % n) + n * (b & 1); };
  std::vector<int> t(static_cast<size_t>(ord) * ord);
  for (int a1 = 0; a1 < n; ++a1)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int a2 = 0; a2 < n; ++a2)
        for (int b2 = 0; b2 < 2; ++b2) {
          // (r^a1 s^b1)(r^a2 s^b2) = r^{a1 + (-1)^{b1} a2} s^{b1+b2}
          const int a = b1 ? a1 - a2 : a1 + a2;
          t[static_cast<size_t>(idx(a1, b1)) * ord + idx(a2, b2)] = idx(a, b1 ^ b2);
        }
  return make_group(std::move(t), "D" + std::to_string(n), max_order);
}

namespace detail {

inline std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::vector<int> compose(const std::vector<int>& x, const std::vector<int>& y) {
  std::vector<int> r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[y[i]];
  return r;
}

}  // namespace detail

/// Elements are the permutations of {0..n-1} in lexicographic order; the
/// product x*y acts by y first, then x.
inline Group symmetric_group(int n, int max_order = 0) {
  if (n < 1 || n > 5) throw std::invalid_argument("symmetric group supported for 1 <= n <= 5");
  const auto perms = detail::all_permutations(n);
  const int ord = static_cast<int>(perms.size());
  auto rank_of = [&perms](const std::vector<int>& p) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), p) - perms.begin());
  };
  std::vector<int> t(static_cast<size_t>(ord) * ord);
  for (int i = 0; i < ord; ++i)
    for (int j = 0; j < ord; ++j)
      t[static_cast<size_t>(i) * ord + j] = rank_of(detail::compose(perms[i], perms[j]));
  return make_group(std::move(t), "S" + std::to_string(n), max_order);
}

/// Order 8; index 2*axis + (sign < 0) with axes 1, i, j, k.
inline Group quaternion_group(int max_order = 0) {
  // Unit table on axes: i*i = j*j = k*k = -1, i*j = k, j*k = i, k*i = j.
  static constexpr int axis_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int sign_mul[4][4] = {
      {+1, +1, +1, +1}, {+1, -1, +1, -1}, {+1, -1, -1, +1}, {+1, +1, -1, -1}};
  std::vector<int> t(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      const int ax = x / 2, sx = (x % 2) ? -1 : 1;
      const int ay = y / 2, sy = (y % 2) ? -1 : 1;
      const int az = axis_mul[ax][ay];
      const int sz = sx * sy * sign_mul[ax][ay];
      t[static_cast<size_t>(x) * 8 + y] = 2 * az + (sz < 0);
    }
  return make_group(std::move(t), "Q8", max_order);
}

/// Pair (a, b) has index a*|B| + b.
inline Group direct_product(const Group& a, const Group& b, int max_order = 0) {
  const int ord = a.order * b.order;
  std::vector<int> t(static_cast<size_t>(ord) * ord);
  for (int x = 0; x < ord; ++x)
    for (int y = 0; y < ord; ++y) {
      const int xa = x / b.order, xb = x % b.order;
      const int ya = y / b.order, yb = y % b.order;
      t[static_cast<size_t>(x) * ord + y] = a.mul(xa, ya) * b.order + b.mul(xb, yb);
    }
  return make_group(std::move(t), a.name + "x" + b.name, max_order);
}

/// Closure of permutation generators on {0..degree-1} under composition.
/// Elements are indexed by lexicographic rank within the closure.
inline Group group_from_permutations(int degree, const std::vector<std::vector<int>>& generators,
                                     int max_order = 0) {
  if (degree < 1) throw std::invalid_argument("permutation degree must be positive");
  const int cap = resolve_max_order(max_order);
  for (const auto& p : generators) {
    if (static_cast<int>(p.size()) != degree)
      throw std::invalid_argument("generator has wrong degree");
    std::vector<bool> seen(degree, false);
    for (int v : p) {
      if (v < 0 || v >= degree || seen[v])
        throw std::invalid_argument("generator is not a permutation");
      seen[v] = true;
    }
  }
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<int>> closure{id};
  std::vector<std::vector<int>> frontier{id};
  for (const auto& p : generators)
    if (closure.insert(p).second) frontier.push_back(p);
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& x : frontier)
      for (const auto& gen : generators) {
        auto prod = detail::compose(x, gen);
        if (closure.insert(prod).second) {
          if (static_cast<int>(closure.size()) > cap)
            throw std::invalid_argument("permutation closure exceeds order cap " +
                                        std::to_string(cap));
          next.push_back(std::move(prod));
        }
      }
    frontier = std::move(next);
  }
  const std::vector<std::vector<int>> elems(closure.begin(), closure.end());
  const int ord = static_cast<int>(elems.size());
  auto rank_of = [&elems](const std::vector<int>& p) {
    return static_cast<int>(std::lower_bound(elems.begin(), elems.end(), p) - elems.begin());
  };
  std::vector<int> t(static_cast<size_t>(ord) * ord);
  for (int i = 0; i < ord; ++i)
    for (int j = 0; j < ord; ++j)
      t[static_cast<size_t>(i) * ord + j] = rank_of(detail::compose(elems[i], elems[j]));
  return make_group(std::move(t), "perm" + std::to_string(ord), max_order);
}

/// Subgroup as a sorted member list over the parent's element indices.
struct Subgroup {
  const Group* parent = nullptr;
  std::vector<int> members;

  int order() const { return static_cast<int>(members.size()); }

  bool contains(int x) const { return std::binary_search(members.begin(), members.end(), x); }

  int local_index(int x) const {
    const auto it = std::lower_bound(members.begin(), members.end(), x);
    if (it == members.end() || *it != x)
      throw std::invalid_argument("element is not a subgroup member");
    return static_cast<int>(it - members.begin());
  }
};

inline bool is_subgroup(const Group& g, const std::vector<int>& members) {
  if (members.empty()) return false;
  if (!std::binary_search(members.begin(), members.end(), g.identity)) return false;
  for (int x : members) {
    if (x < 0 || x >= g.order) return false;
    if (!std::binary_search(members.begin(), members.end(), g.inv(x))) return false;
    for (int y : members)
      if (!std::binary_search(members.begin(), members.end(), g.mul(x, y))) return false;
  }
  return true;
}

/// Smallest subgroup containing the generators; {} gives the trivial subgroup.
inline Subgroup subgroup_closure(const Group& g, const std::vector<int>& generators) {
  for (int x : generators)
    if (x < 0 || x >= g.order) throw std::invalid_argument("generator index out of range");
  std::set<int> closure{g.identity};
  closure.insert(generators.begin(), generators.end());
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<int> cur(closure.begin(), closure.end());
    for (int x : cur)
      for (int y : cur)
        if (closure.insert(g.mul(x, y)).second) grew = true;
  }
  return Subgroup{&g, std::vector<int>(closure.begin(), closure.end())};
}

inline Subgroup full_subgroup(const Group& g) {
  std::vector<int> m(g.order);
  std::iota(m.begin(), m.end(), 0);
  return Subgroup{&g, std::move(m)};
}

inline Subgroup trivial_subgroup(const Group& g) { return Subgroup{&g, {g.identity}}; }

/// Re-indexed copy of the subgroup; local element i corresponds to members[i].
inline Group subgroup_as_group(const Subgroup& h) {
  const Group& g = *h.parent;
  const int n = h.order();
  std::vector<int> t(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      t[static_cast<size_t>(i) * n + j] = h.local_index(g.mul(h.members[i], h.members[j]));
  return make_group(std::move(t), g.name + "-sub" + std::to_string(n), g.order);
}

/// Uniform weight per element; uniformity makes the measure bi-invariant and
/// the normalization only fixes the total mass.
struct HaarMeasure {
  int carrier_order = 0;
  double weight = 1.0;

  double total_mass() const { return weight * carrier_order; }
};

inline HaarMeasure haar_counting(int carrier_order) {
  if (carrier_order < 1) throw std::invalid_argument("empty measure carrier");
  return {carrier_order, 1.0};
}

inline HaarMeasure haar_probability(int carrier_order) {
  if (carrier_order < 1) throw std::invalid_argument("empty measure carrier");
  return {carrier_order, 1.0 / carrier_order};
}

inline HaarMeasure haar_mass(int carrier_order, double total) {
  if (carrier_order < 1) throw std::invalid_argument("empty measure carrier");
  if (!(total > 0.0)) throw std::invalid_argument("measure mass must be positive");
  return {carrier_order, total / carrier_order};
}

inline HaarMeasure haar_counting(const Group& g) { return haar_counting(g.order); }
inline HaarMeasure haar_probability(const Group& g) { return haar_probability(g.order); }
inline HaarMeasure haar_mass(const Group& g, double t) { return haar_mass(g.order, t); }
inline HaarMeasure haar_counting(const Subgroup& h) { return haar_counting(h.order()); }
inline HaarMeasure haar_probability(const Subgroup& h) { return haar_probability(h.order()); }
inline HaarMeasure haar_mass(const Subgroup& h, double t) { return haar_mass(h.order(), t); }

/// Partition of G into left cosets xH. Representatives are the minimal
/// element index of each coset, listed in ascending order.
struct CosetPartition {
  const Group* parent = nullptr;
  std::vector<int> representatives;
  std::vector<int> coset_of;  // element -> index into representatives
  int coset_size = 0;

  int count() const { return static_cast<int>(representatives.size()); }
};

inline CosetPartition left_cosets(const Group& g, const Subgroup& h) {
  if (h.parent != &g || !is_subgroup(g, h.members))
    throw std::invalid_argument("not a subgroup of the given group");
  CosetPartition part;
  part.parent = &g;
  part.coset_size = h.order();
  part.coset_of.assign(g.order, -1);
  for (int x = 0; x < g.order; ++x) {
    if (part.coset_of[x] >= 0) continue;
    const int idx = part.count();
    part.representatives.push_back(x);
    for (int s : h.members) part.coset_of[g.mul(x, s)] = idx;
  }
  return part;
}

}  // namespace covha
