#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "group.hpp"
#include "linalg.hpp"

namespace covha {

/// Character of a subgroup H stored as exact root-of-unity exponents:
/// value(members[i]) = exp(2 pi i * exponents[i] / root_order). The shared
/// root_order is the exponent of the abelianization of H, so homomorphism
/// checks reduce to integer arithmetic mod root_order.
struct Character {
  const Group* parent = nullptr;
  std::vector<int> members;  // sorted subgroup member indices
  int root_order = 1;
  std::vector<int> exponents;
  std::vector<cplx> values;  // cached complex values, one per member

  cplx value_local(int i) const { return values[i]; }

  cplx value(int element) const {
    const auto it = std::lower_bound(members.begin(), members.end(), element);
    if (it == members.end() || *it != element)
      throw std::invalid_argument("element is not a subgroup member");
    return values[static_cast<size_t>(it - members.begin())];
  }

  bool trivial() const {
    return std::all_of(exponents.begin(), exponents.end(), [](int k) { return k == 0; });
  }
};

namespace detail {

inline cplx root_of_unity(int k, int m) {
  const double t = 6.283185307179586476925287 * k / m;
  return {std::cos(t), std::sin(t)};
}

struct QuotientGroup {
  Group group;
  std::vector<int> projection;  // parent element -> quotient element
};

/// Quotient of g by a normal subgroup given as a sorted member list.
inline QuotientGroup quotient_group(const Group& g, const std::vector<int>& normal_members) {
  const Subgroup n{&g, normal_members};
  for (int x = 0; x < g.order; ++x)
    for (int m : normal_members)
      if (!n.contains(g.mul(g.mul(x, m), g.inv(x))))
        throw std::logic_error("quotient by a non-normal subgroup");
  const CosetPartition part = left_cosets(g, n);
  const int q = part.count();
  std::vector<int> t(static_cast<size_t>(q) * q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      t[static_cast<size_t>(i) * q + j] =
          part.coset_of[g.mul(part.representatives[i], part.representatives[j])];
  QuotientGroup out{make_group(std::move(t), g.name + "/N", g.order), part.coset_of};
  return out;
}

/// Cyclic decomposition (generator, order) of an abelian p-group: a generator
/// of maximal order splits off, and quotient generators lift to same-order
/// preimages after correcting by a power of the split generator.
inline std::vector<std::pair<int, int>> decompose_abelian_p_group(const Group& p_grp) {
  if (p_grp.order == 1) return {};
  int g1 = 0, best = 1;
  for (int x = 0; x < p_grp.order; ++x) {
    const int o = p_grp.element_order(x);
    if (o > best) {
      best = o;
      g1 = x;
    }
  }
  if (best == p_grp.order) return {{g1, best}};
  const Subgroup cyc = subgroup_closure(p_grp, {g1});
  const QuotientGroup quot = quotient_group(p_grp, cyc.members);
  std::vector<std::pair<int, int>> factors{{g1, best}};
  for (const auto& [q_gen, q_ord] : decompose_abelian_p_group(quot.group)) {
    int lift = -1;
    for (int x = 0; x < p_grp.order && lift < 0; ++x)
      if (quot.projection[x] == q_gen) lift = x;
    // lift^q_ord lands in <g1>; divide out g1^(t/q_ord) to get an exact-order lift.
    const int power = p_grp.pow(lift, q_ord);
    int t = -1;
    for (int e = 0; e < best && t < 0; ++e)
      if (p_grp.pow(g1, e) == power) t = e;
    if (t < 0 || t % q_ord != 0) throw std::logic_error("abelian decomposition lift failed");
    const int corrected = p_grp.mul(lift, p_grp.pow(g1, (best - t / q_ord) % best));
    if (p_grp.element_order(corrected) != q_ord)
      throw std::logic_error("abelian decomposition lift has wrong order");
    factors.emplace_back(corrected, q_ord);
  }
  return factors;
}

struct AbelianDecomposition {
  std::vector<int> generators;              // element indices
  std::vector<int> orders;                  // matching cyclic orders
  std::vector<std::vector<int>> coords;     // element -> exponent tuple
};

/// Writes an abelian group as a direct sum of cyclic subgroups and records
/// the coordinates of every element; verified by checking the product map
/// over all exponent tuples is a bijection.
inline AbelianDecomposition decompose_abelian(const Group& q) {
  if (!q.is_abelian()) throw std::invalid_argument("decompose_abelian needs an abelian group");
  AbelianDecomposition dec;
  dec.coords.assign(q.order, {});
  if (q.order == 1) {
    dec.coords[q.identity] = {};
    return dec;
  }
  // Primary components: elements of p-power order form the Sylow p-subgroup.
  std::vector<int> primes;
  for (int p = 2, n = q.order; n > 1; ++p)
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
  for (int p : primes) {
    std::vector<int> members;
    for (int x = 0; x < q.order; ++x) {
      int o = q.element_order(x);
      while (o % p == 0) o /= p;
      if (o == 1) members.push_back(x);
    }
    const Subgroup sylow{&q, members};
    const Group local = subgroup_as_group(sylow);
    for (const auto& [gen, ord] : decompose_abelian_p_group(local)) {
      dec.generators.push_back(members[gen]);
      dec.orders.push_back(ord);
    }
  }
  long long product = 1;
  for (int o : dec.orders) product *= o;
  if (product != q.order) throw std::logic_error("abelian decomposition order mismatch");
  // Enumerate all tuples and record coordinates.
  const int r = static_cast<int>(dec.generators.size());
  std::vector<int> tuple(r, 0);
  std::vector<bool> seen(q.order, false);
  while (true) {
    int elem = q.identity;
    for (int i = 0; i < r; ++i) elem = q.mul(elem, q.pow(dec.generators[i], tuple[i]));
    if (seen[elem]) throw std::logic_error("abelian decomposition is not direct");
    seen[elem] = true;
    dec.coords[elem] = tuple;
    int i = r - 1;
    while (i >= 0 && ++tuple[i] == dec.orders[i]) tuple[i--] = 0;
    if (i < 0) break;
  }
  return dec;
}

}  // namespace detail

struct AbelianizationData {
  Group quotient;                    // H / [H,H], abelian
  std::vector<int> projection;       // subgroup-local index -> quotient element
  std::vector<int> invariant_factors;  // ascending divisibility chain
  std::vector<int> commutator_members;  // global element indices of [H,H]
};

/// Commutator subgroup by closure of {a b a^-1 b^-1}, then the quotient group
/// and its cyclic invariant factors.
inline AbelianizationData abelianization(const Subgroup& h) {
  const Group local = subgroup_as_group(h);
  std::vector<int> comm_gens;
  for (int a = 0; a < local.order; ++a)
    for (int b = 0; b < local.order; ++b)
      comm_gens.push_back(local.mul(local.mul(a, b), local.mul(local.inv(a), local.inv(b))));
  std::sort(comm_gens.begin(), comm_gens.end());
  comm_gens.erase(std::unique(comm_gens.begin(), comm_gens.end()), comm_gens.end());
  const Subgroup comm = subgroup_closure(local, comm_gens);
  detail::QuotientGroup quot = detail::quotient_group(local, comm.members);

  const detail::AbelianDecomposition dec = detail::decompose_abelian(quot.group);
  // Merge per-prime cyclic orders into invariant factors d_1 | d_2 | ...
  std::vector<std::pair<int, std::vector<int>>> by_prime;
  for (size_t i = 0; i < dec.orders.size(); ++i) {
    const int o = dec.orders[i];
    int p = 2;
    while (o % p != 0) ++p;
    auto it = std::find_if(by_prime.begin(), by_prime.end(),
                           [p](const auto& e) { return e.first == p; });
    if (it == by_prime.end()) {
      by_prime.push_back({p, {o}});
    } else {
      it->second.push_back(o);
    }
  }
  size_t depth = 0;
  for (auto& [p, powers] : by_prime) {
    std::sort(powers.rbegin(), powers.rend());
    depth = std::max(depth, powers.size());
  }
  std::vector<int> factors;
  for (size_t j = 0; j < depth; ++j) {
    long long d = 1;
    for (const auto& [p, powers] : by_prime)
      if (j < powers.size()) d *= powers[j];
    factors.push_back(static_cast<int>(d));
  }
  std::reverse(factors.begin(), factors.end());

  AbelianizationData out;
  out.quotient = std::move(quot.group);
  out.projection = std::move(quot.projection);
  out.invariant_factors = std::move(factors);
  out.commutator_members.reserve(comm.members.size());
  for (int i : comm.members) out.commutator_members.push_back(h.members[i]);
  return out;
}

/// All characters of H, pulled back from the dual of H/[H,H]. The list is
/// sorted by exponent vectors, so the trivial character comes first and
/// indices are stable across runs.
inline std::vector<Character> enumerate_characters(const Subgroup& h) {
  const AbelianizationData ab = abelianization(h);
  const detail::AbelianDecomposition dec = detail::decompose_abelian(ab.quotient);
  const int r = static_cast<int>(dec.generators.size());
  int m = 1;
  for (int o : dec.orders) m = std::lcm(m, o);

  std::vector<Character> out;
  std::vector<int> k(r, 0);
  while (true) {
    Character chi;
    chi.parent = h.parent;
    chi.members = h.members;
    chi.root_order = m;
    chi.exponents.resize(h.order());
    chi.values.resize(h.order());
    for (int i = 0; i < h.order(); ++i) {
      const std::vector<int>& c = dec.coords[ab.projection[i]];
      long long e = 0;
      for (int j = 0; j < r; ++j) e += static_cast<long long>(k[j]) * c[j] * (m / dec.orders[j]);
      chi.exponents[i] = static_cast<int>(e % m);
      chi.values[i] = detail::root_of_unity(chi.exponents[i], m);
    }
    out.push_back(std::move(chi));
    int j = r - 1;
    while (j >= 0 && ++k[j] == dec.orders[j]) k[j--] = 0;
    if (j < 0) break;
  }
  std::sort(out.begin(), out.end(),
            [](const Character& a, const Character& b) { return a.exponents < b.exponents; });
  return out;
}

/// True iff the given per-member values are unit modulus and multiplicative
/// on every pair, both within tol.
inline bool is_character(const Subgroup& h, const std::vector<cplx>& values, double tol = 1e-12) {
  if (static_cast<int>(values.size()) != h.order())
    throw std::invalid_argument("one value per subgroup member required");
  const Group& g = *h.parent;
  for (const cplx& v : values)
    if (std::abs(std::abs(v) - 1.0) > tol) return false;
  for (int i = 0; i < h.order(); ++i)
    for (int j = 0; j < h.order(); ++j) {
      const int prod = h.local_index(g.mul(h.members[i], h.members[j]));
      if (std::abs(values[i] * values[j] - values[prod]) > tol) return false;
    }
  return true;
}

}  // namespace covha
