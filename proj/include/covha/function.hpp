#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "group.hpp"
#include "linalg.hpp"
#include "rng.hpp"

namespace covha {

/// Dense complex vector indexed by group elements; a point of L^p(G).
struct GroupFunction {
  const Group* group = nullptr;
  std::vector<cplx> values;

  GroupFunction() = default;
  explicit GroupFunction(const Group& g) : group(&g), values(g.order) {}
  GroupFunction(const Group& g, std::vector<cplx> v) : group(&g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != g.order)
      throw std::invalid_argument("function length does not match group order");
  }

  static GroupFunction delta(const Group& g, int x) {
    GroupFunction f(g);
    f.values.at(x) = 1.0;
    return f;
  }

  static GroupFunction constant(const Group& g, cplx c) {
    GroupFunction f(g);
    for (auto& v : f.values) v = c;
    return f;
  }

  int size() const { return static_cast<int>(values.size()); }
  cplx& operator[](int i) { return values[i]; }
  const cplx& operator[](int i) const { return values[i]; }
};

namespace detail {
inline void require_same_group(const GroupFunction& f, const GroupFunction& g) {
  if (f.group != g.group) throw std::invalid_argument("functions live on different groups");
}
inline void require_measure(const GroupFunction& f, const HaarMeasure& mu) {
  if (mu.carrier_order != f.size())
    throw std::invalid_argument("measure carrier does not match group order");
}
}  // namespace detail

inline GroupFunction operator+(const GroupFunction& f, const GroupFunction& g) {
  detail::require_same_group(f, g);
  GroupFunction r = f;
  for (int i = 0; i < r.size(); ++i) r[i] += g[i];
  return r;
}

inline GroupFunction operator-(const GroupFunction& f, const GroupFunction& g) {
  detail::require_same_group(f, g);
  GroupFunction r = f;
  for (int i = 0; i < r.size(); ++i) r[i] -= g[i];
  return r;
}

inline GroupFunction operator*(cplx c, const GroupFunction& f) {
  GroupFunction r = f;
  for (auto& v : r.values) v *= c;
  return r;
}

/// (sum_x |f(x)|^p mu.weight)^(1/p); p is any real >= 1.
inline double lp_norm(const GroupFunction& f, double p, const HaarMeasure& mu) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm requires p >= 1");
  detail::require_measure(f, mu);
  double s = 0.0;
  for (const cplx& v : f.values) s += std::pow(std::abs(v), p);
  return std::pow(s * mu.weight, 1.0 / p);
}

inline double sup_norm(const GroupFunction& f) {
  double best = 0.0;
  for (const cplx& v : f.values) best = std::max(best, std::abs(v));
  return best;
}

/// L_y f (x) = f(y^-1 x).
inline GroupFunction translate_left(int y, const GroupFunction& f) {
  const Group& g = *f.group;
  if (y < 0 || y >= g.order) throw std::invalid_argument("translation element out of range");
  GroupFunction r(g);
  const int yi = g.inv(y);
  for (int x = 0; x < g.order; ++x) r[x] = f[g.mul(yi, x)];
  return r;
}

/// R_x f (y) = f(y x).
inline GroupFunction translate_right(int x, const GroupFunction& f) {
  const Group& g = *f.group;
  if (x < 0 || x >= g.order) throw std::invalid_argument("translation element out of range");
  GroupFunction r(g);
  for (int y = 0; y < g.order; ++y) r[y] = f[g.mul(y, x)];
  return r;
}

/// (f * g)(x) = sum_y f(y) g(y^-1 x) lambda_G.weight.
inline GroupFunction convolve(const GroupFunction& f, const GroupFunction& g,
                              const HaarMeasure& lambda_G) {
  detail::require_same_group(f, g);
  detail::require_measure(f, lambda_G);
  const Group& grp = *f.group;
  GroupFunction r(grp);
  for (int y = 0; y < grp.order; ++y) {
    const cplx fy = f[y] * lambda_G.weight;
    if (fy == cplx{}) continue;
    const int yi = grp.inv(y);
    for (int x = 0; x < grp.order; ++x) r[x] += fy * g[grp.mul(yi, x)];
  }
  return r;
}

/// f^*(x) = conj(f(x^-1)); the modular factor of a finite group is 1.
inline GroupFunction involution(const GroupFunction& f) {
  const Group& g = *f.group;
  GroupFunction r(g);
  for (int x = 0; x < g.order; ++x) r[x] = std::conj(f[g.inv(x)]);
  return r;
}

/// <f, g> = sum_x f(x) conj(g(x)) lambda_G.weight.
inline cplx pairing(const GroupFunction& f, const GroupFunction& g, const HaarMeasure& lambda_G) {
  detail::require_same_group(f, g);
  detail::require_measure(f, lambda_G);
  cplx s{};
  for (int x = 0; x < f.size(); ++x) s += f[x] * std::conj(g[x]);
  return s * lambda_G.weight;
}

inline GroupFunction random_function(const Group& g, Rng& rng) {
  GroupFunction f(g);
  for (auto& v : f.values) v = rng.gaussian_complex();
  return f;
}

/// Iterated coset-then-subgroup sum of f against the quotient weight:
///   sum over cosets xH of ( sum_{s in H} f(x s) lambda_H.weight ) * quotient_weight.
/// The normalization contract pins quotient_weight = lambda_G.weight / lambda_H.weight,
/// which makes the iterated sum equal the plain lambda_G sum for every f.
inline cplx weil_sum(const GroupFunction& f, const Subgroup& h, const HaarMeasure& lambda_G,
                     const HaarMeasure& lambda_H, double quotient_weight) {
  const Group& g = *f.group;
  detail::require_measure(f, lambda_G);
  if (lambda_H.carrier_order != h.order())
    throw std::invalid_argument("subgroup measure carrier does not match subgroup order");
  const double expected = lambda_G.weight / lambda_H.weight;
  if (!(std::abs(quotient_weight - expected) <= 1e-9 * expected))
    throw std::invalid_argument("quotient weight inconsistent with the coset-sum normalization");
  const CosetPartition part = left_cosets(g, h);
  cplx total{};
  for (int r : part.representatives) {
    cplx inner{};
    for (int s : h.members) inner += f[g.mul(r, s)];
    total += inner * lambda_H.weight;
  }
  return total * quotient_weight;
}

/// The quotient weight that satisfies the weil_sum normalization contract.
inline double quotient_weight_for(const HaarMeasure& lambda_G, const HaarMeasure& lambda_H) {
  return lambda_G.weight / lambda_H.weight;
}

}  // namespace covha
