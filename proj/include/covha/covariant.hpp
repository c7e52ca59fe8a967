#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "character.hpp"
#include "function.hpp"
#include "group.hpp"
#include "linalg.hpp"
#include "rng.hpp"

namespace covha {

/// Everything needed to average against a subgroup character: the group, the
/// subgroup H, a character of H, and the two Haar measures. lambda_H defaults
/// to the probability measure, which makes the averaging operator a
/// projection; with a general lambda_H its operator norm is bounded by the
/// total mass of lambda_H instead.
struct CovariantContext {
  const Group* group = nullptr;
  Subgroup subgroup;
  Character character;
  HaarMeasure lambda_G;
  HaarMeasure lambda_H;
  CosetPartition cosets;

  int index() const { return group->order / subgroup.order(); }

  std::string label() const {
    std::string s = group->name + "/H" + std::to_string(subgroup.order()) + "[";
    for (int x : subgroup.members) s += std::to_string(x) + ",";
    s.back() = ']';
    s += "#";
    for (int e : character.exponents) s += std::to_string(e) + ".";
    s += "/" + std::to_string(character.root_order);
    return s;
  }
};

inline CovariantContext make_context(const Group& g, Subgroup h, Character chi,
                                     HaarMeasure lambda_G = {}, HaarMeasure lambda_H = {}) {
  if (h.parent != &g) throw std::invalid_argument("subgroup does not belong to the group");
  if (chi.members != h.members)
    throw std::invalid_argument("character does not belong to the subgroup");
  CovariantContext ctx;
  ctx.group = &g;
  ctx.subgroup = std::move(h);
  ctx.character = std::move(chi);
  ctx.lambda_G = lambda_G.carrier_order ? lambda_G : haar_counting(g);
  ctx.lambda_H = lambda_H.carrier_order ? lambda_H : haar_probability(ctx.subgroup);
  if (ctx.lambda_G.carrier_order != g.order || ctx.lambda_H.carrier_order != ctx.subgroup.order())
    throw std::invalid_argument("measure carriers do not match the context");
  ctx.cosets = left_cosets(g, ctx.subgroup);
  return ctx;
}

/// The averaging operator: (T f)(x) = sum_{s in H} f(x s) conj(xi(s)) lambda_H.weight.
inline GroupFunction average(const CovariantContext& ctx, const GroupFunction& f) {
  if (f.group != ctx.group) throw std::invalid_argument("function is not on the context group");
  const Group& g = *ctx.group;
  GroupFunction r(g);
  for (int x = 0; x < g.order; ++x) {
    cplx s{};
    for (int j = 0; j < ctx.subgroup.order(); ++j)
      s += f[g.mul(x, ctx.subgroup.members[j])] * std::conj(ctx.character.values[j]);
    r[x] = s * ctx.lambda_H.weight;
  }
  return r;
}

/// max over x in G, s in H of |psi(x s) - xi(s) psi(x)|.
inline double covariance_residual(const CovariantContext& ctx, const GroupFunction& psi) {
  if (psi.group != ctx.group) throw std::invalid_argument("function is not on the context group");
  const Group& g = *ctx.group;
  double worst = 0.0;
  for (int x = 0; x < g.order; ++x)
    for (int j = 0; j < ctx.subgroup.order(); ++j) {
      const cplx lhs = psi[g.mul(x, ctx.subgroup.members[j])];
      const cplx rhs = ctx.character.values[j] * psi[x];
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  return worst;
}

inline bool is_covariant(const CovariantContext& ctx, const GroupFunction& psi,
                         double tol = 1e-12) {
  return covariance_residual(ctx, psi) <= tol;
}

/// Materialized operator: column y holds the image of the delta at y. With
/// the probability lambda_H the matrix is an idempotent of rank [G:H].
inline Matrix operator_matrix(const CovariantContext& ctx) {
  const Group& g = *ctx.group;
  Matrix p(g.order, g.order);
  for (int x = 0; x < g.order; ++x)
    for (int j = 0; j < ctx.subgroup.order(); ++j)
      p(x, g.mul(x, ctx.subgroup.members[j])) +=
          std::conj(ctx.character.values[j]) * ctx.lambda_H.weight;
  return p;
}

enum class BasisKind { Covariant, Kernel, Annihilator };

struct SubspaceBasis {
  BasisKind kind = BasisKind::Covariant;
  std::vector<GroupFunction> vectors;
  int rank = 0;
};

/// One basis vector per coset: b_r(r h) = xi(h), zero off the coset rH.
/// Covariance pins the rest of the vector once the value at the
/// representative is fixed, so dim = [G:H].
inline SubspaceBasis covariant_basis(const CovariantContext& ctx) {
  const Group& g = *ctx.group;
  SubspaceBasis basis;
  basis.kind = BasisKind::Covariant;
  for (int r : ctx.cosets.representatives) {
    GroupFunction b(g);
    for (int j = 0; j < ctx.subgroup.order(); ++j)
      b[g.mul(r, ctx.subgroup.members[j])] = ctx.character.values[j];
    basis.vectors.push_back(std::move(b));
  }
  basis.rank = static_cast<int>(basis.vectors.size());
  return basis;
}

/// Null space of the averaging operator; rank = |G| - [G:H].
inline SubspaceBasis kernel_basis(const CovariantContext& ctx) {
  const Group& g = *ctx.group;
  SubspaceBasis basis;
  basis.kind = BasisKind::Kernel;
  for (auto& v : null_space(operator_matrix(ctx)))
    basis.vectors.emplace_back(g, std::move(v));
  basis.rank = static_cast<int>(basis.vectors.size());
  return basis;
}

/// Residual report for the operator identities, sampled over seeded random
/// functions. Translation identities additionally sweep every h in H, and
/// every y in G when |G| <= 16 (else sampled y).
struct IdentityReport {
  std::uint64_t seed = 0;
  int samples = 0;
  double right_intertwine = 0.0;  // T(R_h f) vs xi(h) T(f)
  double left_intertwine = 0.0;   // T(L_y f) vs L_y T(f)
  double selfadjoint = 0.0;       // <Tf, g> vs <f, Tg>
  double multiplier = 0.0;        // T(f * g) vs f * T(g)

  double max_residual() const {
    return std::max(std::max(right_intertwine, left_intertwine),
                    std::max(selfadjoint, multiplier));
  }
};

inline IdentityReport check_identities(const CovariantContext& ctx, int samples,
                                       std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  const Group& g = *ctx.group;
  Rng rng(seed);
  IdentityReport rep;
  rep.seed = seed;
  rep.samples = samples;
  const bool exhaustive_y = g.order <= 16;
  for (int it = 0; it < samples; ++it) {
    const GroupFunction f = random_function(g, rng);
    const GroupFunction fbar = random_function(g, rng);
    const GroupFunction tf = average(ctx, f);

    for (int j = 0; j < ctx.subgroup.order(); ++j) {
      const GroupFunction lhs = average(ctx, translate_right(ctx.subgroup.members[j], f));
      const GroupFunction rhs = ctx.character.values[j] * tf;
      rep.right_intertwine = std::max(rep.right_intertwine, sup_norm(lhs - rhs));
    }
    const int y_count = exhaustive_y ? g.order : 8;
    for (int k = 0; k < y_count; ++k) {
      const int y = exhaustive_y ? k : rng.below(g.order);
      const GroupFunction lhs = average(ctx, translate_left(y, f));
      const GroupFunction rhs = translate_left(y, tf);
      rep.left_intertwine = std::max(rep.left_intertwine, sup_norm(lhs - rhs));
    }
    rep.selfadjoint = std::max(
        rep.selfadjoint,
        std::abs(pairing(tf, fbar, ctx.lambda_G) - pairing(f, average(ctx, fbar), ctx.lambda_G)));
    rep.multiplier = std::max(
        rep.multiplier, sup_norm(average(ctx, convolve(f, fbar, ctx.lambda_G)) -
                                 convolve(f, average(ctx, fbar), ctx.lambda_G)));
  }
  return rep;
}

/// Exhaustive matrix-level intertwining residuals, covering all inputs at
/// once by linearity: P R_h = xi(h) P and P L_y = L_y P.
struct IntertwineReport {
  double right = 0.0;
  double left = 0.0;
};

inline IntertwineReport intertwine_exhaustive(const CovariantContext& ctx) {
  const Group& g = *ctx.group;
  const Matrix p = operator_matrix(ctx);
  IntertwineReport rep;
  // (P R_h)[x][y] = P[x][y h^-1]; (P L_y)[x][z] = P[x][y z]; (L_y P)[x][z] = P[y^-1 x][z].
  for (int j = 0; j < ctx.subgroup.order(); ++j) {
    const int hi = g.inv(ctx.subgroup.members[j]);
    const cplx xi_h = ctx.character.values[j];
    for (int x = 0; x < g.order; ++x)
      for (int y = 0; y < g.order; ++y)
        rep.right = std::max(rep.right, std::abs(p(x, g.mul(y, hi)) - xi_h * p(x, y)));
  }
  for (int y = 0; y < g.order; ++y) {
    const int yi = g.inv(y);
    for (int x = 0; x < g.order; ++x)
      for (int z = 0; z < g.order; ++z)
        rep.left = std::max(rep.left, std::abs(p(x, g.mul(y, z)) - p(g.mul(yi, x), z)));
  }
  return rep;
}

/// Verifies |T f|_p <= bound * |f|_p on random functions, where the bound is
/// the total mass of lambda_H (1 for the probability measure).
struct ContractionReport {
  double p = 2.0;
  double bound = 1.0;
  double max_ratio = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  bool pass = false;
};

inline ContractionReport contraction_check(const CovariantContext& ctx, double p, int samples,
                                           std::uint64_t seed) {
  if (!(p >= 1.0)) throw std::invalid_argument("contraction_check requires p >= 1");
  Rng rng(seed);
  ContractionReport rep;
  rep.p = p;
  rep.bound = ctx.lambda_H.total_mass();
  rep.samples = samples;
  rep.seed = seed;
  for (int it = 0; it < samples; ++it) {
    const GroupFunction f = random_function(*ctx.group, rng);
    const double nf = lp_norm(f, p, ctx.lambda_G);
    if (nf == 0.0) continue;
    rep.max_ratio = std::max(rep.max_ratio, lp_norm(average(ctx, f), p, ctx.lambda_G) / nf);
  }
  rep.pass = rep.max_ratio <= rep.bound * (1.0 + 1e-12);
  return rep;
}

/// For abelian H the averages over all characters resolve the identity:
/// sum_xi T_xi f = f, and the images are pairwise orthogonal. Reported as
/// inapplicable when H is not abelian (the characters see only H/[H,H]).
struct ResolutionReport {
  bool applicable = false;
  int characters = 0;
  double completeness_residual = 0.0;
  double orthogonality_residual = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  bool pass = false;
};

inline ResolutionReport abelian_resolution_check(const Group& g, const Subgroup& h, int samples,
                                                 std::uint64_t seed) {
  ResolutionReport rep;
  rep.samples = samples;
  rep.seed = seed;
  const Group local = subgroup_as_group(h);
  if (!local.is_abelian()) return rep;
  rep.applicable = true;
  std::vector<CovariantContext> ctxs;
  for (Character& chi : enumerate_characters(h))
    ctxs.push_back(make_context(g, h, std::move(chi)));
  rep.characters = static_cast<int>(ctxs.size());
  Rng rng(seed);
  const HaarMeasure lambda_G = haar_counting(g);
  for (int it = 0; it < samples; ++it) {
    const GroupFunction f = random_function(g, rng);
    std::vector<GroupFunction> parts;
    parts.reserve(ctxs.size());
    for (const auto& ctx : ctxs) parts.push_back(average(ctx, f));
    GroupFunction sum(g);
    for (const auto& part : parts) sum = sum + part;
    rep.completeness_residual = std::max(rep.completeness_residual, sup_norm(sum - f));
    for (size_t i = 0; i < parts.size(); ++i)
      for (size_t j = i + 1; j < parts.size(); ++j)
        rep.orthogonality_residual =
            std::max(rep.orthogonality_residual, std::abs(pairing(parts[i], parts[j], lambda_G)));
  }
  rep.pass = rep.completeness_residual <= 1e-12 &&
             rep.orthogonality_residual <= 1e-12 * g.order;
  return rep;
}

/// Covariant functions drawn as T applied to Gaussian noise.
inline GroupFunction random_covariant(const CovariantContext& ctx, Rng& rng) {
  return average(ctx, random_function(*ctx.group, rng));
}

}  // namespace covha
