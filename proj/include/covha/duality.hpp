#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "covariant.hpp"
#include "function.hpp"
#include "linalg.hpp"
#include "rng.hpp"

namespace covha {

/// Functional f -> <f, representer> with respect to the given measure;
/// linear in f, conjugate-linear in the representer.
struct DualFunctional {
  GroupFunction representer;
  HaarMeasure measure;
  double exponent_q = 2.0;

  cplx operator()(const GroupFunction& f) const { return pairing(f, representer, measure); }
};

inline double conjugate_exponent(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("conjugate exponent requires p >= 1");
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return p / (p - 1.0);
}

/// The adjoint of the averaging operator acts on representers by the same
/// averaging: Lambda_g(T f) = Lambda_{T g}(f).
struct AdjointReport {
  double p = 2.0;
  double max_residual = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
};

inline AdjointReport adjoint_check(const CovariantContext& ctx, double p, int samples,
                                   std::uint64_t seed) {
  AdjointReport rep;
  rep.p = p;
  rep.samples = samples;
  rep.seed = seed;
  const double q = conjugate_exponent(p);
  Rng rng(seed);
  for (int it = 0; it < samples; ++it) {
    const GroupFunction f = random_function(*ctx.group, rng);
    const DualFunctional lambda_g{random_function(*ctx.group, rng), ctx.lambda_G, q};
    const DualFunctional lambda_tg{average(ctx, lambda_g.representer), ctx.lambda_G, q};
    rep.max_residual =
        std::max(rep.max_residual, std::abs(lambda_g(average(ctx, f)) - lambda_tg(f)));
  }
  return rep;
}

/// Basis of {g : <v, g> = 0 for every v in the kernel span}. An empty kernel
/// annihilates nothing, so the annihilator is everything.
inline SubspaceBasis annihilator(const SubspaceBasis& kernel, const HaarMeasure& lambda_G,
                                 const Group& g) {
  if (kernel.kind != BasisKind::Kernel)
    throw std::invalid_argument("annihilator expects a kernel basis");
  SubspaceBasis out;
  out.kind = BasisKind::Annihilator;
  if (kernel.rank == 0) {
    for (int x = 0; x < g.order; ++x) out.vectors.push_back(GroupFunction::delta(g, x));
    out.rank = g.order;
    return out;
  }
  const int n = kernel.vectors[0].size();
  // <v, g> = 0 is conjugate-linear in g; solve the linear system for conj(g).
  Matrix rows(kernel.rank, n);
  for (int i = 0; i < kernel.rank; ++i)
    for (int x = 0; x < n; ++x) rows(i, x) = kernel.vectors[i][x] * lambda_G.weight;
  for (auto& u : null_space(rows)) {
    for (auto& v : u) v = std::conj(v);
    out.vectors.emplace_back(g, std::move(u));
  }
  out.rank = static_cast<int>(out.vectors.size());
  return out;
}

namespace detail {

inline Matrix stack_vectors(const std::vector<const SubspaceBasis*>& bases) {
  int rows = 0, cols = 0;
  for (const auto* b : bases) {
    rows += static_cast<int>(b->vectors.size());
    if (!b->vectors.empty()) cols = b->vectors[0].size();
  }
  Matrix m(rows, cols);
  int r = 0;
  for (const auto* b : bases)
    for (const auto& v : b->vectors) {
      for (int x = 0; x < cols; ++x) m(r, x) = v[x];
      ++r;
    }
  return m;
}

}  // namespace detail

/// Subspace identification behind the dual-space theorems: the annihilator
/// of the kernel equals the covariant subspace, for every conjugate exponent
/// including q = infinity (the covariant subspace does not depend on q on a
/// finite group). Both proof directions are checked numerically:
///  (i) annihilator vectors satisfy the covariance relation R_h g = xi(h) g;
///  (ii) covariant vectors kill the kernel through the coset-sum (Weil)
///       factorization, whose inner sums collapse to T f times conj(g).
struct DualityReport {
  double p = 2.0;
  double q = 2.0;
  int annihilator_rank = 0;
  int covariant_rank = 0;
  int stacked_rank = 0;
  int index = 0;
  bool subspace_equal = false;
  double annihilator_covariance_residual = 0.0;
  double weil_chain_residual = 0.0;
  double weil_vanishing_residual = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  bool pass = false;
};

inline DualityReport verify_duality(const CovariantContext& ctx, double p, int samples,
                                    std::uint64_t seed) {
  DualityReport rep;
  rep.p = p;
  rep.q = conjugate_exponent(p);
  rep.samples = samples;
  rep.seed = seed;
  rep.index = ctx.index();

  const SubspaceBasis kern = kernel_basis(ctx);
  const SubspaceBasis ann = annihilator(kern, ctx.lambda_G, *ctx.group);
  const SubspaceBasis cov = covariant_basis(ctx);
  rep.annihilator_rank = ann.rank;
  rep.covariant_rank = cov.rank;
  rep.stacked_rank = rank(detail::stack_vectors({&ann, &cov}));
  rep.subspace_equal = rep.annihilator_rank == rep.index && rep.covariant_rank == rep.index &&
                       rep.stacked_rank == rep.index;

  for (const GroupFunction& g : ann.vectors)
    rep.annihilator_covariance_residual =
        std::max(rep.annihilator_covariance_residual, covariance_residual(ctx, g));

  const Group& grp = *ctx.group;
  const double qw = quotient_weight_for(ctx.lambda_G, ctx.lambda_H);
  Rng rng(seed);
  for (int it = 0; it < samples; ++it) {
    // Random kernel element against a random covariant function.
    GroupFunction f(grp);
    if (kern.rank > 0) {
      for (const auto& v : kern.vectors) {
        const cplx c = rng.gaussian_complex();
        for (int x = 0; x < grp.order; ++x) f[x] += c * v[x];
      }
    }
    GroupFunction g(grp);
    for (const auto& v : cov.vectors) {
      const cplx c = rng.gaussian_complex();
      for (int x = 0; x < grp.order; ++x) g[x] += c * v[x];
    }
    const GroupFunction tf = average(ctx, f);
    GroupFunction prod(grp);
    for (int x = 0; x < grp.order; ++x) prod[x] = f[x] * std::conj(g[x]);
    // Inner H-sum at each representative collapses through covariance of g.
    for (int r : ctx.cosets.representatives) {
      cplx inner{};
      for (int s : ctx.subgroup.members) inner += prod[grp.mul(r, s)];
      inner *= ctx.lambda_H.weight;
      rep.weil_chain_residual =
          std::max(rep.weil_chain_residual, std::abs(inner - tf[r] * std::conj(g[r])));
    }
    rep.weil_vanishing_residual = std::max(
        rep.weil_vanishing_residual,
        std::abs(weil_sum(prod, ctx.subgroup, ctx.lambda_G, ctx.lambda_H, qw)));
  }
  const double scale = std::max(1.0, static_cast<double>(grp.order));
  rep.pass = rep.subspace_equal && rep.annihilator_covariance_residual <= 1e-12 &&
             rep.weil_chain_residual <= 1e-12 * scale &&
             rep.weil_vanishing_residual <= 1e-12 * scale;
  return rep;
}

/// Operator norm of f -> <f, g> restricted to the covariant subspace in L^2,
/// computed from an orthonormalized covariant basis. With the probability
/// measure on H this equals |T g|_2.
inline double functional_norm_on_covariant(const CovariantContext& ctx, const GroupFunction& g) {
  const SubspaceBasis cov = covariant_basis(ctx);
  std::vector<GroupFunction> ortho;
  for (const GroupFunction& v : cov.vectors) {
    GroupFunction e = v;
    for (const GroupFunction& u : ortho) {
      const cplx c = pairing(e, u, ctx.lambda_G);
      for (int x = 0; x < e.size(); ++x) e[x] -= c * u[x];
    }
    const double nn = lp_norm(e, 2.0, ctx.lambda_G);
    if (nn <= 1e-14) continue;
    for (auto& val : e.values) val /= nn;
    ortho.push_back(std::move(e));
  }
  double s = 0.0;
  for (const GroupFunction& e : ortho) s += std::norm(pairing(e, g, ctx.lambda_G));
  return std::sqrt(s);
}

}  // namespace covha
