#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <deque>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "character.hpp"
#include "covariant.hpp"
#include "duality.hpp"
#include "function.hpp"
#include "group.hpp"
#include "quotient.hpp"

namespace covha {

inline constexpr const char* kVersion = "0.1.0";

struct VerifyOptions {
  std::vector<double> p_list{1.0, 1.5, 2.0, 3.0};
  std::uint64_t seed = 42;
  int samples = 100;
  int quotient_samples = 20;
  bool parallel = true;
};

struct CheckEntry {
  std::string id;
  std::string description;
  double tolerance = 0.0;
  double residual = 0.0;
  bool pass = true;
  bool applicable = true;
  int contexts = 0;
  std::string worst_context;
  nlohmann::json details;
};

struct VerificationReport {
  std::vector<CheckEntry> entries;
  std::uint64_t seed = 0;
  int samples = 0;
  int quotient_samples = 0;
  std::vector<double> p_list;
  int context_count = 0;
  double elapsed_seconds = 0.0;  // reported on stderr, not in the JSON body

  bool all_pass() const {
    for (const auto& e : entries)
      if (e.applicable && !e.pass) return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json entries_json = nlohmann::json::array();
    for (const auto& e : entries) {
      nlohmann::json je{{"id", e.id},          {"description", e.description},
                        {"tolerance", e.tolerance}, {"residual", e.residual},
                        {"pass", e.pass},      {"applicable", e.applicable},
                        {"contexts", e.contexts}};
      if (!e.worst_context.empty()) je["worst_context"] = e.worst_context;
      if (!e.details.is_null()) je["details"] = e.details;
      entries_json.push_back(std::move(je));
    }
    return nlohmann::json{{"version", kVersion},
                          {"seed", seed},
                          {"samples", samples},
                          {"quotient_samples", quotient_samples},
                          {"p_list", p_list},
                          {"contexts", context_count},
                          {"all_pass", all_pass()},
                          {"entries", std::move(entries_json)}};
  }
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, const std::string& label) {
  std::uint64_t h = 1469598103934665603ull ^ seed;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

/// All residuals for one context; a pure function of (context, options) so
/// parallel evaluation stays deterministic.
struct ContextChecks {
  std::string label;
  double idempotent = 0.0;
  double intertwine_right = 0.0;
  double intertwine_left = 0.0;
  double selfadjoint = 0.0;
  double multiplier = 0.0;
  double contraction_excess = 0.0;         // max over p of ratio/bound - 1
  double contraction_scaled_excess = 0.0;  // same with lambda_H of mass 3
  double quotient_ratio = 0.0;             // max over p of gap / tol(p)
  nlohmann::json quotient_gaps;
  bool quotient_converged = true;
  int image_rank = 0;
  int null_rank = 0;
  int order = 0;
  int index = 0;
  double kernel_membership = 0.0;
  double adjoint_residual = 0.0;
  bool adjoint_ran = false;
  bool duality_rank_ok = true;
  double duality_residual = 0.0;
  double inclusion_violation = 0.0;
  double ideal_residual = 0.0;
  bool family_checks_ran = false;  // resolution + character count, once per (G, H)
  bool resolution_applicable = false;
  double resolution_completeness = 0.0;
  double resolution_orthogonality = 0.0;
  bool char_count_ok = true;
  int char_count = 0;
  int expected_char_count = 0;
};

inline ContextChecks run_context_checks(const CovariantContext& ctx, const VerifyOptions& opt) {
  ContextChecks out;
  out.label = ctx.label();
  out.order = ctx.group->order;
  out.index = ctx.index();
  const std::uint64_t seed = mix_seed(opt.seed, out.label);
  const Group& g = *ctx.group;

  const Matrix p_mat = operator_matrix(ctx);
  out.idempotent = max_abs(p_mat * p_mat - p_mat);
  const IntertwineReport tw = intertwine_exhaustive(ctx);
  out.intertwine_right = tw.right;
  out.intertwine_left = tw.left;

  const IdentityReport ids = check_identities(ctx, opt.samples, seed);
  out.selfadjoint = ids.selfadjoint;
  out.multiplier = ids.multiplier;

  for (double p : opt.p_list) {
    const ContractionReport cr = contraction_check(ctx, p, opt.samples, seed ^ 0x1);
    out.contraction_excess = std::max(out.contraction_excess, cr.max_ratio / cr.bound - 1.0);
  }
  const CovariantContext scaled =
      make_context(g, ctx.subgroup, ctx.character, ctx.lambda_G, haar_mass(ctx.subgroup, 3.0));
  for (double p : opt.p_list) {
    const ContractionReport cr = contraction_check(scaled, p, opt.samples, seed ^ 0x2);
    out.contraction_scaled_excess =
        std::max(out.contraction_scaled_excess, cr.max_ratio / cr.bound - 1.0);
  }

  out.quotient_gaps = nlohmann::json::object();
  for (double p : opt.p_list) {
    const IsometryReport ir = verify_quotient_isometry(ctx, p, opt.quotient_samples, seed ^ 0x3);
    out.quotient_ratio = std::max(out.quotient_ratio, ir.max_gap / ir.tolerance);
    out.quotient_converged = out.quotient_converged && ir.all_converged;
    out.quotient_gaps[std::to_string(p)] = ir.max_gap;
  }

  out.image_rank = rank(p_mat);
  out.null_rank = kernel_basis(ctx).rank;
  out.kernel_membership = kernel_closure_check(ctx, opt.samples, seed ^ 0x4).membership_residual;

  for (double p : opt.p_list) {
    if (p <= 1.0) continue;
    out.adjoint_ran = true;
    out.adjoint_residual =
        std::max(out.adjoint_residual, adjoint_check(ctx, p, opt.samples, seed ^ 0x5).max_residual);
  }

  std::vector<double> duality_ps{1.0};
  for (double p : opt.p_list)
    if (p > 1.0) duality_ps.push_back(p);
  for (double p : duality_ps) {
    const DualityReport dr = verify_duality(ctx, p, opt.samples, seed ^ 0x6);
    out.duality_rank_ok = out.duality_rank_ok && dr.subspace_equal;
    out.duality_residual =
        std::max({out.duality_residual, dr.annihilator_covariance_residual,
                  dr.weil_chain_residual, dr.weil_vanishing_residual});
  }

  {
    Rng rng(seed ^ 0x7);
    const double mass_g = ctx.lambda_G.total_mass();
    for (int it = 0; it < opt.samples; ++it) {
      const GroupFunction psi = random_covariant(ctx, rng);
      for (double p : opt.p_list) {
        if (p <= 1.0) continue;
        const double slack = std::pow(mass_g, (p - 1.0) / p) * lp_norm(psi, p, ctx.lambda_G) -
                             lp_norm(psi, 1.0, ctx.lambda_G);
        out.inclusion_violation = std::max(out.inclusion_violation, -slack);
      }
    }
  }
  {
    Rng rng(seed ^ 0x8);
    for (int it = 0; it < opt.samples; ++it) {
      const GroupFunction f = random_function(g, rng);
      const GroupFunction psi = random_covariant(ctx, rng);
      out.ideal_residual = std::max(
          out.ideal_residual, covariance_residual(ctx, convolve(f, psi, ctx.lambda_G)));
    }
  }

  // Once per (group, subgroup) family: the trivial character heads each list.
  if (ctx.character.trivial()) {
    out.family_checks_ran = true;
    const ResolutionReport rr = abelian_resolution_check(g, ctx.subgroup, opt.samples, seed ^ 0x9);
    out.resolution_applicable = rr.applicable;
    out.resolution_completeness = rr.completeness_residual;
    out.resolution_orthogonality = rr.orthogonality_residual;
    const AbelianizationData ab = abelianization(ctx.subgroup);
    out.char_count = static_cast<int>(enumerate_characters(ctx.subgroup).size());
    out.expected_char_count = ab.quotient.order;
    out.char_count_ok = out.char_count == out.expected_char_count &&
                        out.char_count * static_cast<int>(ab.commutator_members.size()) ==
                            ctx.subgroup.order();
  }
  return out;
}

template <typename Fn>
inline void parallel_for(int n, bool parallel, Fn&& fn) {
  if (!parallel || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  const int workers = std::min<int>(n, hw ? static_cast<int>(hw) : 4);
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace detail

/// The default verification matrix: each named group, every subgroup
/// generated by a single element, every character of that subgroup.
/// Group storage is owned by the caller-supplied deque (stable addresses).
inline std::vector<CovariantContext> standard_contexts(std::deque<Group>& storage) {
  storage.clear();
  storage.push_back(cyclic_group(4));
  storage.push_back(cyclic_group(6));
  storage.push_back(dihedral_group(4));
  storage.push_back(quaternion_group());
  storage.push_back(symmetric_group(3));
  storage.push_back(symmetric_group(4));
  std::vector<CovariantContext> ctxs;
  for (const Group& g : storage) {
    std::vector<std::vector<int>> seen;
    for (int x = 0; x < g.order; ++x) {
      Subgroup h = subgroup_closure(g, {x});
      if (std::find(seen.begin(), seen.end(), h.members) != seen.end()) continue;
      seen.push_back(h.members);
      for (Character& chi : enumerate_characters(h))
        ctxs.push_back(make_context(g, h, std::move(chi)));
    }
  }
  return ctxs;
}

/// Contexts for a single (group, subgroup): one per character, or just the
/// chosen character when char_index >= 0.
inline std::vector<CovariantContext> contexts_for(const Group& g, const Subgroup& h,
                                                  int char_index = -1) {
  std::vector<Character> chars = enumerate_characters(h);
  if (char_index >= static_cast<int>(chars.size()))
    throw std::invalid_argument("character index out of range");
  std::vector<CovariantContext> ctxs;
  for (int i = 0; i < static_cast<int>(chars.size()); ++i) {
    if (char_index >= 0 && i != char_index) continue;
    ctxs.push_back(make_context(g, h, std::move(chars[i])));
  }
  return ctxs;
}

inline VerificationReport run_verification(const std::vector<CovariantContext>& ctxs,
                                           const VerifyOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<detail::ContextChecks> results(ctxs.size());
  detail::parallel_for(static_cast<int>(ctxs.size()), opt.parallel,
                       [&](int i) { results[i] = detail::run_context_checks(ctxs[i], opt); });

  VerificationReport report;
  report.seed = opt.seed;
  report.samples = opt.samples;
  report.quotient_samples = opt.quotient_samples;
  report.p_list = opt.p_list;
  report.context_count = static_cast<int>(ctxs.size());

  auto add = [&report](const std::string& id, const std::string& desc, double tol) {
    report.entries.push_back(CheckEntry{id, desc, tol});
    return &report.entries.back();
  };
  auto fold = [](CheckEntry* e, double residual, const std::string& label, bool ok) {
    if (residual > e->residual || e->contexts == 0) {
      e->residual = residual;
      e->worst_context = label;
    }
    e->pass = e->pass && ok;
    ++e->contexts;
  };

  bool has_smooth_p = false;
  for (double p : opt.p_list) has_smooth_p = has_smooth_p || p > 1.0;

  CheckEntry* idem = add("idempotent", "averaging operator squares to itself", 1e-12);
  CheckEntry* twr = add("intertwine.right", "right translation by h rescales the average by xi(h)",
                        1e-12);
  CheckEntry* twl = add("intertwine.left", "left translation commutes with the average", 1e-12);
  CheckEntry* sa = add("selfadjoint", "pairing moves the average from one slot to the other",
                       1e-12);
  CheckEntry* mult = add("multiplier", "average commutes with left convolution", 1e-12);
  CheckEntry* contr = add("contraction", "probability-normalized average contracts every L^p norm",
                          1e-12);
  CheckEntry* contrs = add("contraction.scaled",
                           "operator norm stays within the total mass of lambda_H", 1e-12);
  CheckEntry* quot = add("quotient.isometry",
                         "minimized quotient norm matches |T f|_p (gap over per-p tolerance)", 1.0);
  CheckEntry* ranks = add("quotient.ranks", "image rank [G:H] and null rank fill out |G|", 0.0);
  CheckEntry* kc = add("kernel.closure", "h - T h lands in the kernel of the operator", 1e-12);
  CheckEntry* adj = add("thm.adjoint", "the adjoint acts on representers by the same average",
                        1e-12);
  CheckEntry* dpq = add("thm.duality.pq",
                        "kernel annihilator coincides with the covariant subspace (1 < p)", 1e-12);
  CheckEntry* d1i = add("thm.duality.1inf",
                        "kernel annihilator coincides with the covariant subspace (p=1, q=inf)",
                        1e-12);
  CheckEntry* incl = add("compact.inclusion",
                         "|psi|_1 <= mass(G)^((p-1)/p) |psi|_p on covariant psi", 1e-12);
  CheckEntry* ideal = add("ideal.left", "f * psi keeps the covariance of psi", 1e-10);
  CheckEntry* reso = add("abelian.resolution",
                         "character averages of abelian H sum to the identity", 1e-12);
  CheckEntry* chc = add("characters.count", "character count equals the abelianization order",
                        0.0);

  for (const auto& r : results) {
    fold(idem, r.idempotent, r.label, r.idempotent <= 1e-12);
    fold(twr, r.intertwine_right, r.label, r.intertwine_right <= 1e-12);
    fold(twl, r.intertwine_left, r.label, r.intertwine_left <= 1e-12);
    fold(sa, r.selfadjoint, r.label, r.selfadjoint <= 1e-12);
    fold(mult, r.multiplier, r.label, r.multiplier <= 1e-12);
    fold(contr, r.contraction_excess, r.label, r.contraction_excess <= 1e-12);
    fold(contrs, r.contraction_scaled_excess, r.label, r.contraction_scaled_excess <= 1e-12);
    fold(quot, r.quotient_ratio, r.label, r.quotient_ratio <= 1.0 && r.quotient_converged);
    if (quot->worst_context == r.label) quot->details = r.quotient_gaps;
    const int rank_dev = std::abs(r.image_rank - r.index) +
                         std::abs(r.image_rank + r.null_rank - r.order);
    fold(ranks, rank_dev, r.label, rank_dev == 0);
    fold(kc, r.kernel_membership, r.label, r.kernel_membership <= 1e-12);
    if (r.adjoint_ran) fold(adj, r.adjoint_residual, r.label, r.adjoint_residual <= 1e-12);
    const double dual_tol = 1e-12;
    if (has_smooth_p)
      fold(dpq, r.duality_residual, r.label,
           r.duality_rank_ok && r.duality_residual <= dual_tol);
    fold(d1i, r.duality_residual, r.label, r.duality_rank_ok && r.duality_residual <= dual_tol);
    if (has_smooth_p)
      fold(incl, r.inclusion_violation, r.label, r.inclusion_violation <= 1e-12);
    fold(ideal, r.ideal_residual, r.label, r.ideal_residual <= 1e-10);
    if (r.family_checks_ran && r.resolution_applicable) {
      const double res = std::max(r.resolution_completeness, r.resolution_orthogonality);
      fold(reso, res, r.label, r.resolution_completeness <= 1e-12);
    }
    if (r.family_checks_ran) {
      const int dev = std::abs(r.char_count - r.expected_char_count) + (r.char_count_ok ? 0 : 1);
      fold(chc, dev, r.label, r.char_count_ok);
    }
  }
  adj->applicable = has_smooth_p && adj->contexts > 0;
  dpq->applicable = has_smooth_p;
  incl->applicable = has_smooth_p;
  reso->applicable = reso->contexts > 0;

  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace covha
