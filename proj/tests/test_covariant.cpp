#include <catch2/catch_amalgamated.hpp>

#include "covha/covariant.hpp"
#include "covha/quotient.hpp"

using covha::cplx;
using covha::CovariantContext;
using covha::Group;
using covha::GroupFunction;
using covha::Subgroup;

namespace {

// G = Z4, H = {0,2}, xi(2) = -1: the running small context.
struct Z4Fixture {
  Group g = covha::cyclic_group(4);
  CovariantContext ctx;
  Z4Fixture() {
    const Subgroup h = covha::subgroup_closure(g, {2});
    auto chars = covha::enumerate_characters(h);
    REQUIRE(chars.size() == 2);
    ctx = covha::make_context(g, h, std::move(chars[1]));
  }
};

std::vector<CovariantContext> sample_contexts(std::deque<Group>& storage) {
  storage.push_back(covha::cyclic_group(4));
  storage.push_back(covha::cyclic_group(6));
  storage.push_back(covha::dihedral_group(4));
  storage.push_back(covha::symmetric_group(3));
  std::vector<CovariantContext> out;
  for (const Group& g : storage) {
    std::vector<std::vector<int>> seen;
    for (int x = 0; x < g.order; ++x) {
      Subgroup h = covha::subgroup_closure(g, {x});
      if (std::find(seen.begin(), seen.end(), h.members) != seen.end()) continue;
      seen.push_back(h.members);
      for (auto& chi : covha::enumerate_characters(h))
        out.push_back(covha::make_context(g, h, std::move(chi)));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("averaging over the full group with the trivial character") {
  const Group z2 = covha::cyclic_group(2);
  const auto ctx = covha::make_context(z2, covha::full_subgroup(z2),
                                       covha::enumerate_characters(covha::full_subgroup(z2))[0]);
  const GroupFunction f(z2, {cplx{1, 0}, cplx{3, 0}});
  const GroupFunction tf = covha::average(ctx, f);
  REQUIRE(std::abs(tf[0] - cplx{2, 0}) < 1e-15);
  REQUIRE(std::abs(tf[1] - cplx{2, 0}) < 1e-15);
}

TEST_CASE("averaging a delta in the Z4 context") {
  Z4Fixture fx;
  const GroupFunction tf = covha::average(fx.ctx, GroupFunction::delta(fx.g, 0));
  REQUIRE(std::abs(tf[0] - cplx{0.5, 0}) < 1e-15);
  REQUIRE(std::abs(tf[1]) < 1e-15);
  REQUIRE(std::abs(tf[2] - cplx{-0.5, 0}) < 1e-15);
  REQUIRE(std::abs(tf[3]) < 1e-15);
  REQUIRE(covha::is_covariant(fx.ctx, tf));
}

TEST_CASE("covariant functions are fixed points") {
  Z4Fixture fx;
  for (const GroupFunction& b : covha::covariant_basis(fx.ctx).vectors) {
    REQUIRE(covha::sup_norm(covha::average(fx.ctx, b) - b) < 1e-15);
  }
  covha::Rng rng(1);
  const GroupFunction psi = covha::random_covariant(fx.ctx, rng);
  REQUIRE(covha::sup_norm(covha::average(fx.ctx, psi) - psi) < 1e-14);
}

TEST_CASE("covariance check") {
  Z4Fixture fx;
  REQUIRE(covha::is_covariant(fx.ctx, GroupFunction(fx.g)));
  const GroupFunction psi(fx.g, {cplx{0.5, 0}, cplx{}, cplx{-0.5, 0}, cplx{}});
  REQUIRE(covha::is_covariant(fx.ctx, psi));
  REQUIRE_FALSE(covha::is_covariant(fx.ctx, GroupFunction::delta(fx.g, 0)));
  REQUIRE(covha::covariance_residual(fx.ctx, GroupFunction::delta(fx.g, 0)) ==
          Catch::Approx(1.0));
}

TEST_CASE("operator matrix is the identity for the trivial subgroup") {
  const Group z4 = covha::cyclic_group(4);
  const Subgroup h = covha::trivial_subgroup(z4);
  const auto ctx = covha::make_context(z4, h, covha::enumerate_characters(h)[0]);
  REQUIRE(covha::max_abs(covha::operator_matrix(ctx) - covha::Matrix::identity(4)) == 0.0);
  REQUIRE(covha::kernel_basis(ctx).rank == 0);
}

TEST_CASE("operator matrix is idempotent with trace and rank [G:H]") {
  std::deque<Group> storage;
  for (const auto& ctx : sample_contexts(storage)) {
    const covha::Matrix p = covha::operator_matrix(ctx);
    REQUIRE(covha::max_abs(p * p - p) < 1e-12);
    cplx trace{};
    for (int i = 0; i < p.rows; ++i) trace += p(i, i);
    REQUIRE(std::abs(trace - cplx{static_cast<double>(ctx.index()), 0.0}) < 1e-12);
    REQUIRE(covha::rank(p) == ctx.index());
    // Hermitian with respect to the uniform pairing.
    REQUIRE(covha::max_abs(p - covha::adjoint(p)) < 1e-14);
  }
}

TEST_CASE("covariant basis") {
  Z4Fixture fx;
  const auto basis = covha::covariant_basis(fx.ctx);
  REQUIRE(basis.rank == 2);
  REQUIRE(covha::sup_norm(basis.vectors[0] -
                          GroupFunction(fx.g, {cplx{1, 0}, cplx{}, cplx{-1, 0}, cplx{}})) <
          1e-15);
  REQUIRE(covha::sup_norm(basis.vectors[1] -
                          GroupFunction(fx.g, {cplx{}, cplx{1, 0}, cplx{}, cplx{-1, 0}})) <
          1e-15);

  // H = G with a nontrivial character: the single basis vector is x -> xi(x).
  const Group z4 = covha::cyclic_group(4);
  const Subgroup full = covha::full_subgroup(z4);
  auto chars = covha::enumerate_characters(full);
  const auto ctx_full = covha::make_context(z4, full, chars[1]);
  const auto b_full = covha::covariant_basis(ctx_full);
  REQUIRE(b_full.rank == 1);
  for (int x = 0; x < 4; ++x)
    REQUIRE(std::abs(b_full.vectors[0][x] - ctx_full.character.value(x)) < 1e-15);
}

TEST_CASE("image basis of the operator spans the covariant basis") {
  Z4Fixture fx;
  const auto cov = covha::covariant_basis(fx.ctx);
  const covha::Matrix p = covha::operator_matrix(fx.ctx);
  // Stack images of the deltas with the covariant basis; rank must stay [G:H].
  covha::Matrix stacked(4 + cov.rank, 4);
  for (int j = 0; j < 4; ++j)
    for (int x = 0; x < 4; ++x) stacked(j, x) = p(x, j);
  for (int i = 0; i < cov.rank; ++i)
    for (int x = 0; x < 4; ++x) stacked(4 + i, x) = cov.vectors[i][x];
  REQUIRE(covha::rank(stacked) == 2);
}

TEST_CASE("kernel basis spans the null space") {
  Z4Fixture fx;
  const auto kern = covha::kernel_basis(fx.ctx);
  REQUIRE(kern.rank == 2);
  for (const auto& v : kern.vectors)
    REQUIRE(covha::sup_norm(covha::average(fx.ctx, v)) < 1e-14);
  // The expected spanning vectors lie inside.
  covha::Matrix stacked(kern.rank + 2, 4);
  for (int i = 0; i < kern.rank; ++i)
    for (int x = 0; x < 4; ++x) stacked(i, x) = kern.vectors[i][x];
  stacked(kern.rank, 0) = 1;
  stacked(kern.rank, 2) = 1;
  stacked(kern.rank + 1, 1) = 1;
  stacked(kern.rank + 1, 3) = 1;
  REQUIRE(covha::rank(stacked) == 2);
}

TEST_CASE("translated-minus-scaled functions land in the kernel") {
  std::deque<Group> storage;
  covha::Rng rng(7);
  for (const auto& ctx : sample_contexts(storage)) {
    for (int it = 0; it < 10; ++it) {
      const GroupFunction f = covha::random_function(*ctx.group, rng);
      for (int j = 0; j < ctx.subgroup.order(); ++j) {
        const int h = ctx.subgroup.members[j];
        const GroupFunction gen =
            covha::translate_right(h, f) - ctx.character.values[j] * f;
        REQUIRE(covha::sup_norm(covha::average(ctx, gen)) < 1e-12);
      }
    }
  }
}

TEST_CASE("operator identities on random samples") {
  Z4Fixture fx;
  const auto rep = covha::check_identities(fx.ctx, 100, 42);
  REQUIRE(rep.right_intertwine < 1e-12);
  REQUIRE(rep.left_intertwine < 1e-12);
  REQUIRE(rep.selfadjoint < 1e-12);
  REQUIRE(rep.multiplier < 1e-12);
  REQUIRE(rep.seed == 42);
}

TEST_CASE("matrix-level intertwining is exhaustive") {
  std::deque<Group> storage;
  for (const auto& ctx : sample_contexts(storage)) {
    const auto rep = covha::intertwine_exhaustive(ctx);
    REQUIRE(rep.right < 1e-12);
    REQUIRE(rep.left < 1e-12);
  }
}

TEST_CASE("trivial character averages are constant on cosets") {
  const Group s3 = covha::symmetric_group(3);
  int three_cycle = -1;
  for (int x = 0; x < 6; ++x)
    if (s3.element_order(x) == 3) three_cycle = x;
  const Subgroup h = covha::subgroup_closure(s3, {three_cycle});
  const auto ctx = covha::make_context(s3, h, covha::enumerate_characters(h)[0]);
  covha::Rng rng(3);
  const GroupFunction tf = covha::average(ctx, covha::random_function(s3, rng));
  for (int x = 0; x < s3.order; ++x) {
    const int rep = ctx.cosets.representatives[ctx.cosets.coset_of[x]];
    REQUIRE(std::abs(tf[x] - tf[rep]) < 1e-14);
  }
}

TEST_CASE("contraction bounds") {
  Z4Fixture fx;
  // A covariant function is a fixed point, so the ratio reaches 1.
  const auto eq = covha::contraction_check(fx.ctx, 2.0, 50, 9);
  REQUIRE(eq.pass);
  covha::Rng rng(11);
  const GroupFunction psi = covha::random_covariant(fx.ctx, rng);
  const double n = covha::lp_norm(psi, 2.0, fx.ctx.lambda_G);
  REQUIRE(covha::lp_norm(covha::average(fx.ctx, psi), 2.0, fx.ctx.lambda_G) ==
          Catch::Approx(n).epsilon(1e-13));

  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const auto rep = covha::contraction_check(fx.ctx, p, 100, 13);
    REQUIRE(rep.bound == 1.0);
    REQUIRE(rep.max_ratio <= 1.0 + 1e-12);
  }

  const auto scaled_ctx = covha::make_context(
      fx.g, fx.ctx.subgroup, fx.ctx.character, fx.ctx.lambda_G,
      covha::haar_mass(fx.ctx.subgroup, 3.0));
  const auto rep3 = covha::contraction_check(scaled_ctx, 1.0, 100, 17);
  REQUIRE(rep3.bound == 3.0);
  REQUIRE(rep3.max_ratio <= 3.0 * (1.0 + 1e-12));
  REQUIRE(rep3.pass);
}

TEST_CASE("abelian resolution of the identity") {
  const Group z4 = covha::cyclic_group(4);
  const auto triv = covha::abelian_resolution_check(z4, covha::trivial_subgroup(z4), 20, 21);
  REQUIRE(triv.applicable);
  REQUIRE(triv.characters == 1);
  REQUIRE(triv.completeness_residual < 1e-15);

  const auto rep = covha::abelian_resolution_check(z4, covha::subgroup_closure(z4, {2}), 100, 23);
  REQUIRE(rep.applicable);
  REQUIRE(rep.characters == 2);
  REQUIRE(rep.pass);
  REQUIRE(rep.completeness_residual < 1e-12);

  const Group s3 = covha::symmetric_group(3);
  const auto bad = covha::abelian_resolution_check(s3, covha::full_subgroup(s3), 10, 25);
  REQUIRE_FALSE(bad.applicable);
}

TEST_CASE("left convolution preserves covariance") {
  std::deque<Group> storage;
  covha::Rng rng(27);
  for (const auto& ctx : sample_contexts(storage)) {
    for (int it = 0; it < 10; ++it) {
      const GroupFunction f = covha::random_function(*ctx.group, rng);
      const GroupFunction psi = covha::random_covariant(ctx, rng);
      REQUIRE(covha::covariance_residual(ctx, covha::convolve(f, psi, ctx.lambda_G)) < 1e-10);
    }
  }
}

TEST_CASE("covariant functions satisfy the compact-group norm inclusion") {
  std::deque<Group> storage;
  covha::Rng rng(29);
  for (const auto& ctx : sample_contexts(storage)) {
    const double mass = ctx.lambda_G.total_mass();
    for (int it = 0; it < 10; ++it) {
      const GroupFunction psi = covha::random_covariant(ctx, rng);
      for (double p : {1.5, 2.0, 3.0}) {
        const double rhs = std::pow(mass, (p - 1.0) / p) * covha::lp_norm(psi, p, ctx.lambda_G);
        REQUIRE(covha::lp_norm(psi, 1.0, ctx.lambda_G) <= rhs + 1e-12);
      }
    }
  }
}

TEST_CASE("context validation") {
  const Group z4 = covha::cyclic_group(4);
  const Group z6 = covha::cyclic_group(6);
  const Subgroup h = covha::subgroup_closure(z4, {2});
  auto chars = covha::enumerate_characters(h);
  REQUIRE_THROWS_AS(covha::make_context(z6, h, chars[0]), std::invalid_argument);
  const auto ctx = covha::make_context(z4, h, chars[0]);
  REQUIRE_THROWS_AS(covha::average(ctx, GroupFunction(z6)), std::invalid_argument);
}
