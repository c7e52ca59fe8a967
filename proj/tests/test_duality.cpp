#include <catch2/catch_amalgamated.hpp>

#include <deque>

#include "covha/duality.hpp"
#include "covha/quotient.hpp"

using covha::cplx;
using covha::CovariantContext;
using covha::Group;
using covha::GroupFunction;
using covha::Subgroup;

namespace {

CovariantContext named_context(std::deque<Group>& storage, const char* which) {
  if (std::string(which) == "z4") {
    storage.push_back(covha::cyclic_group(4));
    const Group& g = storage.back();
    auto chars = covha::enumerate_characters(covha::subgroup_closure(g, {2}));
    return covha::make_context(g, covha::subgroup_closure(g, {2}), std::move(chars[1]));
  }
  storage.push_back(covha::symmetric_group(3));
  const Group& g = storage.back();
  int three_cycle = -1;
  for (int x = 0; x < 6; ++x)
    if (g.element_order(x) == 3) three_cycle = x;
  const Subgroup h = covha::subgroup_closure(g, {three_cycle});
  auto chars = covha::enumerate_characters(h);
  return covha::make_context(g, h, std::move(chars[1]));
}

}  // namespace

TEST_CASE("conjugate exponents") {
  REQUIRE(covha::conjugate_exponent(2.0) == 2.0);
  REQUIRE(covha::conjugate_exponent(1.5) == 3.0);
  REQUIRE(std::isinf(covha::conjugate_exponent(1.0)));
  REQUIRE_THROWS_AS(covha::conjugate_exponent(0.5), std::invalid_argument);
}

TEST_CASE("adjoint of the average acts on representers") {
  std::deque<Group> storage;
  const auto ctx = named_context(storage, "z4");

  // Zero representer: both functionals vanish identically.
  const covha::DualFunctional zero{GroupFunction(*ctx.group), ctx.lambda_G, 2.0};
  covha::Rng rng(3);
  REQUIRE(std::abs(zero(covha::random_function(*ctx.group, rng))) == 0.0);

  const auto rep = covha::adjoint_check(ctx, 2.0, 100, 42);
  REQUIRE(rep.max_residual < 1e-12);
  const auto rep15 = covha::adjoint_check(ctx, 1.5, 100, 43);
  REQUIRE(rep15.max_residual < 1e-12);
}

TEST_CASE("annihilator of the zero kernel is everything") {
  std::deque<Group> storage;
  storage.push_back(covha::cyclic_group(4));
  const Group& g = storage.back();
  const Subgroup triv = covha::trivial_subgroup(g);
  const auto ctx = covha::make_context(g, triv, covha::enumerate_characters(triv)[0]);
  const auto kern = covha::kernel_basis(ctx);
  REQUIRE(kern.rank == 0);
  const auto ann = covha::annihilator(kern, ctx.lambda_G, g);
  REQUIRE(ann.rank == g.order);
}

TEST_CASE("annihilator of the averaging kernel on Z2 is the constants") {
  std::deque<Group> storage;
  storage.push_back(covha::cyclic_group(2));
  const Group& g = storage.back();
  const Subgroup full = covha::full_subgroup(g);
  const auto ctx = covha::make_context(g, full, covha::enumerate_characters(full)[0]);
  const auto kern = covha::kernel_basis(ctx);
  REQUIRE(kern.rank == 1);  // span{(1, -1)}
  const auto ann = covha::annihilator(kern, ctx.lambda_G, g);
  REQUIRE(ann.rank == 1);
  REQUIRE(std::abs(ann.vectors[0][0] - ann.vectors[0][1]) < 1e-14);
  REQUIRE_THROWS_AS(covha::annihilator(covha::covariant_basis(ctx), ctx.lambda_G, g),
                    std::invalid_argument);
}

TEST_CASE("annihilator vectors pair to zero against the kernel") {
  std::deque<Group> storage;
  const auto ctx = named_context(storage, "s3");
  const auto kern = covha::kernel_basis(ctx);
  const auto ann = covha::annihilator(kern, ctx.lambda_G, *ctx.group);
  REQUIRE(ann.rank == ctx.index());
  for (const auto& v : kern.vectors)
    for (const auto& g : ann.vectors)
      REQUIRE(std::abs(covha::pairing(v, g, ctx.lambda_G)) < 1e-12);
}

TEST_CASE("duality subspace identification") {
  std::deque<Group> storage;
  for (const char* which : {"z4", "s3"}) {
    const auto ctx = named_context(storage, which);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      const auto rep = covha::verify_duality(ctx, p, 50, 42);
      INFO(which << " p=" << p);
      REQUIRE(rep.subspace_equal);
      REQUIRE(rep.annihilator_rank == ctx.index());
      REQUIRE(rep.covariant_rank == ctx.index());
      REQUIRE(rep.stacked_rank == ctx.index());
      REQUIRE(rep.annihilator_covariance_residual < 1e-12);
      REQUIRE(rep.weil_chain_residual < 1e-12);
      REQUIRE(rep.weil_vanishing_residual < 1e-12);
      REQUIRE(rep.pass);
      if (p == 1.0) REQUIRE(std::isinf(rep.q));
    }
  }
}

TEST_CASE("trivial subgroup gives the whole space on both sides") {
  std::deque<Group> storage;
  storage.push_back(covha::cyclic_group(4));
  const Group& g = storage.back();
  const Subgroup triv = covha::trivial_subgroup(g);
  const auto ctx = covha::make_context(g, triv, covha::enumerate_characters(triv)[0]);
  const auto rep = covha::verify_duality(ctx, 2.0, 20, 7);
  REQUIRE(rep.annihilator_rank == g.order);
  REQUIRE(rep.covariant_rank == g.order);
  REQUIRE(rep.subspace_equal);
  REQUIRE(rep.pass);
}

TEST_CASE("functional norm on the covariant subspace equals |T g|_2") {
  std::deque<Group> storage;
  for (const char* which : {"z4", "s3"}) {
    const auto ctx = named_context(storage, which);
    covha::Rng rng(11);
    for (int it = 0; it < 20; ++it) {
      const GroupFunction g = covha::random_function(*ctx.group, rng);
      const double lhs = covha::functional_norm_on_covariant(ctx, g);
      const double rhs = covha::lp_norm(covha::average(ctx, g), 2.0, ctx.lambda_G);
      REQUIRE(lhs == Catch::Approx(rhs).margin(1e-10));
    }
  }
}
