#include <catch2/catch_amalgamated.hpp>

#include "covha/character.hpp"
#include "covha/group.hpp"
#include "oracles.hpp"

using covha::Character;
using covha::cplx;
using covha::Group;
using covha::Subgroup;

namespace {

void check_against_brute_force(const Subgroup& h) {
  const auto enumerated = covha::enumerate_characters(h);
  const auto brute = oracles::brute_force_characters(h);
  REQUIRE(enumerated.size() == brute.size());
  for (const Character& chi : enumerated) {
    bool matched = false;
    for (const auto& cand : brute) {
      double diff = 0.0;
      for (int i = 0; i < h.order(); ++i) diff = std::max(diff, std::abs(chi.values[i] - cand[i]));
      if (diff <= 1e-9) {
        matched = true;
        break;
      }
    }
    REQUIRE(matched);
  }
}

}  // namespace

TEST_CASE("abelianization of abelian, symmetric and quaternion subgroups") {
  const Group z4 = covha::cyclic_group(4);
  const auto ab_z4 = covha::abelianization(covha::full_subgroup(z4));
  REQUIRE(ab_z4.quotient.order == 4);
  REQUIRE(ab_z4.invariant_factors == std::vector<int>{4});
  REQUIRE(ab_z4.commutator_members == std::vector<int>{0});

  const Group s3 = covha::symmetric_group(3);
  const auto ab_s3 = covha::abelianization(covha::full_subgroup(s3));
  REQUIRE(ab_s3.quotient.order == 2);
  REQUIRE(ab_s3.invariant_factors == std::vector<int>{2});
  REQUIRE(ab_s3.commutator_members.size() == 3);  // the 3-cycles plus identity

  const Group q8 = covha::quaternion_group();
  const auto ab_q8 = covha::abelianization(covha::full_subgroup(q8));
  REQUIRE(ab_q8.quotient.order == 4);
  REQUIRE(ab_q8.invariant_factors == std::vector<int>{2, 2});
  REQUIRE(ab_q8.commutator_members == std::vector<int>{0, 1});  // {1, -1}
}

TEST_CASE("character count and ordering") {
  const Group z4 = covha::cyclic_group(4);
  const Subgroup h2 = covha::subgroup_closure(z4, {2});
  const auto duals2 = covha::enumerate_characters(h2);
  REQUIRE(duals2.size() == 2);
  REQUIRE(duals2[0].trivial());
  REQUIRE(std::abs(duals2[1].value(2) - cplx{-1.0, 0.0}) < 1e-15);

  const auto duals4 = covha::enumerate_characters(covha::full_subgroup(z4));
  REQUIRE(duals4.size() == 4);
  REQUIRE(duals4[0].trivial());
  // The four characters take the four distinct fourth roots of unity at the generator.
  std::vector<cplx> at_gen;
  for (const auto& chi : duals4) at_gen.push_back(chi.value(1));
  for (const cplx target : {cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}}) {
    bool present = false;
    for (const cplx v : at_gen) present = present || std::abs(v - target) < 1e-12;
    REQUIRE(present);
  }

  const Group s3 = covha::symmetric_group(3);
  const auto s3_chars = covha::enumerate_characters(covha::full_subgroup(s3));
  REQUIRE(s3_chars.size() == 2);
  for (int x = 0; x < s3.order; ++x) {
    const double expected = s3.element_order(x) == 2 ? -1.0 : 1.0;
    REQUIRE(std::abs(s3_chars[1].value(x) - expected) < 1e-15);
  }
}

TEST_CASE("enumeration is deterministic") {
  const Group q8 = covha::quaternion_group();
  const auto a = covha::enumerate_characters(covha::full_subgroup(q8));
  const auto b = covha::enumerate_characters(covha::full_subgroup(q8));
  REQUIRE(a.size() == 4);
  for (size_t i = 0; i < a.size(); ++i) REQUIRE(a[i].exponents == b[i].exponents);
}

TEST_CASE("every enumerated character is a character") {
  for (const Group& g : {covha::cyclic_group(6), covha::dihedral_group(4),
                         covha::quaternion_group(), covha::symmetric_group(4)}) {
    for (int x = 0; x < g.order; ++x) {
      const Subgroup h = covha::subgroup_closure(g, {x});
      for (const auto& chi : covha::enumerate_characters(h)) {
        REQUIRE(covha::is_character(h, chi.values));
        for (const cplx& v : chi.values) REQUIRE(std::abs(std::abs(v) - 1.0) < 1e-15);
        REQUIRE(std::abs(chi.value(g.identity) - cplx{1.0, 0.0}) < 1e-15);
      }
    }
  }
}

TEST_CASE("character count equals the abelianization order") {
  for (const Group& g : {covha::cyclic_group(6), covha::quaternion_group(),
                         covha::symmetric_group(4), covha::dihedral_group(4)}) {
    const Subgroup h = covha::full_subgroup(g);
    const auto ab = covha::abelianization(h);
    const auto chars = covha::enumerate_characters(h);
    REQUIRE(static_cast<int>(chars.size()) == ab.quotient.order);
    REQUIRE(static_cast<int>(chars.size() * ab.commutator_members.size()) == h.order());
    if (g.is_abelian()) REQUIRE(static_cast<int>(chars.size()) == g.order);
  }
}

TEST_CASE("orthogonality of distinct characters") {
  for (const Group& g : {covha::cyclic_group(6), covha::quaternion_group(),
                         covha::dihedral_group(4)}) {
    const Subgroup h = covha::full_subgroup(g);
    const auto lh = covha::haar_probability(h);
    const auto chars = covha::enumerate_characters(h);
    for (size_t i = 0; i < chars.size(); ++i)
      for (size_t j = 0; j < chars.size(); ++j) {
        cplx acc{};
        for (int s = 0; s < h.order(); ++s)
          acc += chars[i].values[s] * std::conj(chars[j].values[s]) * lh.weight;
        const cplx expected = i == j ? cplx{1.0, 0.0} : cplx{};
        REQUIRE(std::abs(acc - expected) < 1e-12);
      }
  }
}

TEST_CASE("enumeration agrees with brute-force homomorphism search") {
  check_against_brute_force(covha::full_subgroup(covha::cyclic_group(4)));
  check_against_brute_force(covha::full_subgroup(covha::cyclic_group(6)));
  check_against_brute_force(covha::full_subgroup(covha::symmetric_group(3)));
  check_against_brute_force(covha::full_subgroup(covha::quaternion_group()));
  check_against_brute_force(covha::full_subgroup(covha::dihedral_group(4)));
  const Group z2z4 =
      covha::direct_product(covha::cyclic_group(2), covha::cyclic_group(4));
  check_against_brute_force(covha::full_subgroup(z2z4));
}

TEST_CASE("invariant factors of Z2 x Z4") {
  const Group g = covha::direct_product(covha::cyclic_group(2), covha::cyclic_group(4));
  const auto ab = covha::abelianization(covha::full_subgroup(g));
  REQUIRE(ab.invariant_factors == std::vector<int>{2, 4});
}

TEST_CASE("is_character rejects non-homomorphisms") {
  const Group z4 = covha::cyclic_group(4);
  const Subgroup h = covha::full_subgroup(z4);
  REQUIRE(covha::is_character(h, {cplx{1, 0}, cplx{1, 0}, cplx{1, 0}, cplx{1, 0}}));
  REQUIRE(covha::is_character(h, {cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}}));
  REQUIRE_FALSE(covha::is_character(h, {cplx{1, 0}, cplx{1, 0}, cplx{-1, 0}, cplx{1, 0}}));
  REQUIRE_FALSE(covha::is_character(h, {cplx{1, 0}, cplx{2, 0}, cplx{1, 0}, cplx{2, 0}}));
  REQUIRE_THROWS_AS(covha::is_character(h, {cplx{1, 0}}), std::invalid_argument);
}
