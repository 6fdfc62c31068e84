#include <hochkit/catalog.hpp>

#include <gtest/gtest.h>

using namespace hochkit;
using Q = RationalField;
using M = DenseMatrix<mpq_class>;

TEST(ValidateGroup, Examples) {
  EXPECT_TRUE(validate_group({2, {0, 1, 1, 0}, 0}).ok());
  const auto r = validate_group({2, {0, 1, 1, 1}, 0});
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.failure, GroupReport::Failure::inverse);
  EXPECT_EQ(r.witness, std::vector<std::size_t>{1});
  const auto s3 = GroupTable::symmetric(3);
  EXPECT_TRUE(validate_group({s3.order(), s3.table(), s3.identity()}).ok());
}

TEST(ValidateGroup, ShapeIdentityAndAssociativityFailures) {
  EXPECT_EQ(validate_group({2, {0, 1, 1}, 0}).failure, GroupReport::Failure::shape);
  EXPECT_EQ(validate_group({2, {0, 1, 1, 2}, 0}).failure, GroupReport::Failure::shape);
  EXPECT_EQ(validate_group({2, {0, 1, 1, 0}, 1}).failure, GroupReport::Failure::identity);
  // A Latin square with identity 0 that is not associative (order 5 loop).
  const std::vector<std::size_t> loop = {0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  const auto r = validate_group({5, loop, 0});
  EXPECT_EQ(r.failure, GroupReport::Failure::associativity);
  ASSERT_EQ(r.witness.size(), 3u);
  auto mul = [&](std::size_t a, std::size_t b) { return loop[a * 5 + b]; };
  EXPECT_NE(mul(mul(r.witness[0], r.witness[1]), r.witness[2]), mul(r.witness[0], mul(r.witness[1], r.witness[2])));
  EXPECT_THROW(GroupTable({5, loop, 0}), GroupError);
}

TEST(GroupTable, InversesAndSymmetricComposition) {
  const auto s3 = GroupTable::symmetric(3);
  EXPECT_EQ(s3.order(), 6u);
  for (std::size_t a = 0; a < 6; ++a) EXPECT_EQ(s3.multiply(a, s3.inverse(a)), s3.identity());
  // S3 is not abelian
  bool abelian = true;
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) abelian = abelian && s3.multiply(a, b) == s3.multiply(b, a);
  EXPECT_FALSE(abelian);
}

TEST(Subgroups, Examples) {
  const auto z2 = enumerate_subgroups(GroupTable::cyclic(2));
  ASSERT_EQ(z2.size(), 2u);
  EXPECT_EQ(z2[0].elements, std::vector<std::size_t>{0});
  EXPECT_EQ(z2[1].elements, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(enumerate_subgroups(GroupTable::cyclic(4)).size(), 3u);
  EXPECT_EQ(enumerate_subgroups(GroupTable::symmetric(3)).size(), 6u);
  EXPECT_EQ(enumerate_subgroups(GroupTable::symmetric(4)).size(), 30u);
  EXPECT_EQ(enumerate_subgroups(GroupTable::cyclic(12)).size(), 6u);
}

TEST(Subgroups, ClosedOrderedAndLagrange) {
  for (const auto& g : {GroupTable::symmetric(3), GroupTable::cyclic(6), GroupTable::symmetric(4)}) {
    const auto subs = enumerate_subgroups(g);
    for (std::size_t k = 0; k < subs.size(); ++k) {
      EXPECT_TRUE(is_subgroup(g, subs[k]));
      EXPECT_EQ(g.order() % subs[k].size(), 0u);
      if (k > 0) {
        const auto& p = subs[k - 1];
        EXPECT_TRUE(p.size() < subs[k].size() || (p.size() == subs[k].size() && p.elements < subs[k].elements));
      }
    }
  }
}

TEST(Subgroups, RefusesLargeGroups) {
  EXPECT_THROW(enumerate_subgroups(GroupTable::symmetric(5)), GroupError);
  EXPECT_EQ(enumerate_subgroups(GroupTable::cyclic(30), 30).size(), 8u);
}

TEST(ValidateAction, CuspSignActionIsValid) {
  const auto cusp = make_truncated_cusp(4);
  ActionCandidate<Q> act{cusp.action->matrices(), std::nullopt};
  EXPECT_TRUE(validate_action(cusp.algebra, cusp.action->group(), act).ok());
}

TEST(ValidateAction, ScalarTwoFailsComposition) {
  const auto cusp = make_truncated_cusp(4);
  const M id = M::identity(8, mpq_class(1));
  M two = id;
  for (std::size_t i = 0; i < 8; ++i) two(i, i) = 2;
  const auto r = validate_action(cusp.algebra, GroupTable::cyclic(2), ActionCandidate<Q>{{id, two}, std::nullopt});
  EXPECT_EQ(r.condition, 2);
  EXPECT_EQ(r.failure, ActionReport::Failure::composition);
  EXPECT_EQ(r.witness, (std::vector<std::size_t>{1, 1}));
}

TEST(ValidateAction, SwapOnDualNumbersFailsEquivariance) {
  const auto dual = make_dual_numbers().algebra;
  M swap(2, 2);
  swap(0, 1) = swap(1, 0) = 1;
  const auto r =
      validate_action(dual, GroupTable::cyclic(2), ActionCandidate<Q>{{M::identity(2, mpq_class(1)), swap}, std::nullopt});
  EXPECT_EQ(r.condition, 4);
  EXPECT_EQ(r.witness[0], 1u);
  EXPECT_THROW(ActionRep<Q>(dual, GroupTable::cyclic(2), ActionCandidate<Q>{{M::identity(2, mpq_class(1)), swap}, std::nullopt}),
               GroupError);
}

TEST(ValidateAction, IdentityAndShape) {
  const auto dual = make_dual_numbers().algebra;
  M neg = M::identity(2, mpq_class(1));
  neg(1, 1) = -1;
  const auto r = validate_action(dual, GroupTable::cyclic(2), ActionCandidate<Q>{{neg, neg}, std::nullopt});
  EXPECT_EQ(r.condition, 1);
  EXPECT_EQ(r.failure, ActionReport::Failure::identity);
  EXPECT_EQ(validate_action(dual, GroupTable::cyclic(1), ActionCandidate<Q>{{neg, neg}, std::nullopt}).failure,
            ActionReport::Failure::shape);
  EXPECT_EQ(validate_action(dual, GroupTable::cyclic(1), ActionCandidate<Q>{{M(3, 3)}, std::nullopt}).failure,
            ActionReport::Failure::shape);
}

TEST(ActionRep, InverseMatricesMatchGroupInverses) {
  for (const auto* name : {"matrix_3", "function_s3", "function_z3", "cusp_m5"}) {
    const auto e = make_catalog_entry(name);
    const auto& act = *e.action;
    const auto& g = act.group();
    for (std::size_t x = 0; x < g.order(); ++x) {
      EXPECT_EQ(act.phi(g.inverse(x)), act.phi_inverse(x)) << name;
      EXPECT_EQ(act.phi(x) * act.phi_inverse(x), M::identity(e.algebra.dim(), mpq_class(1)));
    }
  }
}

TEST(ActionRep, HomomorphismRoundTrip) {
  // Rebuild ψ(g) = φ_g and re-validate it as a homomorphism into automorphisms.
  for (const auto* name : {"matrix_2", "matrix_3", "function_s3", "cusp_m4", "dual_numbers_z2"}) {
    const auto e = make_catalog_entry(name);
    const auto& act = *e.action;
    std::vector<M> psi;
    for (std::size_t x = 0; x < act.group().order(); ++x) psi.push_back(act.phi(x));
    EXPECT_TRUE(validate_action(e.algebra, act.group(), ActionCandidate<Q>{psi, std::nullopt}).ok());
    for (std::size_t x = 0; x < act.group().order(); ++x)
      for (std::size_t i = 0; i < e.algebra.dim(); ++i)
        for (std::size_t j = 0; j < e.algebra.dim(); ++j) {
          const auto gi = psi[x].apply(e.algebra.basis_vector(i));
          const auto gj = psi[x].apply(e.algebra.basis_vector(j));
          EXPECT_EQ(e.algebra.multiply(gi, gj), psi[x].apply(e.algebra.multiply(e.algebra.basis_vector(i), e.algebra.basis_vector(j))));
        }
  }
}

TEST(ValidateAction, ModuleActionChecks) {
  // Dual numbers with x -> -x acting on the augmentation module k (trivially).
  const auto dual = make_dual_numbers(true);
  const M one = M::identity(1, mpq_class(1));
  const M zero(1, 1);
  const Bimodule<Q> k(1, {one, zero}, {one, zero});
  const auto& g = dual.action->group();
  ActionCandidate<Q> ok{dual.action->matrices(), std::vector<M>{one, one}};
  EXPECT_TRUE(validate_action(dual.algebra, g, ok, &k).ok());
  M minus(1, 1);
  minus(0, 0) = -1;
  ActionCandidate<Q> also_ok{dual.action->matrices(), std::vector<M>{one, minus}};
  EXPECT_TRUE(validate_action(dual.algebra, g, also_ok, &k).ok());
  M two(1, 1);
  two(0, 0) = 2;
  ActionCandidate<Q> bad{dual.action->matrices(), std::vector<M>{one, two}};
  EXPECT_EQ(validate_action(dual.algebra, g, bad, &k).failure, ActionReport::Failure::module_composition);
  EXPECT_EQ(validate_action(dual.algebra, g, ok, static_cast<const Bimodule<Q>*>(nullptr)).failure, ActionReport::Failure::shape);
}
