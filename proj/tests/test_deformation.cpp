#include <hochkit/catalog.hpp>
#include <hochkit/deformation.hpp>
#include <hochkit/random.hpp>

#include <gtest/gtest.h>

using namespace hochkit;
using Q = RationalField;
using C = Cochain<mpq_class>;
using Jet = DeformationJet<Q>;

namespace {

// k[x,y]/(x,y)², basis (1, x, y).
Algebra<Q> square_zero_plane() {
  const mpq_class one(1);
  return Algebra<Q>(Q{}, {"1", "x", "y"}, {{0, 0, 0, one}, {0, 1, 1, one}, {0, 2, 2, one}, {1, 0, 1, one}, {2, 0, 2, one}});
}

// m1(x,x) = y, m1(x,y) = x, zero elsewhere.
C obstructed_m1() {
  C m1 = C::zero(2, 3, 3);
  m1.at(2, std::vector<std::size_t>{1, 1}) = 1;
  m1.at(1, std::vector<std::size_t>{1, 2}) = 1;
  return m1;
}

// x·x ↦ t: m1(x,x) = 1.
C dual_m1() {
  C m1 = C::zero(2, 2, 2);
  m1.at(0, std::vector<std::size_t>{1, 1}) = 1;
  return m1;
}

C neg(C c) {
  for (auto& v : c.coefficients) v = -v;
  return c;
}

C minus(C a, const C& b) {
  for (std::size_t i = 0; i < a.coefficients.size(); ++i) a.coefficients[i] -= b.coefficients[i];
  return a;
}

}  // namespace

TEST(Residual, OrderZeroIsAssociativity) {
  for (const auto* name : {"cusp_m4", "matrix_2", "function_s3"}) {
    const auto c = make_catalog_entry(name).complex();
    EXPECT_TRUE(Jet::zero(c, 2).residual(0).is_zero_cochain()) << name;
  }
}

TEST(Residual, OrderOneIsMinusCoboundary) {
  std::mt19937_64 rng(41);
  for (const auto* name : {"cusp_m4", "dual_numbers", "matrix_2"}) {
    const auto c = make_catalog_entry(name).complex();
    for (int t = 0; t < 5; ++t) {
      const auto m1 = random_invariant_cochain(c, 2, rng);
      const Jet jet(c, {m1});
      EXPECT_EQ(jet.residual(1).coefficients, neg(c.coboundary(m1)).coefficients) << name;
      EXPECT_EQ(jet.fully_verified(), c.coboundary(m1).is_zero_cochain());
    }
  }
  const auto cusp = make_truncated_cusp(4);
  const Jet jet(cusp.complex(), {cusp.seeds.at("m1")});
  EXPECT_TRUE(jet.residual(1).is_zero_cochain());
  EXPECT_THROW(jet.residual(2), DeformationError);
}

TEST(Jet, RejectsBadCoefficients) {
  const auto c = make_dual_numbers(true).complex();
  C bad = C::zero(2, 2, 2);
  bad.at(1, std::vector<std::size_t>{0, 0}) = 1;  // 1·1 ↦ x breaks the sign symmetry
  EXPECT_THROW(Jet(c, {bad}), InvarianceError);
  EXPECT_THROW(Jet(c, {C::zero(1, 2, 2)}), DeformationError);
  const auto k = make_dual_numbers().algebra;
  using M = DenseMatrix<mpq_class>;
  const M one = M::identity(1, mpq_class(1)), zero(1, 1);
  EXPECT_THROW(Jet(HochschildComplex<Q>(k, Bimodule<Q>(1, {one, zero}, {one, zero})), {}), DeformationError);
}

TEST(Obstruction, Examples) {
  const auto cusp = make_truncated_cusp(4);
  const Jet jet(cusp.complex(), {cusp.seeds.at("m1")});
  const auto o = obstruction(jet);
  EXPECT_EQ(o.order, 2u);
  EXPECT_TRUE(o.cocycle);
  EXPECT_TRUE(o.vanishes());
  // m1(m1(y,y), y) = m1(x², y) = 0 and likewise on the other side.
  EXPECT_TRUE(o.cochain.is_zero_cochain());

  const auto base = HochschildComplex<Q>::regular(square_zero_plane());
  ASSERT_TRUE(validate_algebra(base.algebra()).ok);
  ASSERT_TRUE(base.coboundary(obstructed_m1()).is_zero_cochain());
  const auto ob = obstruction(Jet(base, {obstructed_m1()}));
  EXPECT_TRUE(ob.cocycle);
  EXPECT_FALSE(ob.vanishes());
  EXPECT_EQ(ob.classification.kind, CochainClass::nontrivial);
  EXPECT_EQ(ob.cochain.at(1, std::vector<std::size_t>{1, 1, 1}), -1);

  // An unverified jet has no obstruction.
  const auto c = make_dual_numbers().complex();
  C notcocycle = C::zero(2, 2, 2);
  notcocycle.at(0, std::vector<std::size_t>{0, 0}) = 1;
  EXPECT_THROW(obstruction(Jet(c, {notcocycle})), DeformationError);
}

TEST(Lift, Examples) {
  const auto cusp = make_truncated_cusp(4);
  const auto c = cusp.complex();
  const auto r = lift(c, cusp.seeds.at("m1"), 3);
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.jet.order(), 3u);
  EXPECT_EQ(r.jet.m(1), cusp.seeds.at("m1"));
  EXPECT_TRUE(r.jet.m(2).is_zero_cochain());
  EXPECT_TRUE(r.jet.m(3).is_zero_cochain());
  EXPECT_EQ(r.stages.size(), 2u);

  const auto dual = make_dual_numbers().complex();
  const auto rd = lift(dual, dual_m1(), 2);
  ASSERT_TRUE(rd.ok());
  EXPECT_TRUE(rd.jet.m(2).is_zero_cochain());

  const auto z = lift(c, C::zero(2, 8, 8), 5);
  ASSERT_TRUE(z.ok());
  EXPECT_EQ(z.jet.order(), 5u);
  for (std::size_t i = 1; i <= 5; ++i) EXPECT_TRUE(z.jet.m(i).is_zero_cochain());

  EXPECT_THROW(lift(c, cusp.seeds.at("m1"), 0), DeformationError);
}

TEST(Lift, RejectsNonCocycleAndNonInvariant) {
  const auto c = make_dual_numbers(true).complex();
  C f = C::zero(2, 2, 2);
  f.at(0, std::vector<std::size_t>{0, 0}) = 1;  // invariant, not a cocycle
  EXPECT_THROW(lift(c, f, 2), DeformationError);
  C g = C::zero(2, 2, 2);
  g.at(1, std::vector<std::size_t>{0, 0}) = 1;
  EXPECT_THROW(lift(c, g, 2), InvarianceError);
}

TEST(Lift, ObstructedAtOrderTwo) {
  const auto base = HochschildComplex<Q>::regular(square_zero_plane());
  const auto r = lift(base, obstructed_m1(), 4);
  EXPECT_FALSE(r.ok());
  ASSERT_TRUE(r.failed_order.has_value());
  EXPECT_EQ(*r.failed_order, 2u);
  EXPECT_EQ(r.jet.order(), 1u);
  ASSERT_EQ(r.stages.size(), 1u);
  EXPECT_FALSE(r.stages[0].vanishes());
}

TEST(Lift, RigidAlgebraAlwaysExtends) {
  std::mt19937_64 rng(42);
  for (const auto* name : {"matrix_2", "function_s3"}) {
    const auto c = make_catalog_entry(name).complex();
    for (int t = 0; t < 3; ++t) {
      const auto m1 = c.coboundary(random_invariant_cochain(c, 1, rng));
      const auto r = lift(c, m1, 3);
      ASSERT_TRUE(r.ok()) << name;
      EXPECT_TRUE(r.jet.fully_verified());
      for (std::size_t k = 0; k <= 3; ++k) EXPECT_TRUE(r.jet.residual(k).is_zero_cochain());
    }
  }
}

TEST(Lift, StagesAreCocyclesAndVanishExactlyWhenCoboundary) {
  std::mt19937_64 rng(43);
  std::vector<std::pair<HochschildComplex<Q>, C>> cases;
  const auto cusp = make_truncated_cusp(4);
  cases.emplace_back(cusp.complex(), cusp.seeds.at("m1"));
  const auto m2 = make_matrix_algebra(2).complex();
  cases.emplace_back(m2, m2.coboundary(random_invariant_cochain(m2, 1, rng)));
  const auto dz = make_dual_numbers(true).complex();
  cases.emplace_back(dz, dz.cohomology(2, true).representatives.at(0));
  const auto plane = HochschildComplex<Q>::regular(square_zero_plane());
  cases.emplace_back(plane, obstructed_m1());
  // Random cocycle on the cusp: a combination of cohomology representatives and a coboundary.
  {
    const auto c = cusp.complex();
    auto x = c.coboundary(random_invariant_cochain(c, 1, rng));
    for (const auto& rep : c.cohomology(2, true).representatives) {
      const mpq_class s(static_cast<long>(rng() % 3) - 1);
      for (std::size_t i = 0; i < x.coefficients.size(); ++i) x.coefficients[i] += s * rep.coefficients[i];
    }
    cases.emplace_back(c, x);
  }
  for (const auto& [c, m1] : cases) {
    const auto r = lift(c, m1, 3);
    for (const auto& st : r.stages) {
      EXPECT_TRUE(st.cocycle);
      EXPECT_TRUE(c.coboundary(st.cochain).is_zero_cochain());
      EXPECT_EQ(st.vanishes(), c.classify(st.cochain, true).kind == CochainClass::coboundary);
    }
    EXPECT_EQ(r.ok(), r.stages.empty() || r.stages.back().vanishes());
    for (std::size_t k = 0; k <= r.jet.order(); ++k) EXPECT_TRUE(r.jet.residual(k).is_zero_cochain());
  }
}

TEST(EquivalenceObstruction, FirstOrderIsDifferenceOfInfinitesimals) {
  std::mt19937_64 rng(44);
  const auto cusp = make_truncated_cusp(4);
  const auto c = cusp.complex();
  const auto m1 = cusp.seeds.at("m1");
  const auto psi = random_invariant_cochain(c, 1, rng);
  auto n1 = m1;
  const auto dpsi = c.coboundary(psi);
  for (std::size_t i = 0; i < n1.coefficients.size(); ++i) n1.coefficients[i] += dpsi.coefficients[i];
  const Jet m(c, {m1}), n(c, {n1});
  const auto o = equivalence_obstruction(m, n, {});
  EXPECT_EQ(o.order, 1u);
  EXPECT_EQ(o.degree, 2u);
  EXPECT_EQ(o.cochain.coefficients, minus(m1, n1).coefficients);
  EXPECT_TRUE(o.vanishes());

  const auto dual = make_dual_numbers().complex();
  const auto od = equivalence_obstruction(Jet(dual, {dual_m1()}), Jet::zero(dual, 1), {});
  EXPECT_FALSE(od.vanishes());
  EXPECT_EQ(od.classification.kind, CochainClass::nontrivial);
}

TEST(FindEquivalence, Examples) {
  const auto dual = make_dual_numbers().complex();
  const Jet a(dual, {dual_m1(), C::zero(2, 2, 2)});
  const auto self = find_equivalence(a, a, 2);
  ASSERT_TRUE(self.ok());
  for (const auto& p : self.iso->psi) EXPECT_TRUE(p.is_zero_cochain());

  const auto vs_zero = find_equivalence(a, Jet::zero(dual, 2), 2);
  EXPECT_FALSE(vs_zero.ok());
  EXPECT_EQ(vs_zero.failed_order, std::optional<std::size_t>(1));

  // x² = t² is not isomorphic to the trivial deformation mod t³: the order-2
  // class survives every choice of ψ₁.
  const Jet late(dual, {C::zero(2, 2, 2), dual_m1()});
  const auto r2 = find_equivalence(late, Jet::zero(dual, 2), 2);
  EXPECT_FALSE(r2.ok());
  EXPECT_EQ(r2.failed_order, std::optional<std::size_t>(2));

  // Jets over different algebras or not verified far enough are refused.
  const auto m2 = make_matrix_algebra(2).complex();
  EXPECT_THROW(find_equivalence(a, Jet::zero(m2, 2), 1), DeformationError);
  EXPECT_THROW(find_equivalence(a, a, 3), DeformationError);
}

TEST(Conjugate, ProducesEquivalentJets) {
  std::mt19937_64 rng(45);
  for (const auto* name : {"cusp_m4", "dual_numbers_z2", "matrix_2"}) {
    const auto e = make_catalog_entry(name);
    const auto c = e.complex();
    const auto m1 = e.seeds.count("m1") ? e.seeds.at("m1") : c.coboundary(random_invariant_cochain(c, 1, rng));
    const auto m = lift(c, m1, 3).jet;
    ASSERT_EQ(m.order(), 3u);
    for (int t = 0; t < 3; ++t) {
      const auto psi = random_invariant_iso(c, 3, rng);
      const auto n = conjugate(m, psi);
      ASSERT_TRUE(n.fully_verified()) << name;
      for (std::size_t r = 1; r <= 3; ++r) EXPECT_TRUE(compatibility_defect(m, n, psi, r).is_zero_cochain()) << name;
      EXPECT_EQ(c.coboundary(psi[0]).coefficients, minus(m.m(1), n.m(1)).coefficients);
      const auto found = find_equivalence(m, n, 3);
      ASSERT_TRUE(found.ok()) << name;
      for (std::size_t r = 1; r <= 3; ++r) EXPECT_TRUE(compatibility_defect(m, n, found.iso->psi, r).is_zero_cochain());
      for (const auto& p : found.iso->psi) EXPECT_TRUE(c.is_invariant(p));
      // conjugating back by the inverse series lands on m again
      const auto back = find_equivalence(n, m, 3);
      EXPECT_TRUE(back.ok());
    }
  }
}

TEST(IsTrivial, Examples) {
  const auto cusp = make_truncated_cusp(4);
  const auto c = cusp.complex();
  EXPECT_TRUE(is_trivial(Jet::zero(c, 3), 3).ok());

  const auto dual = make_dual_numbers().complex();
  const auto r = is_trivial(Jet(dual, {dual_m1()}), 1);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.failed_order, std::optional<std::size_t>(1));

  std::mt19937_64 rng(46);
  const auto m2 = make_matrix_algebra(2).complex();
  const auto jet = lift(m2, m2.coboundary(random_invariant_cochain(m2, 1, rng)), 3).jet;
  EXPECT_TRUE(is_trivial(jet, 3).ok());
  EXPECT_FALSE(is_trivial(lift(c, cusp.seeds.at("m1"), 2).jet, 2).ok());
}

TEST(IsTrivial, DiagnoseAgreesWhenOrderInvertible) {
  const auto dz = make_dual_numbers(true).complex();
  const auto rep = dz.cohomology(2, true).representatives.at(0);
  const Jet jet(dz, {rep});
  const auto plain = is_trivial(jet, 1);
  EXPECT_FALSE(plain.unrestricted_solvable.has_value());
  const auto diag = is_trivial(jet, 1, EquivalenceOptions{true});
  EXPECT_FALSE(diag.ok());
  ASSERT_TRUE(diag.unrestricted_solvable.has_value());
  EXPECT_FALSE(*diag.unrestricted_solvable);

  const auto cusp = make_truncated_cusp(4);
  const auto d2 = is_trivial(Jet(cusp.complex(), {cusp.seeds.at("m1")}), 1, EquivalenceOptions{true});
  ASSERT_TRUE(d2.unrestricted_solvable.has_value());
  EXPECT_FALSE(*d2.unrestricted_solvable);
}

TEST(RestrictToFixedPoints, Examples) {
  const auto cusp = make_truncated_cusp(4);
  const auto c = cusp.complex();
  const auto jet = lift(c, cusp.seeds.at("m1"), 2).jet;
  const auto& g = c.action().group();

  const auto whole = restrict_to_fixed_points(jet, whole_group(g));
  EXPECT_EQ(whole.subalgebra.basis.size(), 4u);
  EXPECT_EQ(whole.jet.order(), 2u);
  EXPECT_TRUE(whole.jet.fully_verified());
  for (const auto& m : whole.jet.coefficients()) EXPECT_TRUE(m.is_zero_cochain());

  const auto none = restrict_to_fixed_points(jet, trivial_subgroup(g));
  EXPECT_EQ(none.subalgebra.basis.size(), 8u);
  for (std::size_t i = 1; i <= 2; ++i) EXPECT_EQ(none.jet.m(i).coefficients, jet.m(i).coefficients);
}

TEST(RestrictToFixedPoints, RestrictionsStayAssociative) {
  std::mt19937_64 rng(47);
  for (const auto* name : {"function_s3", "matrix_2", "dual_numbers_z2"}) {
    const auto e = make_catalog_entry(name);
    const auto c = e.complex();
    const auto m1 = c.cohomology(2, true).representatives.empty() ? c.coboundary(random_invariant_cochain(c, 1, rng))
                                                                   : c.cohomology(2, true).representatives[0];
    const auto jet = lift(c, m1, 2).jet;
    for (const auto& h : enumerate_subgroups(c.action().group())) {
      const auto r = restrict_to_fixed_points(jet, h);
      EXPECT_TRUE(r.jet.fully_verified()) << name;
      EXPECT_EQ(r.jet.order(), jet.order());
    }
  }
}
