#include <hochkit/catalog.hpp>

#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hochkit;
using Q = RationalField;
using V = std::vector<mpq_class>;

namespace {

Algebra<Q> bad_two_dim() {
  // e0 e0 = e1, e0 e1 = e0
  return Algebra<Q>(Q{}, {"e0", "e1"}, {{0, 0, 1, mpq_class(1)}, {0, 1, 0, mpq_class(1)}});
}

// Upper triangular 2×2 matrices in a random basis: associative, noncommutative.
Algebra<Q> random_triangular(std::mt19937_64& rng) {
  // standard basis E11, E12, E22
  auto mult = [](std::size_t a, std::size_t b) -> int {
    static const int table[3][3] = {{0, 1, -1}, {-1, -1, 1}, {-1, -1, 2}};
    return table[a][b];
  };
  std::uniform_int_distribution<int> v(-2, 2);
  DenseMatrix<mpq_class> B(3, 3);  // columns: new basis in old coordinates
  std::optional<DenseMatrix<mpq_class>> Binv;
  do {
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) B(i, j) = v(rng);
    Binv = B.inverse(mpq_class(1));
  } while (!Binv);
  std::vector<StructureConstant<mpq_class>> sc;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      V prod(3);
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) {
          const int c = mult(a, b);
          if (c >= 0) prod[c] += B(a, i) * B(b, j);
        }
      const V coords = Binv->apply(prod);
      for (std::size_t k = 0; k < 3; ++k)
        if (!is_zero(coords[k])) sc.push_back({i, j, k, coords[k]});
    }
  return Algebra<Q>(Q{}, {"b0", "b1", "b2"}, sc);
}

Algebra<Q> random_structure(std::mt19937_64& rng, std::size_t d) {
  std::uniform_int_distribution<int> v(-1, 1), keep(0, 3);
  std::vector<StructureConstant<mpq_class>> sc;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i) labels.push_back("e" + std::to_string(i));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (keep(rng) == 0) sc.push_back({i, j, k, mpq_class(v(rng))});
  return Algebra<Q>(Q{}, labels, sc);
}

V random_vector(std::mt19937_64& rng, std::size_t d) {
  std::uniform_int_distribution<int> v(-5, 5);
  V x(d);
  for (auto& e : x) {
    e = mpq_class(v(rng), 1 + rng() % 3);
    e.canonicalize();
  }
  return x;
}

}  // namespace

TEST(ValidateAlgebra, MatrixUnitsAreAssociative) {
  EXPECT_TRUE(validate_algebra(make_matrix_algebra(2).algebra).ok);
  EXPECT_TRUE(validate_algebra(make_matrix_algebra(3).algebra).ok);
}

TEST(ValidateAlgebra, ReportsFirstFailingTripleWithExpansions) {
  const auto r = validate_algebra(bad_two_dim());
  ASSERT_FALSE(r.ok);
  EXPECT_EQ(r.i, 0u);
  EXPECT_EQ(r.j, 0u);
  EXPECT_EQ(r.l, 0u);
  EXPECT_EQ(r.left, (V{0, 0}));   // (e0 e0) e0 = e1 e0 = 0
  EXPECT_EQ(r.right, (V{1, 0}));  // e0 (e0 e0) = e0 e1 = e0
}

TEST(ValidateAlgebra, DualNumbersAreAssociative) { EXPECT_TRUE(validate_algebra(make_dual_numbers().algebra).ok); }

TEST(ValidateAlgebra, AgreesWithFullEnumerationOnRandomStructures) {
  std::mt19937_64 rng(21);
  int rejected = 0;
  for (int t = 0; t < 200; ++t) {
    const auto a = random_structure(rng, 1 + t % 4);
    const bool ok = validate_algebra(a).ok;
    EXPECT_EQ(ok, oracle::associative(oracle::regular_data(a)));
    rejected += !ok;
  }
  EXPECT_GT(rejected, 0);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_triangular(rng);
    EXPECT_TRUE(validate_algebra(a).ok);
    EXPECT_TRUE(oracle::associative(oracle::regular_data(a)));
  }
}

TEST(ValidateAlgebra, LexicographicallyFirstFailure) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_structure(rng, 3);
    const auto r = validate_algebra(a);
    if (r.ok) continue;
    auto fails = [&](std::size_t i, std::size_t j, std::size_t l) {
      const V ei = a.basis_vector(i), ej = a.basis_vector(j), el = a.basis_vector(l);
      return a.multiply(a.multiply(ei, ej), el) != a.multiply(ei, a.multiply(ej, el));
    };
    EXPECT_TRUE(fails(r.i, r.j, r.l));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t l = 0; l < 3; ++l)
          if (std::tuple(i, j, l) < std::tuple(r.i, r.j, r.l)) {
            EXPECT_FALSE(fails(i, j, l));
          }
  }
}

TEST(Algebra, RejectsBadShape) {
  EXPECT_THROW(Algebra<Q>(Q{}, {}, {}), AlgebraError);
  EXPECT_THROW(Algebra<Q>(Q{}, {"a"}, {{0, 1, 0, mpq_class(1)}}), AlgebraError);
}

TEST(Multiply, Examples) {
  const auto dual = make_dual_numbers().algebra;
  EXPECT_EQ(dual.multiply(dual.basis_vector(1), dual.basis_vector(1)), (V{0, 0}));
  const auto m2 = make_matrix_algebra(2).algebra;  // E11, E12, E21, E22
  EXPECT_EQ(m2.multiply(m2.basis_vector(0), m2.basis_vector(1)), m2.basis_vector(1));
  const auto cusp = make_truncated_cusp(4).algebra;
  EXPECT_EQ(cusp.labels()[4], "y");
  EXPECT_EQ(cusp.labels()[3], "x^3");
  EXPECT_EQ(cusp.multiply(cusp.basis_vector(4), cusp.basis_vector(4)), cusp.basis_vector(3));
}

TEST(Multiply, IsBilinear) {
  std::mt19937_64 rng(23);
  for (const auto* name : {"cusp_m4", "matrix_2", "function_s3"}) {
    const auto a = make_catalog_entry(name).algebra;
    for (int t = 0; t < 10; ++t) {
      const auto x = random_vector(rng, a.dim()), x2 = random_vector(rng, a.dim()), y = random_vector(rng, a.dim());
      const mpq_class alpha(3, 7);
      V lhs_in(a.dim());
      for (std::size_t k = 0; k < a.dim(); ++k) lhs_in[k] = alpha * x[k] + x2[k];
      const auto lhs = a.multiply(lhs_in, y);
      const auto p1 = a.multiply(x, y), p2 = a.multiply(x2, y);
      for (std::size_t k = 0; k < a.dim(); ++k) EXPECT_EQ(lhs[k], alpha * p1[k] + p2[k]);
    }
  }
  EXPECT_THROW(make_dual_numbers().algebra.multiply(V(3), V(2)), DimensionError);
}

TEST(Center, Examples) {
  const auto m2 = make_matrix_algebra(2).algebra;
  const auto z = center(m2);
  ASSERT_EQ(z.size(), 1u);
  EXPECT_EQ(z[0], (V{1, 0, 0, 1}));
  EXPECT_EQ(center(make_truncated_cusp(4).algebra).size(), 8u);
  EXPECT_EQ(center(make_function_algebra(permutation_gset(3), "f").algebra).size(), 3u);
  EXPECT_EQ(center(make_ground_field().algebra).size(), 1u);
  EXPECT_EQ(center(make_matrix_algebra(3).algebra).size(), 1u);
}

TEST(Center, VectorsCommuteWithBasis) {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 10; ++t) {
    const auto a = random_triangular(rng);
    for (const auto& z : center(a))
      for (std::size_t i = 0; i < a.dim(); ++i)
        EXPECT_EQ(a.multiply(z, a.basis_vector(i)), a.multiply(a.basis_vector(i), z));
  }
}

TEST(Bimodule, RegularIsValid) {
  for (const auto& name : catalog_names()) {
    const auto a = make_catalog_entry(name).algebra;
    EXPECT_TRUE(validate_bimodule(a, Bimodule<Q>::regular(a)).ok) << name;
  }
}

TEST(Bimodule, DetectsBrokenActions) {
  const auto dual = make_dual_numbers().algebra;
  using M = DenseMatrix<mpq_class>;
  const M one = M::identity(1, mpq_class(1));
  const M zero(1, 1);
  // k with 1 ↦ 1, x ↦ 0 on both sides: the augmentation bimodule.
  EXPECT_TRUE(validate_bimodule(dual, Bimodule<Q>(1, {one, zero}, {one, zero})).ok);
  // x acting by 1 would need x·x = 0 to act by 1·1 = 1.
  EXPECT_FALSE(validate_bimodule(dual, Bimodule<Q>(1, {one, one}, {one, zero})).ok);
  EXPECT_THROW(Bimodule<Q>(2, {one}, {one}), AlgebraError);
}

TEST(FixedPoints, Examples) {
  const auto cusp = make_truncated_cusp(5);
  const auto f = fixed_point_subalgebra(cusp.algebra, *cusp.action, whole_group(cusp.action->group()));
  ASSERT_EQ(f.basis.size(), 5u);
  for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(f.basis[k], cusp.algebra.basis_vector(k));
  EXPECT_EQ(f.inclusion.rows(), 10u);
  EXPECT_EQ(f.inclusion.cols(), 5u);
  EXPECT_TRUE(validate_algebra(f.algebra).ok);

  const auto e = fixed_point_subalgebra(cusp.algebra, *cusp.action, trivial_subgroup(cusp.action->group()));
  EXPECT_EQ(e.basis.size(), 10u);

  const auto dual = make_dual_numbers(true);
  const auto g = fixed_point_subalgebra(dual.algebra, *dual.action, whole_group(dual.action->group()));
  ASSERT_EQ(g.basis.size(), 1u);
  EXPECT_EQ(g.basis[0], (V{1, 0}));

  EXPECT_THROW(fixed_point_subalgebra(make_matrix_algebra(3).algebra, *make_matrix_algebra(3).action, Subgroup{{0, 3}}),
               GroupError);
}

TEST(FixedPoints, SubalgebraIsClosed) {
  for (const auto* name : {"cusp_m4", "matrix_3", "function_s3", "function_z3"}) {
    const auto e = make_catalog_entry(name);
    for (const auto& h : enumerate_subgroups(e.action->group())) {
      const auto f = fixed_point_subalgebra(e.algebra, *e.action, h);
      for (const auto& u : f.basis)
        for (const auto& v : f.basis) EXPECT_TRUE(fixed_coordinates(f, e.algebra.multiply(u, v)).has_value()) << name;
      // inclusion is a homomorphism on the basis
      for (std::size_t p = 0; p < f.basis.size(); ++p)
        for (std::size_t q = 0; q < f.basis.size(); ++q) {
          const auto sub = f.algebra.multiply(f.algebra.basis_vector(p), f.algebra.basis_vector(q));
          EXPECT_EQ(f.inclusion.apply(sub), e.algebra.multiply(f.basis[p], f.basis[q]));
        }
    }
  }
}
