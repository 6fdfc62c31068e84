#include <hochkit/field.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace hochkit;

TEST(RationalField, ParseAndFormatRoundTrip) {
  const RationalField q;
  EXPECT_EQ(q.format(q.parse("3")), "3");
  EXPECT_EQ(q.format(q.parse("-4/6")), "-2/3");
  EXPECT_EQ(q.format(q.parse("+10/5")), "2");
  EXPECT_EQ(q.format(q.parse("0/7")), "0");
  EXPECT_EQ(q.parse("123456789012345678901234567890/2"), mpq_class("61728394506172839450617283945"));
}

TEST(RationalField, RejectsMalformedLiterals) {
  const RationalField q;
  for (const char* bad : {"", "1.5", "1/0", "abc", "1/2/3", "--1", "1e3", " 1"}) {
    EXPECT_THROW(q.parse(bad), FieldError) << bad;
  }
}

TEST(RationalField, ArithmeticIsExact) {
  const RationalField q;
  mpq_class acc = q.zero();
  for (int k = 1; k <= 30; ++k) acc += mpq_class(1, k * (k + 1));
  EXPECT_EQ(acc, mpq_class(30, 31));
}

TEST(PrimeField, ArithmeticMatchesIntegerModel) {
  const PrimeField f(101);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> dist(-500, 500);
  for (int t = 0; t < 500; ++t) {
    const long a = dist(rng), b = dist(rng);
    const auto mod = [](long x) { return static_cast<std::uint64_t>(((x % 101) + 101) % 101); };
    EXPECT_EQ((f.from_int(a) + f.from_int(b)).value(), mod(a + b));
    EXPECT_EQ((f.from_int(a) - f.from_int(b)).value(), mod(a - b));
    EXPECT_EQ((f.from_int(a) * f.from_int(b)).value(), mod(a * b));
    if (mod(b) != 0) {
      EXPECT_EQ((f.from_int(a) / f.from_int(b) * f.from_int(b)).value(), mod(a));
    }
  }
}

TEST(PrimeField, InverseAndDivisionByZero) {
  const PrimeField f(7);
  for (long v = 1; v < 7; ++v) EXPECT_EQ((f.from_int(v) * f.from_int(v).inverse()).value(), 1u);
  EXPECT_THROW(f.zero().inverse(), FieldError);
}

TEST(PrimeField, ParsesFractionsModP) {
  const PrimeField f(7);
  EXPECT_EQ(f.parse("1/2").value(), 4u);  // 2·4 = 8 ≡ 1
  EXPECT_EQ(f.parse("-1").value(), 6u);
  EXPECT_EQ(f.parse("15").value(), 1u);
  EXPECT_THROW(f.parse("1/14"), FieldError);
}

TEST(PrimeField, DefaultElementIsUniversalZero) {
  const PrimeField f(13);
  const ModP z{};
  EXPECT_TRUE(is_zero(z));
  EXPECT_EQ((z + f.from_int(5)).value(), 5u);
  EXPECT_EQ((z - f.from_int(5)).value(), 8u);
  EXPECT_TRUE(is_zero(z * f.from_int(5)));
}

TEST(PrimeField, RejectsCompositeModulusAndMixing) {
  EXPECT_THROW(PrimeField(15), FieldError);
  EXPECT_THROW(PrimeField(1), FieldError);
  EXPECT_THROW(PrimeField(5).one() + PrimeField(7).one(), FieldError);
}

TEST(FieldSpec, Parse) {
  EXPECT_TRUE(FieldSpec::parse("Q").is_rational());
  EXPECT_EQ(FieldSpec::parse("Fp:31").prime, 31u);
  EXPECT_EQ(FieldSpec::parse("Fp:31").name(), "Fp:31");
  EXPECT_THROW(FieldSpec::parse("Fp:32"), FieldError);
  EXPECT_THROW(FieldSpec::parse("Fp:"), FieldError);
  EXPECT_THROW(FieldSpec::parse("R"), FieldError);
}

TEST(FieldSpec, GroupOrderInvertibility) {
  EXPECT_TRUE(order_invertible(RationalField{}, 6));
  EXPECT_TRUE(order_invertible(PrimeField(5), 6));
  EXPECT_FALSE(order_invertible(PrimeField(3), 6));
  EXPECT_FALSE(order_invertible(PrimeField(2), 2));
}
