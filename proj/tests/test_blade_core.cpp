#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sga/blade.hpp"
#include "sga/multivector.hpp"

using sga::Blade;
using sga::Coefficient;
using sga::Multivector;

namespace {

Blade random_blade(std::mt19937_64& rng, std::size_t dim) {
  Blade b;
  for (std::size_t i = 0; i < dim; ++i) {
    if (rng() & 1U) b.set(i);
  }
  return b;
}

Multivector random_mv(std::mt19937_64& rng, std::size_t dim, std::size_t terms) {
  Multivector m(dim);
  std::uniform_int_distribution<long> num(-5, 5);
  std::uniform_int_distribution<long> den(1, 4);
  for (std::size_t t = 0; t < terms; ++t) m.accumulate(random_blade(rng, dim), sga::make_coefficient(num(rng), den(rng)));
  return m;
}

bool canonical(const Multivector& m) {
  for (const auto& [b, c] : m) {
    if (c == 0 || !sga::is_canonical(c) || b.span() > m.dimension()) return false;
  }
  return true;
}

}  // namespace

TEST(Blade, ScalarIsEmptyMask) {
  Blade b;
  EXPECT_TRUE(b.is_scalar());
  EXPECT_EQ(b.grade(), 0u);
  EXPECT_EQ(b.to_hex(), "0");
}

TEST(Blade, SetResetKeepsCanonicalStorage) {
  Blade b{3, 130};
  EXPECT_EQ(b.span(), 131u);
  b.reset(130);
  EXPECT_EQ(b, Blade{3});
  EXPECT_EQ(b.words().size(), 1u);
}

TEST(Blade, OrderingIsNumericMaskValue) {
  EXPECT_LT(Blade{0}, Blade{1});
  EXPECT_LT((Blade{0, 1}), Blade{2});
  EXPECT_LT(Blade{63}, Blade{64});
  EXPECT_LT(Blade{}, Blade{0});
}

TEST(Blade, ExtractAndDepositAcrossWordBoundary) {
  Blade b;
  b.deposit(60, 10, 0x2AB);
  EXPECT_EQ(b.extract(60, 10), 0x2ABu);
  EXPECT_EQ(b.extract(62, 4), (0x2ABu >> 2) & 0xF);
  EXPECT_EQ(b.count_below(64), static_cast<std::size_t>(std::popcount(0x2ABu & 0xFu)));
}

TEST(Blade, HexRoundTripAndRejectsNonCanonical) {
  const Blade b{0, 4, 65, 200};
  EXPECT_EQ(Blade::from_hex(b.to_hex()), b);
  EXPECT_THROW(Blade::from_hex("0f"), sga::parse_error);
  EXPECT_THROW(Blade::from_hex("F"), sga::parse_error);
  EXPECT_THROW(Blade::from_hex(""), sga::parse_error);
}

TEST(ReorderSign, Examples) {
  EXPECT_EQ(sga::reorder_sign(Blade{0}, Blade{0}), 1);
  EXPECT_EQ(sga::reorder_sign(Blade{1}, Blade{0}), -1);
}

TEST(ReorderSign, ExhaustiveAgainstPermutationParityD8) {
  for (std::uint64_t a = 0; a < 256; ++a) {
    for (std::uint64_t b = 0; b < 256; ++b) {
      const auto ba = Blade::from_word(a);
      const auto bb = Blade::from_word(b);
      ASSERT_EQ(sga::reorder_sign(ba, bb), oracle::permutation_parity(ba.indices(), bb.indices())) << a << " " << b;
    }
  }
}

TEST(ReorderSign, RandomWidePairsAgainstPermutationParity) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 10000; ++t) {
    const std::size_t dim = 1 + rng() % 200;
    const auto a = random_blade(rng, dim);
    const auto b = random_blade(rng, dim);
    ASSERT_EQ(sga::reorder_sign(a, b), oracle::permutation_parity(a.indices(), b.indices()));
  }
}

TEST(BladeMul, Examples) {
  EXPECT_EQ(sga::blade_mul(Blade{0}, Blade{0, 1}), (sga::SignedBlade{Blade{1}, 1}));
  const Blade m{2, 5, 9};
  EXPECT_EQ(sga::blade_mul(Blade{}, m), (sga::SignedBlade{m, 1}));
  // (0,2,1,2): one inversion (2 before 1), frozen from permutation_parity.
  EXPECT_EQ(oracle::permutation_parity({0, 2}, {1, 2}), -1);
  EXPECT_EQ(sga::blade_mul(Blade{0, 2}, Blade{1, 2}), (sga::SignedBlade{Blade{0, 1}, -1}));
}

TEST(GeometricProduct, Examples) {
  constexpr std::size_t d = 4;
  const auto one = Multivector::scalar(d, 1);
  const auto e1 = Multivector::basis(d, 0);
  const auto e2 = Multivector::basis(d, 1);
  EXPECT_TRUE(((one + e1) * (one - e1)).is_zero());
  EXPECT_EQ(e1 * e2, Multivector::from_blade(d, Blade{0, 1}));
}

TEST(GeometricProduct, AnticommutationAndUnitSquares) {
  constexpr std::size_t d = 12;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const auto ei = Multivector::basis(d, i);
      const auto ej = Multivector::basis(d, j);
      if (i == j) {
        EXPECT_EQ(ei * ei, Multivector::scalar(d, 1));
      } else {
        EXPECT_EQ(ei * ej, -(ej * ei));
      }
    }
  }
}

TEST(GeometricProduct, MatchesQuadraticExpansionOracle) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    const auto a = random_mv(rng, 8, 5);
    const auto b = random_mv(rng, 8, 5);
    const auto p = a * b;
    ASSERT_TRUE(canonical(p));
    ASSERT_EQ(oracle::as_index_map(p), oracle::expand_product(a, b));
  }
}

TEST(GeometricProduct, AssociativeAndDistributive) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 300; ++t) {
    const std::size_t d = 1 + rng() % 10;
    const auto a = random_mv(rng, d, 1 + rng() % 6);
    const auto b = random_mv(rng, d, 1 + rng() % 6);
    const auto c = random_mv(rng, d, 1 + rng() % 6);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ((a + b) * c, a * c + b * c);
  }
}

TEST(GeometricProduct, DimensionMismatchThrows) {
  EXPECT_THROW(Multivector::basis(3, 0) * Multivector::basis(4, 0), sga::dimension_mismatch);
  EXPECT_THROW(Multivector::basis(3, 0) + Multivector::basis(4, 0), sga::dimension_mismatch);
  EXPECT_THROW(Multivector::basis(3, 3), sga::dimension_mismatch);
}

TEST(AddScale, Examples) {
  std::mt19937_64 rng(17);
  const auto a = random_mv(rng, 6, 5);
  EXPECT_EQ(a + Multivector(6), a);
  EXPECT_TRUE(sga::scale(a, 0).is_zero());
  const auto two_e1 = sga::scale(Multivector::basis(6, 0), 2);
  EXPECT_EQ(sga::scale(two_e1, Coefficient(1, 2)), Multivector::basis(6, 0));
}

TEST(AddScale, CancellationPrunesTerms) {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 100; ++t) {
    const auto a = random_mv(rng, 6, 6);
    const auto z = a - a;
    EXPECT_TRUE(z.is_zero());
    EXPECT_TRUE(canonical(a + sga::scale(a, Coefficient(-1, 3))));
  }
}

TEST(ProjectTerms, Examples) {
  constexpr std::size_t d = 3;
  const auto a = Multivector::scalar(d, 1) + Multivector::basis(d, 0) + Multivector::from_blade(d, Blade{0, 1});
  EXPECT_EQ(sga::project_terms(a, [](const Blade&) { return true; }), a);
  EXPECT_TRUE(sga::project_terms(a, [](const Blade&) { return false; }).is_zero());
  EXPECT_EQ(sga::grade_part(a, 2), Multivector::from_blade(d, Blade{0, 1}));
}

TEST(ProjectTerms, IdempotentAndLinear) {
  std::mt19937_64 rng(23);
  const auto even = [](const Blade& b) { return b.grade() % 2 == 0; };
  for (int t = 0; t < 200; ++t) {
    const auto a = random_mv(rng, 7, 6);
    const auto b = random_mv(rng, 7, 6);
    const auto pa = sga::project_terms(a, even);
    EXPECT_EQ(sga::project_terms(pa, even), pa);
    EXPECT_EQ(sga::project_terms(a + b, even), pa + sga::project_terms(b, even));
  }
}
