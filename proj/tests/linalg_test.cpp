#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "trapdoor/linalg/integer.hpp"
#include "trapdoor/linalg/matrix.hpp"
#include "trapdoor/linalg/modular.hpp"
#include "trapdoor/linalg/smith.hpp"

using namespace trapdoor;

namespace {

BigMatrix random_matrix(std::mt19937_64& rng, int dim, int digits) {
  BigMatrix m(dim);
  std::uniform_int_distribution<int> d(0, 9);
  for (auto& x : m.e) {
    Int v = 0;
    for (int k = 0; k < digits; ++k)
      v = v * 10 + d(rng);
    x = d(rng) < 5 ? Int(-v) : v;
  }
  if (dim == 2)
    for (std::size_t k = 4; k < 9; ++k)
      m.e[k] = 0;
  return m;
}

BigMatrix random_shear_product(std::mt19937_64& rng, int dim, int factors) {
  BigMatrix m = BigMatrix::identity(dim);
  std::uniform_int_distribution<int> idx(0, dim - 1), c(-9, 9);
  for (int k = 0; k < factors; ++k) {
    int i = idx(rng), j = idx(rng);
    if (i == j)
      continue;
    m = m * BigMatrix::elementary(dim, i, j, c(rng));
  }
  return m;
}

ModMatrix random_sl_mod(std::mt19937_64& rng, int dim, u64 m) {
  ModMatrix x = ModMatrix::identity(dim, m);
  std::uniform_int_distribution<int> idx(0, dim - 1);
  std::uniform_int_distribution<u64> c(0, m - 1);
  for (int k = 0; k < 30; ++k) {
    int i = idx(rng), j = idx(rng);
    if (i == j)
      continue;
    ModMatrix e = ModMatrix::identity(dim, m);
    e(i, j) = c(rng);
    x = x * e;
  }
  return x;
}

} // namespace

TEST(Integer, ParseAndPrintRoundTrip) {
  Int big = parse_int("-1234567890123456789012345678901234567890");
  EXPECT_EQ(to_string(big), "-1234567890123456789012345678901234567890");
  EXPECT_EQ(decimal_digits(big), 40u);
  EXPECT_THROW(parse_int("12a"), Error);
  EXPECT_THROW(parse_int(""), Error);
  EXPECT_THROW(parse_int("1e5"), Error);
}

TEST(Integer, ModularHelpers) {
  u64 const p = 1000000000000000003ull;
  EXPECT_TRUE(is_prime(p));
  EXPECT_TRUE(is_prime(1245509));
  EXPECT_FALSE(is_prime(1009 * 1013));
  u64 a = 123456789123456789ull % p;
  EXPECT_EQ(mul_mod(a, inv_mod(a, p), p), 1u);
  EXPECT_EQ(residue(Int(-1), 7), 6u);
  EXPECT_EQ(floor_div(Int(-7), Int(2)), -4);
  EXPECT_EQ(small_prime_factors(Int(2038180)), (std::vector<Int>{2, 5, 101, 1009}));
}

TEST(MatMul, IdentityAndShearPair) {
  EXPECT_EQ(BigMatrix::identity(3) * BigMatrix::identity(3), BigMatrix::identity(3));
  BigMatrix s = BigMatrix::identity(3), t = BigMatrix::identity(3);
  s(2, 0) = 1009;
  t(2, 0) = -1009;
  EXPECT_TRUE((s * t).is_identity());
}

TEST(MatMul, MatchesSchoolbookOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int dim = trial % 2 ? 3 : 2;
    BigMatrix a = random_matrix(rng, dim, 25), b = random_matrix(rng, dim, 25);
    EXPECT_EQ(oracle::rows_of(a * b), oracle::schoolbook(oracle::rows_of(a), oracle::rows_of(b)));
  }
}

TEST(MatMul, DimensionMismatchFails) {
  EXPECT_THROW(mat_mul(BigMatrix::identity(2), BigMatrix::identity(3)), Error);
  EXPECT_THROW(BigMatrix(4), Error);
}

TEST(Det, SmallCasesAndLaplaceOracle) {
  EXPECT_EQ(det(BigMatrix::identity(3)), 1);
  EXPECT_EQ(det(BigMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}), 2);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    BigMatrix a = random_matrix(rng, 3, 15);
    EXPECT_EQ(det(a), oracle::det(oracle::rows_of(a)));
  }
}

TEST(Inverse, ShearAndRoundTrip) {
  EXPECT_EQ(mat_inv_unimodular(BigMatrix::identity(3)), BigMatrix::identity(3));
  BigMatrix s = BigMatrix::elementary(3, 0, 2, 77);
  EXPECT_EQ(mat_inv_unimodular(s), BigMatrix::elementary(3, 0, 2, -77));
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    BigMatrix a = random_shear_product(rng, trial % 2 ? 3 : 2, 40);
    EXPECT_TRUE((a * mat_inv_unimodular(a)).is_identity());
    EXPECT_TRUE((mat_inv_unimodular(a) * a).is_identity());
  }
  EXPECT_THROW(mat_inv_unimodular(BigMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}), Error);
}

TEST(ReduceMod, ShearDiesModN) {
  BigMatrix s = BigMatrix::identity(3);
  s(2, 0) = 1009;
  EXPECT_TRUE(reduce_mod(s, 1009).is_identity());
  ModMatrix r = reduce_mod(s, 7);
  EXPECT_EQ(r(2, 0), 1009u % 7u);
  EXPECT_THROW(reduce_mod(s, 1), Error);
}

TEST(ReduceMod, IsARingHomomorphism) {
  std::mt19937_64 rng(3);
  for (u64 m : {2ull, 1009ull, 1000003ull, 1000000000000000003ull})
    for (int trial = 0; trial < 40; ++trial) {
      BigMatrix a = random_matrix(rng, 3, 30), b = random_matrix(rng, 3, 30);
      EXPECT_EQ(reduce_mod(a * b, m), reduce_mod(a, m) * reduce_mod(b, m));
      ModMatrix sum = reduce_mod(mat_add(a, b), m), ra = reduce_mod(a, m), rb = reduce_mod(b, m);
      for (std::size_t k = 0; k < 9; ++k)
        EXPECT_EQ(sum.e[k], add_mod(ra.e[k], rb.e[k], m));
    }
}

TEST(Smith, KnownValues) {
  EXPECT_EQ(smith_normal_form({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), (std::vector<Int>{1, 1, 1}));
  EXPECT_EQ(smith_normal_form({{1, 2}, {3, 4}}), (std::vector<Int>{1, 2}));
  EXPECT_EQ(smith_normal_form({{0, 0}, {0, 0}}), (std::vector<Int>{0, 0}));
}

TEST(Smith, MatchesDeterminantalDivisors) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> e(-6, 6), shape(1, 4);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t r = static_cast<std::size_t>(shape(rng)), c = static_cast<std::size_t>(shape(rng));
    IntMatrix a(r, std::vector<Int>(c));
    for (auto& row : a)
      for (auto& x : row)
        x = trial % 3 == 0 ? Int(2 * e(rng)) : Int(e(rng));
    auto factors = smith_normal_form(a);
    EXPECT_EQ(factors, oracle::snf_by_minors(a));
    for (std::size_t k = 0; k + 1 < factors.size(); ++k)
      if (factors[k] != 0) {
        EXPECT_EQ(factors[k + 1] % factors[k], 0);
      }
  }
}

TEST(Smith, InvariantUnderUnimodularMultiplication) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> e(-20, 20);
  for (int trial = 0; trial < 30; ++trial) {
    BigMatrix a(3);
    for (auto& x : a.e)
      x = e(rng);
    BigMatrix u = random_shear_product(rng, 3, 20), v = random_shear_product(rng, 3, 20);
    auto as_rows = [](BigMatrix const& m) { return IntMatrix(oracle::rows_of(m)); };
    EXPECT_EQ(smith_normal_form(as_rows(a)), smith_normal_form(as_rows(u * a * v)));
  }
}

TEST(Nullspace, TrivialCasesAndKernelProperty) {
  EXPECT_TRUE(nullspace_mod_p({{1, 0}, {0, 1}}, 5).empty());
  EXPECT_EQ(nullspace_mod_p({{0, 0}, {0, 0}}, 5).size(), 2u);
  std::mt19937_64 rng(29);
  for (u64 p : {2ull, 3ull, 1009ull, 1000000000000000003ull})
    for (int trial = 0; trial < 30; ++trial) {
      std::uniform_int_distribution<u64> d(0, std::min<u64>(p - 1, trial % 2 ? 1 : p - 1));
      ResidueMatrix a(5, ResidueVector(6));
      for (auto& row : a)
        for (auto& x : row)
          x = d(rng);
      auto basis = nullspace_mod_p(a, p);
      EXPECT_EQ(basis.size() + rank_mod_p(a, p), 6u);
      for (auto const& v : basis)
        for (auto const& row : a) {
          u64 s = 0;
          for (std::size_t k = 0; k < 6; ++k)
            s = add_mod(s, mul_mod(row[k], v[k], p), p);
          EXPECT_EQ(s, 0u);
        }
    }
}

TEST(Lift, IdentityAndRoundTrip) {
  EXPECT_EQ(lift_to_sl(ModMatrix::identity(3, 1009)), BigMatrix::identity(3));
  std::mt19937_64 rng(31);
  for (u64 m : {2ull, 6ull, 1009ull, 1245509ull, 1000000007ull})
    for (int trial = 0; trial < 40; ++trial) {
      int dim = trial % 2 ? 3 : 2;
      ModMatrix x = random_sl_mod(rng, dim, m);
      BigMatrix l = lift_to_sl(x);
      EXPECT_EQ(det(l), 1);
      EXPECT_EQ(reduce_mod(l, m), x);
    }
}

TEST(Lift, RejectsWrongDeterminant) {
  ModMatrix x = ModMatrix::identity(3, 7);
  x(0, 0) = 2;
  EXPECT_THROW(lift_to_sl(x), Error);
}
