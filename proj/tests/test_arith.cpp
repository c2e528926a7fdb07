#include <gtest/gtest.h>

#include <limits>

#include "qform/arith.hpp"
#include "qform/hnf.hpp"
#include "qform/matrix.hpp"

using namespace qform;

TEST(Arith, CheckedOpsThrowOnOverflow) {
  const Int big = std::numeric_limits<Int>::max();
  EXPECT_THROW(checked_add(big, 1), OverflowError);
  EXPECT_THROW(checked_sub(-big, 2), OverflowError);
  EXPECT_THROW(checked_mul(Int{1} << 40, Int{1} << 30), OverflowError);
  EXPECT_EQ(checked_mul(-7, 6), -42);
  EXPECT_THROW(narrow(Wide{big} + 1), OverflowError);
}

TEST(Arith, IsqrtIsExactFloor) {
  for (Int n = 0; n < 20000; ++n) {
    const Int r = isqrt(n);
    EXPECT_LE(r * r, n);
    EXPECT_GT((r + 1) * (r + 1), n);
  }
  const Int near = Int{3037000499} * 3037000499;
  EXPECT_EQ(isqrt(near), 3037000499);
  EXPECT_EQ(isqrt(near - 1), 3037000498);
  EXPECT_EQ(isqrt(std::numeric_limits<Int>::max()), 3037000499);
  const Wide w = Wide{Int{1} << 62} * 16;  // 2^66
  EXPECT_EQ(isqrt(w), Wide{Int{1} << 33});
  EXPECT_EQ(isqrt(w - 1), Wide{(Int{1} << 33) - 1});
}

TEST(Arith, DivisionAndResidues) {
  EXPECT_EQ(floor_div(Int{-7}, Int{2}), -4);
  EXPECT_EQ(ceil_div(Int{-7}, Int{2}), -3);
  EXPECT_EQ(floor_div(Int{7}, Int{-2}), -4);
  EXPECT_EQ(mod(-7, 5), 3);
  EXPECT_EQ(valuation(96, 2), 5);
  EXPECT_EQ(valuation(75, 5), 2);
  EXPECT_EQ(ipow(3, 5), 243);
}

TEST(Arith, GcdAndPrimes) {
  const auto e = extended_gcd(240, 46);
  EXPECT_EQ(e.g, 2);
  EXPECT_EQ(240 * e.x + 46 * e.y, 2);
  const Vec v{12, -18, 30};
  EXPECT_EQ(gcd(v), 6);
  EXPECT_EQ(prime_divisors(360), (Vec{2, 3, 5}));
  EXPECT_TRUE(is_prime(329 / 7));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(legendre(3, 17), -1);
  EXPECT_EQ(legendre(2, 17), 1);
  EXPECT_EQ(legendre(34, 17), 0);
}

TEST(Matrix, DeterminantAdjugateAndInverse) {
  const IntMatrix g{{1, 0, 0, 0}, {0, 2, 1, 0}, {0, 1, 4, 2}, {0, 0, 2, 6}};
  EXPECT_EQ(determinant(g), Wide{34});
  const auto adj = adjugate(g);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Wide s = 0;
      for (std::size_t k = 0; k < 4; ++k) s += adj[i][k] * g(k, j);
      EXPECT_EQ(s, i == j ? Wide{34} : Wide{0});
    }
  const IntMatrix u{{1, 2, 0}, {0, 1, 3}, {0, 0, 1}};
  EXPECT_EQ(multiply(u, unimodular_inverse(u)), IntMatrix::identity(3));
  EXPECT_THROW(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}), InvalidForm);
}

TEST(Hnf, CanonicalBasis) {
  const auto h = hermite_normal_form({{2, 4, 0}, {1, 2, 1}, {3, 6, 1}});
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0], (Vec{1, 2, 1}));
  EXPECT_EQ(h[1], (Vec{0, 0, 2}));
  // Same lattice from a different generating set.
  EXPECT_EQ(hermite_normal_form({{1, 2, -1}, {3, 6, 3}, {1, 2, 1}}), h);
}

TEST(Hnf, IntegerKernel) {
  const auto k = integer_kernel({{1, 1, 0, 0}}, 4);
  ASSERT_EQ(k.size(), 3u);
  for (const auto& v : k) EXPECT_EQ(v[0] + v[1], 0);
  EXPECT_EQ(hermite_normal_form({{1, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}), k);
}
