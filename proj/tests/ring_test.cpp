#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ntruke/errors.hpp"
#include "ntruke/ring.hpp"
#include "ntruke/sampling.hpp"
#include "oracle.hpp"

namespace ntruke {
namespace {

Poly random_poly(std::mt19937_64& gen, std::size_t n, std::int64_t m) {
  return Poly(oracle::random_coeffs(gen, n, -m, m));
}

std::vector<std::int64_t> as_vec(const Poly& p) { return {p.coeffs().begin(), p.coeffs().end()}; }

TEST(Center, IntervalIsHalfOpenOnTheLeft) {
  EXPECT_EQ(center(17, 32), -15);
  EXPECT_EQ(center(16, 32), 16);
  EXPECT_EQ(center(-16, 32), 16);
  EXPECT_EQ(center(-15, 32), -15);
  EXPECT_EQ(center(2, 3), -1);
  EXPECT_EQ(center(-2, 3), 1);
  EXPECT_EQ(center(0, 2), 0);
  EXPECT_EQ(center(1, 2), 1);
}

TEST(ReduceCentered, Examples) {
  EXPECT_EQ(reduce_centered(Poly{17}, 32), (Poly{-15}));
  EXPECT_EQ(reduce_centered(Poly{16}, 32), (Poly{16}));
  EXPECT_EQ(reduce_centered(Poly{4, -5}, 3), (Poly{1, 1}));
}

TEST(ReduceCentered, IdempotentAndInRange) {
  std::mt19937_64 gen(1);
  for (std::int64_t m : {2, 3, 5, 32, 128, 2048}) {
    for (int t = 0; t < 100; ++t) {
      const Poly f = random_poly(gen, 11, 10 * m);
      const Poly once = reduce_centered(f, m);
      EXPECT_EQ(reduce_centered(once, m), once);
      for (std::size_t i = 0; i < f.size(); ++i) {
        EXPECT_GT(2 * once[i], -m);
        EXPECT_LE(2 * once[i], m);
        EXPECT_EQ(((f[i] - once[i]) % m), 0);
      }
    }
  }
}

TEST(ReduceCentered, RejectsTinyModulus) {
  EXPECT_THROW((void)reduce_centered(Poly{1}, 1), std::invalid_argument);
}

TEST(Add, Examples) {
  EXPECT_EQ(add(Poly{1, 2, 3}, Poly{0, 0, 0}, 7), (Poly{1, 2, 3}));
  EXPECT_EQ(add(Poly{3, 3, 0}, Poly{3, 3, 0}, 7), (Poly{-1, -1, 0}));
  std::mt19937_64 gen(2);
  const Poly a = reduce_centered(random_poly(gen, 13, 64), 32);
  EXPECT_TRUE(add(a, negate(a, 32), 32).is_zero());
}

TEST(Add, LengthMismatchIsDimensionError) {
  EXPECT_THROW((void)add(Poly{1, 2}, Poly{1, 2, 3}, 7), DimensionError);
  EXPECT_THROW((void)conv_mul(Poly{1, 2}, Poly{1, 2, 3}, 7), DimensionError);
}

TEST(ConvMul, Examples) {
  const Poly f{3, -1, 2, 0, 1};
  EXPECT_EQ(conv_mul(f, Poly::unit(5), 7), reduce_centered(f, 7));
  EXPECT_EQ(conv_mul(Poly{0, 1, 0}, Poly{0, 0, 1}, 7), (Poly{1, 0, 0}));
  // Oracle: (1 + x)^2 = 1 + 2x + x^2, no fold needed at N = 3.
  EXPECT_EQ(as_vec(conv_mul(Poly{1, 1, 0}, Poly{1, 1, 0}, 5)),
            oracle::schoolbook_fold({1, 1, 0}, {1, 1, 0}, 5));
  EXPECT_EQ(conv_mul(Poly{1, 1, 0}, Poly{1, 1, 0}, 5), (Poly{1, 2, 1}));
}

TEST(ConvMul, FoldWrapsHighDegrees) {
  // x^2 * x^2 = x^4 = x at N = 3
  EXPECT_EQ(conv_mul(Poly{0, 0, 1}, Poly{0, 0, 1}, 7), (Poly{0, 1, 0}));
}

class RingProperties : public ::testing::TestWithParam<std::size_t> {};

TEST_P(RingProperties, CommutativeAssociativeAndMatchesOracle) {
  const std::size_t n = GetParam();
  std::mt19937_64 gen(1000 + n);
  for (std::int64_t m : {3, 32, 128}) {
    for (int t = 0; t < 500; ++t) {
      const Poly a = random_poly(gen, n, m);
      const Poly b = random_poly(gen, n, m);
      const Poly c = random_poly(gen, n, m);
      const Poly ab = conv_mul(a, b, m);
      ASSERT_EQ(ab, conv_mul(b, a, m));
      ASSERT_EQ(conv_mul(ab, c, m), conv_mul(a, conv_mul(b, c, m), m));
      ASSERT_EQ(as_vec(ab), oracle::schoolbook_fold(as_vec(a), as_vec(b), m));
      ASSERT_EQ(conv_mul(a, Poly::unit(n), m), reduce_centered(a, m));
    }
  }
}

TEST_P(RingProperties, ReductionModPCommutesWithProduct) {
  const std::size_t n = GetParam();
  std::mt19937_64 gen(2000 + n);
  for (int t = 0; t < 200; ++t) {
    const Poly a = random_poly(gen, n, 64);
    const Poly b = random_poly(gen, n, 64);
    const Poly small = conv_mul(reduce_centered(a, 3), reduce_centered(b, 3), 3);
    ASSERT_EQ(reduce_centered(conv_mul_integer(a, b), 3), small);
    // 3 | 81, so reducing mod 81 first keeps the class mod 3.
    ASSERT_EQ(reduce_centered(conv_mul(a, b, 81), 3), small);
  }
}

INSTANTIATE_TEST_SUITE_P(Dimensions, RingProperties, ::testing::Values(3, 7, 11));

TEST(InverseModPrime, Examples) {
  for (std::size_t n : {3u, 7u, 11u}) {
    EXPECT_EQ(inverse_mod_prime(Poly::unit(n), 3), Poly::unit(n));
    EXPECT_EQ(inverse_mod_prime(Poly::monomial(n, 1), 3), Poly::monomial(n, n - 1));
  }
  EXPECT_EQ(inverse_mod_prime(Poly{1, 1, 1, 1, 1, 1, 1}, 3), std::nullopt);
  EXPECT_EQ(inverse_mod_prime(Poly::zero(7), 3), std::nullopt);
}

TEST(InverseModPrime, RejectsComposite) {
  EXPECT_THROW((void)inverse_mod_prime(Poly::unit(7), 4), UnsupportedModulus);
  EXPECT_THROW((void)inverse_mod(Poly::unit(7), 6), UnsupportedModulus);
}

TEST(InverseModPrime, RoundTripOnRandomInputs) {
  std::mt19937_64 gen(7);
  for (std::int64_t prime : {2, 3, 5, 7, 257}) {
    int invertible = 0;
    for (int t = 0; t < 200; ++t) {
      const Poly f = random_poly(gen, 11, prime);
      const auto inv = inverse_mod_prime(f, prime);
      if (!inv) continue;
      ++invertible;
      ASSERT_TRUE(oracle::is_unit(oracle::schoolbook_fold(as_vec(f), as_vec(*inv), prime)));
    }
    EXPECT_GT(invertible, 0) << "prime " << prime;
  }
}

TEST(InverseModPrime, ZeroDivisorsAreNotInvertible) {
  // f(1) = 0 means (x - 1) divides f.
  std::mt19937_64 gen(8);
  Params params{11, 3, 32, 3, 3, 3};
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    const Poly f = sample_ternary({3, 3}, params, rng);
    EXPECT_EQ(inverse_mod_prime(f, 2), std::nullopt);
    EXPECT_EQ(inverse_mod_prime(f, 3), std::nullopt);
  }
}

TEST(InverseModPrimePower, Examples) {
  for (std::size_t n : {3u, 7u, 167u}) {
    EXPECT_EQ(inverse_mod_prime_power(Poly::unit(n), 2, 5), Poly::unit(n));
    EXPECT_EQ(inverse_mod_prime_power(Poly::monomial(n, 1), 2, 5), Poly::monomial(n, n - 1));
    EXPECT_EQ(inverse_mod_prime_power(Poly::monomial(n, 1), 2, 7), Poly::monomial(n, n - 1));
  }
}

TEST(InverseModPrimePower, RandomInvertibleRoundTrip) {
  Params params{7, 3, 32, 2, 2, 2};
  Rng rng(5);
  int found = 0;
  for (int t = 0; t < 200 && found < 50; ++t) {
    const Poly f = sample_ternary({2, 1}, params, rng);
    const auto inv2 = inverse_mod_prime(f, 2);
    const auto inv32 = inverse_mod_prime_power(f, 2, 5);
    ASSERT_EQ(inv2.has_value(), inv32.has_value());
    if (!inv32) continue;
    ++found;
    ASSERT_TRUE(oracle::is_unit(oracle::schoolbook_fold(as_vec(f), as_vec(*inv32), 32)));
  }
  EXPECT_GT(found, 10);
}

TEST(InverseModPrimePower, EveryExponentUpToEleven) {
  std::mt19937_64 gen(9);
  for (int k = 1; k <= 11; ++k) {
    const std::int64_t m = std::int64_t{1} << k;
    for (int t = 0; t < 20; ++t) {
      const Poly f = random_poly(gen, 11, 4);
      const auto inv = inverse_mod_prime_power(f, 2, k);
      ASSERT_EQ(inv.has_value(), inverse_mod_prime(f, 2).has_value());
      if (inv) ASSERT_EQ(conv_mul(f, *inv, m), Poly::unit(11)) << "k=" << k;
    }
  }
  // odd prime power
  for (int t = 0; t < 20; ++t) {
    const Poly f = random_poly(gen, 7, 4);
    if (auto inv = inverse_mod(f, 243)) ASSERT_EQ(conv_mul(f, *inv, 243), Poly::unit(7));
  }
}

TEST(CenteredNorm, Examples) {
  EXPECT_DOUBLE_EQ(centered_norm(Poly{4, 4, 4, 4, 4}), 0.0);
  EXPECT_DOUBLE_EQ(centered_norm(Poly{1, -1, 0}), std::sqrt(2.0));
  // (3 - 0.75)^2 + 3 * 0.75^2 = 5.0625 + 1.6875
  EXPECT_DOUBLE_EQ(centered_norm(Poly{3, 0, 0, 0}), std::sqrt(6.75));
}

TEST(Poly, MonomialWrapsIndex) {
  EXPECT_EQ(Poly::monomial(5, 7), Poly::monomial(5, 2));
  EXPECT_EQ((Poly{-3, 2}).max_abs(), 3);
}

}  // namespace
}  // namespace ntruke
