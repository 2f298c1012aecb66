#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace ntruke {

/// Element of Z[x]/(x^N - 1). Index i holds the coefficient of x^i.
///
/// A Poly carries no modulus of its own; every ring operation takes the
/// modulus explicitly and returns coefficients in the centered interval
/// (-m/2, m/2] for that modulus.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {}
  Poly(std::initializer_list<std::int64_t> coeffs) : coeffs_(coeffs) {}

  static Poly zero(std::size_t n) { return Poly(std::vector<std::int64_t>(n, 0)); }
  static Poly unit(std::size_t n) { return monomial(n, 0); }
  /// x^k, with k taken mod n.
  static Poly monomial(std::size_t n, std::size_t k);

  [[nodiscard]] std::size_t size() const { return coeffs_.size(); }
  [[nodiscard]] std::span<const std::int64_t> coeffs() const { return coeffs_; }
  std::int64_t operator[](std::size_t i) const { return coeffs_[i]; }
  std::int64_t& operator[](std::size_t i) { return coeffs_[i]; }

  [[nodiscard]] bool is_zero() const;
  /// Largest absolute coefficient.
  [[nodiscard]] std::int64_t max_abs() const;

  bool operator==(const Poly&) const = default;

 private:
  std::vector<std::int64_t> coeffs_;
};

/// Representative of value in (-m/2, m/2].
[[nodiscard]] std::int64_t center(std::int64_t value, std::int64_t modulus);

[[nodiscard]] Poly reduce_centered(const Poly& a, std::int64_t modulus);
[[nodiscard]] Poly add(const Poly& a, const Poly& b, std::int64_t modulus);
[[nodiscard]] Poly sub(const Poly& a, const Poly& b, std::int64_t modulus);
[[nodiscard]] Poly negate(const Poly& a, std::int64_t modulus);
[[nodiscard]] Poly scale(const Poly& a, std::int64_t factor, std::int64_t modulus);

/// Cyclic convolution (a*b)_k = sum_{i+j = k mod N} a_i b_j, reduced mod m.
[[nodiscard]] Poly conv_mul(const Poly& a, const Poly& b, std::int64_t modulus);

/// Cyclic convolution over the integers, no reduction. Callers keep the
/// operands small enough that N * max|a| * max|b| fits in 63 bits.
[[nodiscard]] Poly conv_mul_integer(const Poly& a, const Poly& b);

/// Inverse in Z_prime[x]/(x^N - 1) via the extended Euclidean algorithm on
/// (f, x^N - 1). std::nullopt when gcd(f, x^N - 1) is not a unit.
/// Throws UnsupportedModulus if `prime` is not prime.
[[nodiscard]] std::optional<Poly> inverse_mod_prime(const Poly& f, std::int64_t prime);

/// Inverse modulo prime^exponent, Newton-lifted from the mod-prime inverse
/// with a <- a * (2 - f * a). Invertible exactly when f is invertible mod prime.
[[nodiscard]] std::optional<Poly> inverse_mod_prime_power(const Poly& f, std::int64_t prime,
                                                          int exponent);

/// Dispatches on the factorization of modulus; throws UnsupportedModulus
/// when it is not a prime power.
[[nodiscard]] std::optional<Poly> inverse_mod(const Poly& f, std::int64_t modulus);

/// sqrt(sum (f_i - mean)^2).
[[nodiscard]] double centered_norm(const Poly& f);

}  // namespace ntruke
