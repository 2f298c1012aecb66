#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace ntruke {

/// Domain parameters of an NTRU-KE instance.
///
/// `n` is the ring dimension of Z[x]/(x^n - 1), `p` the small modulus keys
/// are reduced to, `q` the large modulus public values live in. The weights
/// size the ternary sample spaces: private f has d_f coefficients equal to
/// +1 and d_f - 1 equal to -1; g and the blinding r have d_g (resp. d_r) of
/// each sign.
struct Params {
  std::int64_t n = 167;
  std::int64_t p = 3;
  std::int64_t q = 128;
  std::int64_t d_f = 7;
  std::int64_t d_g = 7;
  std::int64_t d_r = 7;

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;

  /// Worst-case |p*(r*g) + f_a*f_b| over the sample spaces.
  [[nodiscard]] std::int64_t worst_case_coefficient() const;

  /// True when worst_case_coefficient() can never leave the centered
  /// interval for q, i.e. key agreement cannot fail.
  [[nodiscard]] bool failure_free() const;

  bool operator==(const Params&) const = default;

  /// N=167, p=3, q=128, d=7: worst case 55 < 64, so agreement always holds.
  static Params guarantee();
  /// N=251, p=3, q=128, d=38: worst case 303, about 1.5% of sessions disagree.
  static Params lossy();
  static std::optional<Params> preset(const std::string& name);
};

[[nodiscard]] bool is_prime(std::int64_t value);

/// Returns (prime, exponent) when value = prime^exponent with exponent >= 1.
struct PrimePower {
  std::int64_t prime;
  int exponent;
};
[[nodiscard]] std::optional<PrimePower> as_prime_power(std::int64_t value);

}  // namespace ntruke
