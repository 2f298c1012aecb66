#include "ntruke/params.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ntruke/errors.hpp"

namespace ntruke {

namespace {

constexpr std::int64_t kMaxModulus = std::int64_t{1} << 24;
constexpr std::int64_t kMaxDimension = 4096;

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("invalid params: " + what);
}

}  // namespace

bool is_prime(std::int64_t value) {
  if (value < 2) return false;
  if (value % 2 == 0) return value == 2;
  for (std::int64_t d = 3; d * d <= value; d += 2) {
    if (value % d == 0) return false;
  }
  return true;
}

std::optional<PrimePower> as_prime_power(std::int64_t value) {
  if (value < 2) return std::nullopt;
  std::int64_t prime = 0;
  for (std::int64_t d = 2; d * d <= value; ++d) {
    if (value % d == 0) {
      prime = d;
      break;
    }
  }
  if (prime == 0) return PrimePower{value, 1};
  int exponent = 0;
  while (value % prime == 0) {
    value /= prime;
    ++exponent;
  }
  if (value != 1) return std::nullopt;
  return PrimePower{prime, exponent};
}

void Params::validate() const {
  require(n >= 2 && n <= kMaxDimension, "N must lie in [2, 4096]");
  require(is_prime(n), "N must be prime");
  require(p >= 2, "p must be at least 2");
  require(q > p, "q must exceed p");
  require(q <= kMaxModulus, "q must not exceed 2^24");
  require(std::gcd(p, q) == 1, "p and q must be coprime");
  require(as_prime_power(p).has_value(), "p must be a prime or prime power");
  require(as_prime_power(q).has_value(), "q must be a prime or prime power");
  require(d_f >= 1, "d_f must be at least 1");
  require(d_g >= 0 && d_r >= 0, "weights must be nonnegative");
  require(2 * d_f < n && 2 * d_g < n && 2 * d_r < n, "2*d must be below N");
}

std::int64_t Params::worst_case_coefficient() const {
  // |(r*g)_k| is bounded by the smaller support; f_a*f_b likewise.
  const std::int64_t rg = std::min(2 * d_r, 2 * d_g);
  const std::int64_t ff = 2 * d_f - 1;
  return p * rg + ff;
}

bool Params::failure_free() const {
  // Centered interval for q is (-q/2, q/2]; symmetric bound must stay inside.
  return 2 * worst_case_coefficient() < q;
}

Params Params::guarantee() { return Params{167, 3, 128, 7, 7, 7}; }

Params Params::lossy() { return Params{251, 3, 128, 38, 38, 38}; }

std::optional<Params> Params::preset(const std::string& name) {
  if (name == "guarantee") return guarantee();
  if (name == "lossy") return lossy();
  return std::nullopt;
}

}  // namespace ntruke
