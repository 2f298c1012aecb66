#include "ntruke/ring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <utility>

#include "ntruke/errors.hpp"
#include "ntruke/params.hpp"

namespace ntruke {

namespace {

void check_modulus(std::int64_t modulus) {
  if (modulus < 2) throw std::invalid_argument("modulus must be at least 2");
}

void check_same_size(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) {
    throw DimensionError("polynomial length mismatch: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
}

std::int64_t residue(std::int64_t value, std::int64_t modulus) {
  const std::int64_t r = value % modulus;
  return r < 0 ? r + modulus : r;
}

std::int64_t inverse_scalar(std::int64_t a, std::int64_t prime) {
  // Extended Euclid on integers; a is a nonzero residue.
  std::int64_t old_r = a, r = prime, old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t quo = old_r / r;
    old_r = std::exchange(r, old_r - quo * r);
    old_s = std::exchange(s, old_s - quo * s);
  }
  return residue(old_s, prime);
}

// Dense polynomials over Z_prime, lowest degree first, no trailing zeros.
// The zero polynomial is the empty vector.
using Dense = std::vector<std::int64_t>;

void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Dense& a) { return static_cast<int>(a.size()) - 1; }

Dense mul_dense(const Dense& a, const Dense& b, std::int64_t prime) {
  if (a.empty() || b.empty()) return {};
  Dense out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = (out[i + j] + a[i] * b[j]) % prime;
    }
  }
  trim(out);
  return out;
}

Dense sub_dense(const Dense& a, const Dense& b, std::int64_t prime) {
  Dense out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::int64_t x = i < a.size() ? a[i] : 0;
    const std::int64_t y = i < b.size() ? b[i] : 0;
    out[i] = residue(x - y, prime);
  }
  trim(out);
  return out;
}

// Long division: num = quo * den + rem with deg rem < deg den.
void divmod_dense(Dense num, const Dense& den, std::int64_t prime, Dense& quo, Dense& rem) {
  const int dd = degree(den);
  const std::int64_t lead_inv = inverse_scalar(den.back(), prime);
  quo.assign(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, 0);
  while (!num.empty() && degree(num) >= dd) {
    const int shift = degree(num) - dd;
    const std::int64_t c = num.back() * lead_inv % prime;
    quo[static_cast<std::size_t>(shift)] = c;
    for (int i = 0; i <= dd; ++i) {
      auto& slot = num[static_cast<std::size_t>(shift + i)];
      slot = residue(slot - c * den[static_cast<std::size_t>(i)], prime);
    }
    trim(num);
  }
  trim(quo);
  rem = std::move(num);
}

}  // namespace

Poly Poly::monomial(std::size_t n, std::size_t k) {
  Poly out = zero(n);
  if (n > 0) out.coeffs_[k % n] = 1;
  return out;
}

bool Poly::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c == 0; });
}

std::int64_t Poly::max_abs() const {
  std::int64_t best = 0;
  for (const auto c : coeffs_) best = std::max(best, std::abs(c));
  return best;
}

std::int64_t center(std::int64_t value, std::int64_t modulus) {
  const std::int64_t r = residue(value, modulus);
  return 2 * r > modulus ? r - modulus : r;
}

Poly reduce_centered(const Poly& a, std::int64_t modulus) {
  check_modulus(modulus);
  Poly out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = center(out[i], modulus);
  return out;
}

Poly add(const Poly& a, const Poly& b, std::int64_t modulus) {
  check_modulus(modulus);
  check_same_size(a, b);
  Poly out = Poly::zero(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = center(center(a[i], modulus) + center(b[i], modulus), modulus);
  }
  return out;
}

Poly sub(const Poly& a, const Poly& b, std::int64_t modulus) {
  return add(a, negate(b, modulus), modulus);
}

Poly negate(const Poly& a, std::int64_t modulus) {
  check_modulus(modulus);
  Poly out = Poly::zero(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = center(-center(a[i], modulus), modulus);
  return out;
}

Poly scale(const Poly& a, std::int64_t factor, std::int64_t modulus) {
  check_modulus(modulus);
  const std::int64_t k = center(factor, modulus);
  Poly out = Poly::zero(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = center(k * center(a[i], modulus), modulus);
  return out;
}

Poly conv_mul_integer(const Poly& a, const Poly& b) {
  check_same_size(a, b);
  const std::size_t n = a.size();
  Poly out = Poly::zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t ai = a[i];
    if (ai == 0) continue;
    std::size_t k = i;
    for (std::size_t j = 0; j < n; ++j) {
      out[k] += ai * b[j];
      if (++k == n) k = 0;
    }
  }
  return out;
}

Poly conv_mul(const Poly& a, const Poly& b, std::int64_t modulus) {
  check_modulus(modulus);
  check_same_size(a, b);
  return reduce_centered(conv_mul_integer(reduce_centered(a, modulus), reduce_centered(b, modulus)),
                         modulus);
}

std::optional<Poly> inverse_mod_prime(const Poly& f, std::int64_t prime) {
  if (!is_prime(prime)) {
    throw UnsupportedModulus("inverse_mod_prime: " + std::to_string(prime) + " is not prime");
  }
  const std::size_t n = f.size();
  if (n == 0) throw DimensionError("inverse_mod_prime: empty polynomial");

  // x^N - 1
  Dense r0(n + 1, 0);
  r0[0] = prime - 1;
  r0[n] = 1;
  Dense r1(n);
  for (std::size_t i = 0; i < n; ++i) r1[i] = residue(f[i], prime);
  trim(r1);

  // Invariant: t_i * f == r_i (mod x^N - 1, prime).
  Dense t0;
  Dense t1{1};
  Dense quo, rem;
  while (!r1.empty()) {
    divmod_dense(r0, r1, prime, quo, rem);
    r0 = std::exchange(r1, std::move(rem));
    t0 = std::exchange(t1, sub_dense(t0, mul_dense(quo, t1, prime), prime));
  }
  if (degree(r0) != 0) return std::nullopt;

  const std::int64_t unit_inv = inverse_scalar(r0[0], prime);
  Poly out = Poly::zero(n);
  for (std::size_t i = 0; i < t0.size(); ++i) {
    // deg t0 < N, so no folding is needed.
    out[i % n] = center(out[i % n] + t0[i] * unit_inv, prime);
  }
  return out;
}

std::optional<Poly> inverse_mod_prime_power(const Poly& f, std::int64_t prime, int exponent) {
  if (exponent < 1) throw std::invalid_argument("inverse_mod_prime_power: exponent must be >= 1");
  auto inv = inverse_mod_prime(f, prime);
  if (!inv || exponent == 1) return inv;

  std::int64_t modulus = 1;
  for (int i = 0; i < exponent; ++i) modulus *= prime;

  const Poly two = scale(Poly::unit(f.size()), 2, modulus);
  Poly a = *inv;
  // Each step squares the error term, doubling the exponent of precision.
  for (int precision = 1; precision < exponent; precision *= 2) {
    a = conv_mul(a, sub(two, conv_mul(f, a, modulus), modulus), modulus);
  }
  return a;
}

std::optional<Poly> inverse_mod(const Poly& f, std::int64_t modulus) {
  const auto pp = as_prime_power(modulus);
  if (!pp) {
    throw UnsupportedModulus("modulus " + std::to_string(modulus) +
                             " is neither prime nor a prime power");
  }
  return inverse_mod_prime_power(f, pp->prime, pp->exponent);
}

double centered_norm(const Poly& f) {
  if (f.size() == 0) return 0.0;
  const double mean =
      static_cast<double>(std::accumulate(f.coeffs().begin(), f.coeffs().end(), std::int64_t{0})) /
      static_cast<double>(f.size());
  double sum = 0.0;
  for (const auto c : f.coeffs()) {
    const double d = static_cast<double>(c) - mean;
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace ntruke
