#pragma once

// Reference computations for tests. Nothing here calls into the library's
// arithmetic, so agreement with it is meaningful.

#include <cstdint>
#include <random>
#include <vector>

namespace ntruke::oracle {

using Coeffs = std::vector<std::int64_t>;

inline std::int64_t centered(std::int64_t x, std::int64_t m) {
  std::int64_t r = ((x % m) + m) % m;
  if (r > m / 2) r -= m;
  // for even m, m/2 itself stays positive: interval is (-m/2, m/2]
  return r;
}

/// Full polynomial product of length 2N-1, then fold x^k onto x^(k mod N).
inline Coeffs schoolbook_fold(const Coeffs& a, const Coeffs& b, std::int64_t m) {
  const std::size_t n = a.size();
  Coeffs full(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) full[i + j] += a[i] * b[j];
  Coeffs out(n, 0);
  for (std::size_t k = 0; k < full.size(); ++k) out[k % n] += full[k];
  for (auto& c : out) c = centered(c, m);
  return out;
}

/// Uniform coefficients in [lo, hi] from a standard engine.
inline Coeffs random_coeffs(std::mt19937_64& gen, std::size_t n, std::int64_t lo, std::int64_t hi) {
  Coeffs out(n);
  for (auto& c : out) c = lo + static_cast<std::int64_t>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
  return out;
}

inline bool is_unit(const Coeffs& c) {
  if (c.empty() || c[0] != 1) return false;
  for (std::size_t i = 1; i < c.size(); ++i)
    if (c[i] != 0) return false;
  return true;
}

}  // namespace ntruke::oracle
