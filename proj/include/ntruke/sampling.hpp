#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "ntruke/params.hpp"
#include "ntruke/ring.hpp"

namespace ntruke {

/// Deterministic random source.
///
/// Output is the raw std::mt19937_64 stream, whose values are fixed by the
/// C++ standard for a given seed. Bounded draws use rejection sampling
/// implemented here rather than std::uniform_int_distribution, whose output
/// differs between standard library implementations. Not cryptographic.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound). bound must be nonzero.
  std::uint64_t uniform(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Fixed-weight ternary sample space: exactly num_plus coefficients equal to
/// +1 and num_minus equal to -1.
struct TernarySpec {
  std::int64_t num_plus = 0;
  std::int64_t num_minus = 0;

  bool operator==(const TernarySpec&) const = default;

  /// Space of private keys f: (d_f, d_f - 1).
  static TernarySpec for_f(const Params& params) { return {params.d_f, params.d_f - 1}; }
  static TernarySpec for_g(const Params& params) { return {params.d_g, params.d_g}; }
  static TernarySpec for_r(const Params& params) { return {params.d_r, params.d_r}; }
};

/// Places the nonzero coefficients by a partial Fisher-Yates shuffle of the
/// N positions. Throws InvalidSpec when the counts do not fit in N.
[[nodiscard]] Poly sample_ternary(const TernarySpec& spec, const Params& params, Rng& rng);

struct InvertibleSample {
  Poly f;
  Poly inv_q;
  std::optional<Poly> inv_p;
};

inline constexpr int kInvertibleRetryBudget = 100;

/// Redraws until f is invertible mod q (and mod p when require_mod_p).
/// Each inverse is checked by convolution before it is returned.
/// Throws SamplingFailure after kInvertibleRetryBudget draws.
[[nodiscard]] InvertibleSample sample_invertible(const TernarySpec& spec, const Params& params,
                                                 Rng& rng, bool require_mod_p);

}  // namespace ntruke
