#include "ntruke/sampling.hpp"

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ntruke/errors.hpp"

namespace ntruke {

std::uint64_t Rng::uniform(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::uniform: zero bound");
  // Reject the low 2^64 mod bound values so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = next();
    if (x >= threshold) return x % bound;
  }
}

Poly sample_ternary(const TernarySpec& spec, const Params& params, Rng& rng) {
  if (spec.num_plus < 0 || spec.num_minus < 0 || spec.num_plus + spec.num_minus > params.n) {
    throw InvalidSpec("ternary spec (" + std::to_string(spec.num_plus) + ", " +
                      std::to_string(spec.num_minus) + ") does not fit N=" +
                      std::to_string(params.n));
  }
  const auto n = static_cast<std::size_t>(params.n);
  const auto weight = static_cast<std::size_t>(spec.num_plus + spec.num_minus);

  std::vector<std::size_t> positions(n);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  for (std::size_t i = 0; i < weight; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform(n - i));
    std::swap(positions[i], positions[j]);
  }

  Poly out = Poly::zero(n);
  for (std::size_t i = 0; i < weight; ++i) {
    out[positions[i]] = i < static_cast<std::size_t>(spec.num_plus) ? 1 : -1;
  }
  return out;
}

InvertibleSample sample_invertible(const TernarySpec& spec, const Params& params, Rng& rng,
                                   bool require_mod_p) {
  const Poly unit = Poly::unit(static_cast<std::size_t>(params.n));
  for (int attempt = 0; attempt < kInvertibleRetryBudget; ++attempt) {
    Poly f = sample_ternary(spec, params, rng);
    auto inv_q = inverse_mod(f, params.q);
    if (!inv_q || conv_mul(f, *inv_q, params.q) != unit) continue;
    std::optional<Poly> inv_p;
    if (require_mod_p) {
      inv_p = inverse_mod(f, params.p);
      if (!inv_p || conv_mul(f, *inv_p, params.p) != unit) continue;
    }
    return InvertibleSample{std::move(f), std::move(*inv_q), std::move(inv_p)};
  }
  throw SamplingFailure("no invertible draw in " + std::to_string(kInvertibleRetryBudget) +
                        " attempts for spec (" + std::to_string(spec.num_plus) + ", " +
                        std::to_string(spec.num_minus) + ")");
}

}  // namespace ntruke
