#pragma once

// Seeded random instances. The stream is fixed: std::mt19937_64 (whose
// output sequence the C++ standard pins down) with doubles formed from the
// top 53 bits, so a seed reproduces the same numbers on every platform.

#include <cstdint>
#include <random>
#include <vector>

#include "furstenberg/flag_boundary.hpp"

namespace furstenberg {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1): (bits >> 11) * 2^-53.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Box-Muller on two uniform() draws.
  double normal();
  std::size_t index(std::size_t count);

 private:
  std::mt19937_64 engine_;
};

/// Entries uniform in [-1, 1] (real and imaginary parts for the complex field).
Matrix random_matrix(const GroupContext& ctx, Rng& rng);

/// Random element of SL(n) with Frobenius condition estimate below max_cond.
Matrix random_special_linear(const GroupContext& ctx, Rng& rng, double max_cond = 1e3);

/// Unipotent with strictly upper entries uniform in [-scale, scale].
UnipotentElement random_unipotent(const GroupContext& ctx, Rng& rng, double scale = 2.0);

/// exp of a centered log-vector with entries uniform in [-spread, spread].
TorusElement random_torus(const GroupContext& ctx, Rng& rng, double spread = 1.0);

/// Diagonal det-one matrix: entries +-1 (real field) or unit phases (complex).
Matrix random_m(const GroupContext& ctx, Rng& rng);

/// Random element of T = N_K(A): random_m times a random Weyl representative.
Matrix random_t(const GroupContext& ctx, Rng& rng);

/// Smallest oppositeness margin of chi(n) against the |W| chambers w P;
/// positive exactly when n lies in N_opp.
double nopp_margin(const GroupContext& ctx, const UnipotentElement& n);

/// random_unipotent resampled until nopp_margin exceeds min_margin.
/// Throws GenerationExhausted after max_attempts draws.
UnipotentElement random_generic_unipotent(const GroupContext& ctx, Rng& rng,
                                          double min_margin = 1e-3, double scale = 2.0,
                                          int max_attempts = 10000);

/// q flags with random_matrix representatives, resampled as a whole until
/// genericity_check(mode) passes with margin above min_margin.
std::vector<Flag> random_generic_flags(const GroupContext& ctx, Rng& rng, std::size_t q,
                                       GenericityMode mode, double min_margin,
                                       int max_attempts = 10000);

/// A context whose stored Weyl representatives are each left-multiplied by
/// an independent random element of M.
GroupContext twisted_context(const GroupContext& ctx, Rng& rng);

}  // namespace furstenberg
