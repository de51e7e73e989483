#pragma once

// Independent oracles and seeded instance generators. The sampler below
// shares no code with the certificate-based norm computation.

#include "quadext/core.hpp"

#include <cstdint>
#include <string>
#include <utility>

namespace quadext {

struct InstanceSpec {
  Eigen::Index n = 2;
  Eigen::Index k = 1;
  std::uint64_t seed = 0;
  double conditioning = 1e3;
};

struct SampledBound {
  double value = 0.0;
  /// Maximizing direction, scaled to max-norm 1.
  Vector witness;
};

/// Monte-Carlo lower bound on sup |B(x)| over the two-ellipsoid unit sphere,
/// refined by coordinate ascent on the homogeneous ratio. Deterministic in
/// the seed.
SampledBound sample_norm_lower_bound(const SymForm& b, const InnerProduct& a1, const InnerProduct& a2,
                                     int samples, std::uint64_t seed);

struct VerifyTolerances {
  double agreement = 1e-9;
  double norm_rel = 1e-6;
  double norm_abs = 1e-9;
  double sampler_abs = 1e-7;
  int samples = 100000;
  std::uint64_t seed = 0;
};

struct VerificationReport {
  bool restriction_ok = false;
  bool norm_ok = false;
  bool sampler_ok = false;
  double agreement_residual = 0.0;
  double original_norm = 0.0;
  double extended_norm = 0.0;
  double sampled_lower_bound = 0.0;

  bool passed() const { return restriction_ok && norm_ok && sampler_ok; }
};

/// Max over pairs of basis vectors u_i, u_j of Y of |u_i^T Bt u_j - P_ij|,
/// divided by max(1, max |P_ij|).
double agreement_residual(const QuadOnSubspace& p, const SymForm& extended);

VerificationReport verify_extension(const TwoEllipsoidSpace& space, const QuadOnSubspace& p,
                                    const SymForm& extended, const VerifyTolerances& tol = {});

/// Random inner products Q D Q^T (Haar-ish orthogonal Q, log-uniform D in
/// [1, conditioning]), a random k-dimensional subspace and a random form on it
/// scaled to norm 1.
std::pair<TwoEllipsoidSpace, QuadOnSubspace> random_instance(const InstanceSpec& spec);

struct LemmaAInstance {
  SymForm p;
  SymForm q;
  double alpha_planted;
};

/// P = S + (1-a)D, Q = S - aD, so that a*P + (1-a)*Q = S is PSD.
LemmaAInstance lemma_a_instance(const SymForm& s, const SymForm& delta, double alpha_planted);
LemmaAInstance lemma_a_instance(std::uint64_t seed);

struct SandwichInstance {
  SymForm a1;
  SymForm a2;
  SymForm b;
  double alpha_planted;
  double beta_planted;
};

/// B = A_alpha - R with 0 <= R <= A_alpha + A_beta, so both sides of the
/// sandwich hold at the planted parameters.
SandwichInstance sandwich_instance(Eigen::Index n, std::uint64_t seed);

/// Random SPD matrix Q D Q^T with log-uniform spectrum in [1, conditioning].
Matrix random_spd(Eigen::Index n, double conditioning, std::uint64_t seed);

}  // namespace quadext
