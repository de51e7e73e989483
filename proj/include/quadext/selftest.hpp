#pragma once

// End-to-end corpus run: generate instances, extend, verify.

#include "quadext/verify.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace quadext {

struct SelftestOptions {
  int instances = 1;
  std::uint64_t seed = 0;
  int samples = 100000;
  double tol = 1e-9;
  double conditioning = 1e3;
  unsigned threads = 0;  // 0: hardware concurrency
};

enum class InstanceOutcome { passed, verify_failed, degenerate_z, error };

struct InstanceResult {
  int index = 0;
  InstanceSpec spec;
  InstanceOutcome outcome = InstanceOutcome::error;
  VerificationReport verification;
  std::string message;
  double seconds = 0.0;
};

struct SelftestSummary {
  std::vector<InstanceResult> results;
  int passed = 0;
  int degenerate_z = 0;
  double worst_agreement = 0.0;
  /// max of extended_norm / original_norm - 1.
  double worst_norm_excess = 0.0;
  /// max of sampled_lower_bound - extended_norm.
  double worst_sampler_gap = -1e300;
  double seconds = 0.0;

  bool all_passed() const { return passed == static_cast<int>(results.size()); }
};

/// The i-th instance cycles through (n, k) with n in 2..6 and k in 1..n-1,
/// seeded with seed + i.
InstanceSpec selftest_spec(int index, std::uint64_t seed, double conditioning);

SelftestSummary run_selftest(const SelftestOptions& options);

/// Summary lines, failing instances first.
void print_selftest(const SelftestSummary& summary, std::ostream& out);

}  // namespace quadext
