#include "quadext/selftest.hpp"

#include "quadext/extend.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <ostream>
#include <thread>
#include <utility>

namespace quadext {

namespace {

constexpr std::array<std::pair<int, int>, 15> kShapes = {{
    {2, 1}, {3, 1}, {3, 2}, {4, 1}, {4, 2}, {4, 3}, {5, 1}, {5, 2},
    {5, 3}, {5, 4}, {6, 1}, {6, 2}, {6, 3}, {6, 4}, {6, 5},
}};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

InstanceResult run_one(int index, const SelftestOptions& options) {
  InstanceResult r;
  r.index = index;
  r.spec = selftest_spec(index, options.seed, options.conditioning);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    auto [space, quad] = random_instance(r.spec);
    ExtendOptions ext;
    ext.tol = options.tol;
    const ExtensionReport report = extend(space, quad, ext);
    VerifyTolerances vt;
    vt.samples = options.samples;
    vt.seed = r.spec.seed;
    r.verification = verify_extension(space, quad, report.extended, vt);
    r.outcome = r.verification.passed() ? InstanceOutcome::passed : InstanceOutcome::verify_failed;
  } catch (const DegenerateZ& e) {
    r.outcome = InstanceOutcome::degenerate_z;
    r.message = e.what();
  } catch (const std::exception& e) {
    r.outcome = InstanceOutcome::error;
    r.message = e.what();
  }
  r.seconds = seconds_since(t0);
  return r;
}

const char* outcome_name(InstanceOutcome o) {
  switch (o) {
    case InstanceOutcome::passed: return "pass";
    case InstanceOutcome::verify_failed: return "verify-failed";
    case InstanceOutcome::degenerate_z: return "degenerate-z";
    case InstanceOutcome::error: return "error";
  }
  return "?";
}

}  // namespace

InstanceSpec selftest_spec(int index, std::uint64_t seed, double conditioning) {
  const auto& [n, k] = kShapes[static_cast<std::size_t>(index) % kShapes.size()];
  return {n, k, seed + static_cast<std::uint64_t>(index), conditioning};
}

SelftestSummary run_selftest(const SelftestOptions& options) {
  if (options.instances < 1) throw InvalidInput("selftest: instances must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  SelftestSummary summary;
  summary.results.resize(static_cast<std::size_t>(options.instances));

  unsigned workers = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(options.instances));
  std::atomic<int> next{0};
  const auto work = [&] {
    for (int i = next++; i < options.instances; i = next++)
      summary.results[static_cast<std::size_t>(i)] = run_one(i, options);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  for (const InstanceResult& r : summary.results) {
    if (r.outcome == InstanceOutcome::passed) ++summary.passed;
    if (r.outcome == InstanceOutcome::degenerate_z) ++summary.degenerate_z;
    if (r.outcome == InstanceOutcome::passed || r.outcome == InstanceOutcome::verify_failed) {
      const VerificationReport& v = r.verification;
      summary.worst_agreement = std::max(summary.worst_agreement, v.agreement_residual);
      if (v.original_norm > 0.0)
        summary.worst_norm_excess = std::max(summary.worst_norm_excess, v.extended_norm / v.original_norm - 1.0);
      summary.worst_sampler_gap = std::max(summary.worst_sampler_gap, v.sampled_lower_bound - v.extended_norm);
    }
  }
  summary.seconds = seconds_since(t0);
  return summary;
}

void print_selftest(const SelftestSummary& summary, std::ostream& out) {
  for (const InstanceResult& r : summary.results) {
    if (r.outcome == InstanceOutcome::passed) continue;
    out << "instance " << r.index << " n=" << r.spec.n << " k=" << r.spec.k << " seed=" << r.spec.seed << ": "
        << outcome_name(r.outcome);
    if (!r.message.empty()) out << " (" << r.message << ")";
    if (r.outcome == InstanceOutcome::verify_failed) {
      const VerificationReport& v = r.verification;
      out << " agreement=" << v.agreement_residual << " original=" << v.original_norm
          << " extended=" << v.extended_norm << " sampled=" << v.sampled_lower_bound;
    }
    out << '\n';
  }
  out << "passed " << summary.passed << "/" << summary.results.size() << '\n'
      << "degenerate-z " << summary.degenerate_z << '\n'
      << "worst agreement residual " << summary.worst_agreement << '\n'
      << "worst norm excess " << summary.worst_norm_excess << '\n'
      << "worst sampler gap " << summary.worst_sampler_gap << '\n'
      << "elapsed " << summary.seconds << " s\n";
}

}  // namespace quadext
