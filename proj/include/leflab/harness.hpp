#pragma once

// Theory-versus-oracle verification sweeps and the command-line entry point.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "leflab/exponent_spec.hpp"
#include "leflab/lefschetz_theory.hpp"
#include "leflab/quotient_oracle.hpp"

namespace leflab {

inline constexpr std::uint64_t kSecondPrime = 2147483629;

struct SweepConfig {
  int num_vars = 3;
  int s_min = 0;  // s_min > s_max or a_min > a_max gives an empty range
  int s_max = -1;
  int a_min = 0;
  int a_max = -1;
  std::vector<ExponentSpec> specs;  // used in addition to the ranges
  int random_count = 0;             // > 0: draw this many distinct specs from the ranges
  std::vector<int> ks{3};
  std::vector<std::uint64_t> primes{PrimeField::kDefaultModulus, kSecondPrime};
  int trials = kDefaultTrials;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: hardware concurrency
  bool timing = false;

  /// Throws precondition_error for an unusable configuration.
  void validate() const;
};

struct VerificationRow {
  ExponentSpec spec;
  int k = 0;
  std::optional<Verdict> theory;  // nullopt when no closed form covers the case
  std::vector<ScanFailure> oracle;
  bool agree = true;
  bool rerun = false;
  std::uint64_t prime = 0;  // prime behind the reported oracle data
  long long millis = 0;
};

struct VerificationSummary {
  int rows = 0;
  int agreements = 0;
  int disagreements = 0;
  int unpredicted = 0;
  int reruns = 0;
};

struct VerificationReport {
  std::vector<VerificationRow> rows;
  VerificationSummary summary;
};

/// Specs selected by the ranges, the random draw and the explicit list,
/// sorted and deduplicated.
std::vector<ExponentSpec> sweep_specs(const SweepConfig& config);

/// True iff both sides list the same degrees with matching deficiency and
/// cokernel, and matching kernel wherever the theory states one.
bool failures_agree(const std::vector<TheoryFailure>& theory,
                    const std::vector<ScanFailure>& oracle);

VerificationRow verify_one(const ExponentSpec& spec, int k, const SweepConfig& config);
VerificationReport run_verification(const SweepConfig& config);

/// Runs the `leflab` command line. Returns the process exit code.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace leflab
