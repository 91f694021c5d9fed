#pragma once

// Linear systems L_2(d; b_1, ..., b_n) of plane curves of degree d with
// multiplicity at least b_i at n general points, viewed as vector spaces.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leflab/exact_core.hpp"
#include "leflab/exponent_spec.hpp"

namespace leflab {

/// C(n, k), zero when k < 0 or n < k.
long long binom(long long n, long long k);

struct PlaneSystem {
  int degree = 0;          // may go negative inside reductions; dimension 0 then
  std::vector<int> mults;  // descending, zeros dropped

  /// Sorts descending and drops zero multiplicities. Negative entries throw.
  static PlaneSystem make(int degree, std::vector<int> mults);

  int count() const { return static_cast<int>(mults.size()); }
  /// b_i with 1-based index, 0 past the end.
  int mult(int i) const { return i <= count() ? mults[i - 1] : 0; }
  std::string to_string() const;

  bool operator==(const PlaneSystem&) const = default;
};

enum class StepKind { bezout, cremona, simple_points_split, terminal };

std::string to_string(StepKind kind);

struct ReductionStep {
  StepKind kind;
  PlaneSystem before;
  PlaneSystem after;
  std::string note;  // terminal reason, or the number of split points
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
};

/// max{0, C(d+2,2) - sum C(b_i+1,2)}.
long long expected_dim(const PlaneSystem& sys);

/// Rank oracle: for each point, every partial derivative of order b_i - 1
/// evaluated at a random point; dimension is C(d+2,2) minus the largest rank
/// seen over `trials` point configurations.
long long fatpoint_dim(const PlaneSystem& sys,
                       std::uint64_t prime = PrimeField::kDefaultModulus,
                       std::uint64_t seed = 0, int trials = 3);

/// (d; b_1, b_2, b_3, ...) -> (d+m; b_1+m, b_2+m, b_3+m, ...), m = d - b_1 - b_2 - b_3.
PlaneSystem cremona_step(const PlaneSystem& sys);
/// (d; b_1, b_2, ...) -> (d-1; b_1-1, b_2-1, ...), valid when d < b_1 + b_2.
PlaneSystem bezout_step(const PlaneSystem& sys);
bool is_standard_form(const PlaneSystem& sys);
/// Dimension of L_2(d; 2^m): expected, except 1 at (4,5) and (2,2).
long long ah_double_dim(int d, int m);

struct OracleFallback {
  std::uint64_t prime = PrimeField::kDefaultModulus;
  std::uint64_t seed = 0;
  int trials = 3;
};

struct SystemDim {
  long long dim = 0;
  ReductionTrace trace;
};

/// Dimension by reduction: split off simple points, then Bezout and Cremona
/// steps until a terminal system is reached.
SystemDim system_dim(const PlaneSystem& sys, const OracleFallback& fallback = {});

/// The system dual to [R/(L_1^{a_1}, ..., L_s^{a_s}, L^k)]_j in three variables:
/// multiplicity j - a_i + 1 for every a_i <= j, plus j - k + 1 when k <= j.
PlaneSystem ei_dual(const ExponentSpec& spec, int j,
                    std::optional<int> extra_power = std::nullopt);

}  // namespace leflab
