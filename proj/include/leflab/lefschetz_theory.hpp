#pragma once

// Closed-form Lefschetz verdicts for quotients by powers of general linear
// forms, computed from the exponent multiset alone.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leflab/exponent_spec.hpp"

namespace leflab {

/// counts[j] = #{a_i <= j} for j = 0 .. j_max.
struct NVector {
  std::vector<int> counts;

  int at(int j) const;           // 0 for j < 0; throws past j_max
  int partial_sum(int j) const;  // n_0 + ... + n_j
};

NVector n_counts(const ExponentSpec& spec, int j_max);

/// max{ j : sum_{a_i <= j} (j + 1 - a_i) <= j }. Needs s >= 2.
int compute_p(const ExponentSpec& spec);
int compute_p_uniform(int s, int t);

/// Right-hand side of the injectivity criterion for x L^k into degree j:
/// equality with dim [R/(I, L^k)]_j certifies injectivity.
/// Needs k >= 1 and j >= max(k, a_s).
long long magic_rhs(const ExponentSpec& spec, int k, int j);

enum class Status { maximal_everywhere, fails };

std::string to_string(Status status);

struct TheoryFailure {
  int degree = 0;               // target degree j
  std::optional<int> kernel;    // unset when not determined
  int cokernel = 0;
  int deficiency = 1;

  bool operator==(const TheoryFailure&) const = default;
};

struct Witness {
  std::optional<int> p;
  std::vector<std::pair<std::string, long long>> values;

  std::optional<long long> get(const std::string& name) const;
};

struct Verdict {
  std::string property;  // e.g. "xL^3", "WLP", "SLP"
  Status status = Status::maximal_everywhere;
  std::vector<TheoryFailure> failures;
  Witness witness;
  std::string reason;

  bool fails() const { return status == Status::fails; }
  std::vector<int> failing_degrees() const;
};

Verdict classify_square(const ExponentSpec& spec);

/// Multiplication by the cube of a general form, three variables. When the
/// failure conditions hold the witness carries m, n, q, d and the predicted
/// dimensions of [A]_{p-1} and [A]_{p+2}, which are checked to be equal.
Verdict classify_cube(const ExponentSpec& spec);
Verdict classify_cube_uniform(int s, int t);

Verdict slp_quadric_3vars(const ExponentSpec& spec);
Verdict wlp_quadric_4vars(const ExponentSpec& spec);

struct PowerVerdict {
  int b = 0;
  int p_after = 0;  // p of the spec with b adjoined
  Verdict verdict;  // x l^3 on R/(I, L^b)
};

struct SlpCubeResult {
  bool slp = true;
  int p = 0;
  std::vector<PowerVerdict> per_power;  // b = 3 .. p
};

/// SLP of A/l^3 A via x l^3 on A/L^b A for every 3 <= b <= p(A).
SlpCubeResult slp_cube_char(const ExponentSpec& spec);
bool slp_cube_uniform(int s, int t);

struct FailingPowers {
  std::vector<int> asserted;     // b <= t
  std::vector<int> exploratory;  // t < b < reg_bound, conjectural
};

/// Powers b for which x L^b fails on A/l^3 A, A = R/(L_1^t, ..., L_s^t).
/// Needs s odd, s >= 3, t >= s; reg_bound = reg(A/l^3 A).
FailingPowers failing_powers_cube(int s, int t, int reg_bound);

/// WLP of K[x_1..x_4]/(l^3, L_1^t, ..., L_s^t). Needs s >= 4, t >= 3.
Verdict wlp_cube_uniform_4vars(int s, int t);

struct ExchangeFacts {
  int b = 0;
  int k = 0;
  bool wlp_a = false;
  bool lk_on_a = false;          // x l^k maximal on A
  bool lk_on_a_mod_lb = false;   // x l^k maximal on A/L^b A
  bool lb_on_a = false;          // x L^b maximal on A
};

struct ExchangeConclusion {
  char variant = 'a';
  std::string statement;
};

std::optional<ExchangeConclusion> exchange_implication(const ExchangeFacts& facts);

/// Failure set of x L^k predicted by whichever result covers (spec, k), or
/// nullopt when no closed form applies. Exponent 1 reduces the variable count.
std::optional<Verdict> predict_lefschetz(const ExponentSpec& spec, int k);

}  // namespace leflab
