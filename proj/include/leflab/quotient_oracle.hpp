#pragma once

// Brute-force ground truth for R/I, I = (L_1^{a_1}, ..., L_s^{a_s}), with the
// L_i realized as random linear forms over a large prime field.
//
// Internally the ring is rewritten in coordinates y_i = L_i(x) for the first
// min(s, r) forms (those with the smallest exponents). Their powers become
// monomials y_i^{a_i}, so a graded piece of R/I is the span of the monomials
// with y_i-exponent below a_i, modulo the images of the remaining generators.
// ideal_piece_dim_direct() skips the change of coordinates and is kept as
// a reference route.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "leflab/exact_core.hpp"
#include "leflab/exponent_spec.hpp"
#include "leflab/polyring.hpp"

namespace leflab {

inline constexpr int kDefaultTrials = 5;

struct IdealSample {
  ExponentSpec spec;
  std::vector<LinearForm> forms;  // forms[i] carries exponent spec.exponents[i]
  std::uint64_t prime = PrimeField::kDefaultModulus;
  std::uint64_t seed = 0;
};

struct RankReport {
  int k = 0;
  int j = 0;
  int dim_domain = 0;
  int dim_codomain = 0;
  int rank = 0;
  int kernel_dim = 0;
  int cokernel_dim = 0;
  int trials_used = 0;

  bool maximal() const { return rank == std::min(dim_domain, dim_codomain); }
  int deficiency() const { return std::min(dim_domain, dim_codomain) - rank; }
};

struct HilbertData {
  std::vector<int> values;  // degrees 0 .. regularity
  int regularity = 0;
};

struct ScanFailure {
  int degree = 0;  // target degree j of x L^k : [R/I]_{j-k} -> [R/I]_j
  int deficiency = 0;
  int kernel_dim = 0;
  int cokernel_dim = 0;

  bool operator==(const ScanFailure&) const = default;
};

/// Draws s forms with uniform coordinates, resampling until every r of them
/// are linearly independent. Requires prime > 2 (a_s + s + 10).
IdealSample sample_ideal(const ExponentSpec& spec,
                         std::uint64_t prime = PrimeField::kDefaultModulus,
                         std::uint64_t seed = 0);

class QuotientOracle {
 public:
  explicit QuotientOracle(IdealSample sample);

  const IdealSample& sample() const { return sample_; }
  const PrimeField& field() const { return field_; }

  int ideal_piece_dim(int j);
  int quotient_dim(int j);
  /// dim [R/(I, f^k)]_j, f given in the original coordinates.
  int quotient_dim_with_power(const LinearForm& f, int k, int j);
  /// Rank of the matrix of x f^k from [R/I]_{j-k} to [R/I]_j written in
  /// normal-form coordinates of both pieces.
  int induced_mult_rank(const LinearForm& f, int k, int j);

  HilbertData hilbert_function();
  int regularity();

  /// Rank of x L^k into degree j for a general L: the maximum over `trials`
  /// random L of quotient_dim(j) - quotient_dim_with_power(L, k, j). Stops
  /// early once the rank is maximal.
  RankReport mult_rank_report(int k, int j, int trials = kDefaultTrials);
  /// Failures of maximal rank for j = k .. regularity + k.
  std::vector<ScanFailure> lefschetz_scan(int k, int trials = kDefaultTrials);

  /// The random form used as L in trial `trial` for power k.
  LinearForm general_form(int k, int trial) const;

 private:
  struct Generator {
    int exponent;
    HomogeneousForm power;  // in adapted coordinates
  };

  const GradedBasis& working(int j);
  const EchelonBasis& ideal_part(int j);
  const GradedBasis& full_basis(int degree);
  LinearForm to_adapted(const LinearForm& f) const;
  std::vector<Elem> project_product(const HomogeneousForm& power, std::uint64_t mono_key,
                                    const GradedBasis& target);
  void require_artinian() const;

  IdealSample sample_;
  PrimeField field_;
  int num_vars_;
  std::vector<int> caps_;
  std::vector<Generator> extras_;
  DenseMatrix adapt_;  // row vector of x-coefficients times adapt_ = y-coefficients
  std::map<int, GradedBasis> working_;
  std::map<int, GradedBasis> full_;
  std::map<int, EchelonBasis> ideal_;
  std::optional<HilbertData> hilbert_;
};

int ideal_piece_dim(const IdealSample& sample, int j);
/// dim [I]_j as the rank of all m * L_i^{a_i}, deg m = j - a_i, in the
/// original coordinates.
int ideal_piece_dim_direct(const IdealSample& sample, int j);
int quotient_dim(const IdealSample& sample, int j);
HilbertData hilbert_function(const IdealSample& sample);
int regularity(const IdealSample& sample);
RankReport mult_rank_report(const IdealSample& sample, int k, int j,
                            int trials = kDefaultTrials);
std::vector<ScanFailure> lefschetz_scan(const IdealSample& sample, int k,
                                        int trials = kDefaultTrials);

}  // namespace leflab
