#pragma once

// Graded pieces of K[x_1, ..., x_r] in a fixed graded-lex monomial order.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "leflab/exact_core.hpp"

namespace leflab {

inline constexpr int kMaxVars = 8;
inline constexpr int kMaxDegree = 255;

/// Exponent vector. `key()` packs eight bits per variable, so the key of a
/// product of monomials is the sum of their keys.
struct Monomial {
  std::vector<int> exponents;

  int degree() const;
  std::uint64_t key() const;
  bool operator==(const Monomial&) const = default;
};

std::uint64_t monomial_key(const std::vector<int>& exponents);

class GradedBasis {
 public:
  GradedBasis() = default;
  GradedBasis(int num_vars, int degree, std::vector<Monomial> monomials);

  int num_vars() const { return num_vars_; }
  int degree() const { return degree_; }
  std::size_t size() const { return monomials_.size(); }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
  std::uint64_t key(std::size_t i) const { return keys_[i]; }
  std::optional<std::size_t> index_of(std::uint64_t key) const;

 private:
  int num_vars_ = 0;
  int degree_ = 0;
  std::vector<Monomial> monomials_;
  std::vector<std::uint64_t> keys_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// All monomials of `degree`, x_1^d first, lexicographic within the degree.
GradedBasis monomial_basis(int num_vars, int degree);

/// Monomials of `degree` with exponents[i] < caps[i]; a cap of -1 means
/// unbounded. Order is inherited from monomial_basis.
GradedBasis capped_basis(int num_vars, int degree, const std::vector<int>& caps);

struct LinearForm {
  std::vector<Elem> coeffs;

  int num_vars() const { return static_cast<int>(coeffs.size()); }
  bool is_zero() const;
};

/// Element of [R]_degree as coordinates in monomial_basis(num_vars, degree).
struct HomogeneousForm {
  int num_vars = 0;
  int degree = 0;
  std::vector<Elem> coeffs;
};

HomogeneousForm multiply_linear(const PrimeField& field, const HomogeneousForm& f,
                                const LinearForm& l);

/// Coordinates of l^a, built by multiplying by l one degree at a time.
HomogeneousForm power_coords(const PrimeField& field, const LinearForm& l, int a);

/// Matrix of multiplication by f from [R]_{j-k} to [R]_j, k = f.degree.
/// Column c holds the coordinates of f times the c-th monomial of degree j-k.
DenseMatrix mult_matrix(const PrimeField& field, const HomogeneousForm& f,
                        int target_degree);

}  // namespace leflab
