#pragma once

// Prime-field arithmetic and dense exact elimination.
//
// Everything in the oracle side of the project ends up as a rank computation
// over GF(p). The modulus is kept below 2^32 so that a product of two reduced
// elements plus one more reduced element fits in an unsigned 64-bit word.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace leflab {

using Elem = std::uint64_t;

/// Raised when an operation's documented precondition does not hold.
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class prime_too_small_error : public precondition_error {
 public:
  using precondition_error::precondition_error;
};

bool is_prime(std::uint64_t n);

class PrimeField {
 public:
  static constexpr std::uint64_t kDefaultModulus = 2147483647;  // 2^31 - 1

  explicit PrimeField(std::uint64_t modulus = kDefaultModulus);

  std::uint64_t modulus() const { return p_; }

  /// Throws precondition_error unless modulus > 2 * max_degree.
  void require_degree_bound(long long max_degree) const;

  Elem from_int(long long v) const;
  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p_; }
  Elem pow(Elem base, std::uint64_t exp) const;
  /// Inverse of a nonzero element (Fermat).
  Elem inv(Elem a) const;

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint64_t p_;
};

class DenseMatrix {
 public:
  DenseMatrix(PrimeField field, std::size_t rows, std::size_t cols);

  /// Entries are taken as signed integers and reduced into the field.
  static DenseMatrix from_rows(PrimeField field,
                               const std::vector<std::vector<long long>>& rows);
  static DenseMatrix identity(PrimeField field, std::size_t n);

  const PrimeField& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Elem v) {
    data_[r * cols_ + c] = v % field_.modulus();
  }
  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const Elem> entries() const { return data_; }

  bool operator==(const DenseMatrix&) const = default;

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> data_;
};

std::size_t matrix_rank(const DenseMatrix& m);
std::size_t kernel_dim(const DenseMatrix& m);

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix transpose(const DenseMatrix& m);
/// Rows of `top` followed by rows of `bottom`; column counts must agree.
DenseMatrix stack(const DenseMatrix& top, const DenseMatrix& bottom);
/// Gauss-Jordan inverse; nullopt when singular or non-square.
std::optional<DenseMatrix> inverse(const DenseMatrix& m);

/// Incrementally built row-echelon basis of a subspace of GF(p)^width.
///
/// Rows are stored with leading coefficient 1 at their pivot and are reduced
/// against every row inserted before them, so reducing a vector in insertion
/// order clears all pivot coordinates.
class EchelonBasis {
 public:
  EchelonBasis(PrimeField field, std::size_t width);

  std::size_t width() const { return width_; }
  std::size_t rank() const { return pivots_.size(); }
  std::span<const std::size_t> pivots() const { return pivots_; }

  /// Returns true when `v` was independent of the current span.
  bool insert(std::vector<Elem> v);
  /// Clears every pivot coordinate of `v` by subtracting basis rows.
  void reduce(std::span<Elem> v) const;
  /// Columns that are not pivots, ascending.
  std::vector<std::size_t> free_columns() const;

 private:
  PrimeField field_;
  std::size_t width_;
  std::vector<std::vector<Elem>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<bool> is_pivot_;
};

}  // namespace leflab
