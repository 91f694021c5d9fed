#include "leflab/exact_core.hpp"

#include <algorithm>
#include <utility>

namespace leflab {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t modulus) : p_(modulus) {
  if (modulus >= (std::uint64_t{1} << 32)) {
    throw precondition_error("modulus must be below 2^32");
  }
  if (!is_prime(modulus)) {
    throw precondition_error("modulus " + std::to_string(modulus) + " is not prime");
  }
}

void PrimeField::require_degree_bound(long long max_degree) const {
  if (max_degree < 0) return;
  if (p_ <= 2 * static_cast<std::uint64_t>(max_degree)) {
    throw prime_too_small_error("prime " + std::to_string(p_) +
                                " too small for degree " + std::to_string(max_degree));
  }
}

Elem PrimeField::from_int(long long v) const {
  long long p = static_cast<long long>(p_);
  long long r = v % p;
  if (r < 0) r += p;
  return static_cast<Elem>(r);
}

Elem PrimeField::pow(Elem base, std::uint64_t exp) const {
  Elem result = 1 % p_;
  base %= p_;
  while (exp > 0) {
    if (exp & 1) result = mul(result, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return result;
}

Elem PrimeField::inv(Elem a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero");
  return pow(a, p_ - 2);
}

DenseMatrix::DenseMatrix(PrimeField field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

DenseMatrix DenseMatrix::from_rows(PrimeField field,
                                   const std::vector<std::vector<long long>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  DenseMatrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw precondition_error("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      m.data_[r * cols + c] = field.from_int(rows[r][c]);
    }
  }
  return m;
}

DenseMatrix DenseMatrix::identity(PrimeField field, std::size_t n) {
  DenseMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

namespace {

// row[c] -= factor * pivot_row[c] for c >= from. Entries < p < 2^32.
void eliminate(const PrimeField& f, std::span<Elem> row,
               std::span<const Elem> pivot_row, Elem factor, std::size_t from) {
  const Elem p = f.modulus();
  const Elem neg = f.neg(factor);
  for (std::size_t c = from; c < row.size(); ++c) {
    if (pivot_row[c] != 0) row[c] = (row[c] + neg * pivot_row[c]) % p;
  }
}

}  // namespace

std::size_t matrix_rank(const DenseMatrix& m) {
  DenseMatrix work = m;
  const PrimeField& f = work.field();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < work.cols() && rank < work.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < work.rows() && work.at(pivot, col) == 0) ++pivot;
    if (pivot == work.rows()) continue;
    if (pivot != rank) {
      auto a = work.row(pivot);
      auto b = work.row(rank);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    auto prow = work.row(rank);
    const Elem scale = f.inv(prow[col]);
    for (std::size_t c = col; c < work.cols(); ++c) prow[c] = f.mul(prow[c], scale);
    for (std::size_t r = rank + 1; r < work.rows(); ++r) {
      Elem factor = work.at(r, col);
      if (factor != 0) eliminate(f, work.row(r), prow, factor, col);
    }
    ++rank;
  }
  return rank;
}

std::size_t kernel_dim(const DenseMatrix& m) { return m.cols() - matrix_rank(m); }

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw precondition_error("dimension mismatch in multiply");
  const PrimeField& f = a.field();
  DenseMatrix out(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Elem aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out.set(i, j, f.add(out.at(i, j), f.mul(aik, b.at(k, j))));
      }
    }
  }
  return out;
}

DenseMatrix transpose(const DenseMatrix& m) {
  DenseMatrix out(m.field(), m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.set(c, r, m.at(r, c));
  return out;
}

DenseMatrix stack(const DenseMatrix& top, const DenseMatrix& bottom) {
  if (top.cols() != bottom.cols()) throw precondition_error("column mismatch in stack");
  DenseMatrix out(top.field(), top.rows() + bottom.rows(), top.cols());
  for (std::size_t r = 0; r < top.rows(); ++r)
    for (std::size_t c = 0; c < top.cols(); ++c) out.set(r, c, top.at(r, c));
  for (std::size_t r = 0; r < bottom.rows(); ++r)
    for (std::size_t c = 0; c < top.cols(); ++c)
      out.set(top.rows() + r, c, bottom.at(r, c));
  return out;
}

std::optional<DenseMatrix> inverse(const DenseMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  const PrimeField& f = m.field();
  DenseMatrix work = m;
  DenseMatrix inv = DenseMatrix::identity(f, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work.at(pivot, col) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      auto a = work.row(pivot), b = work.row(col);
      std::swap_ranges(a.begin(), a.end(), b.begin());
      auto c = inv.row(pivot), d = inv.row(col);
      std::swap_ranges(c.begin(), c.end(), d.begin());
    }
    const Elem scale = f.inv(work.at(col, col));
    for (std::size_t c = 0; c < n; ++c) {
      work.set(col, c, f.mul(work.at(col, c), scale));
      inv.set(col, c, f.mul(inv.at(col, c), scale));
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      Elem factor = work.at(r, col);
      if (factor == 0) continue;
      eliminate(f, work.row(r), work.row(col), factor, 0);
      eliminate(f, inv.row(r), inv.row(col), factor, 0);
    }
  }
  return inv;
}

EchelonBasis::EchelonBasis(PrimeField field, std::size_t width)
    : field_(field), width_(width), is_pivot_(width, false) {}

void EchelonBasis::reduce(std::span<Elem> v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t piv = pivots_[i];
    if (v[piv] != 0) eliminate(field_, v, rows_[i], v[piv], piv);
  }
}

bool EchelonBasis::insert(std::vector<Elem> v) {
  if (v.size() != width_) throw precondition_error("vector width mismatch");
  if (rank() == width_) return false;
  reduce(v);
  auto lead = std::find_if(v.begin(), v.end(), [](Elem e) { return e != 0; });
  if (lead == v.end()) return false;
  const std::size_t piv = static_cast<std::size_t>(lead - v.begin());
  const Elem scale = field_.inv(*lead);
  for (std::size_t c = piv; c < width_; ++c) v[c] = field_.mul(v[c], scale);
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  is_pivot_[piv] = true;
  return true;
}

std::vector<std::size_t> EchelonBasis::free_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < width_; ++c)
    if (!is_pivot_[c]) out.push_back(c);
  return out;
}

}  // namespace leflab
