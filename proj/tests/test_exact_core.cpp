#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "leflab/exact_core.hpp"

using namespace leflab;

namespace {

DenseMatrix random_matrix(const PrimeField& f, std::size_t rows, std::size_t cols,
                          std::mt19937_64& rng, int zero_percent = 0) {
  DenseMatrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (static_cast<int>(rng() % 100) < zero_percent) continue;
      m.set(r, c, rng() % f.modulus());
    }
  return m;
}

// Low-rank matrix as a product of random rows x k and k x cols factors.
DenseMatrix rank_k_matrix(const PrimeField& f, std::size_t rows, std::size_t cols,
                          std::size_t k, std::mt19937_64& rng) {
  return multiply(random_matrix(f, rows, k, rng), random_matrix(f, k, cols, rng));
}

}  // namespace

TEST_CASE("prime field arithmetic") {
  const PrimeField f;
  CHECK(f.modulus() == 2147483647u);
  CHECK(f.add(f.modulus() - 1, 1) == 0);
  CHECK(f.sub(0, 1) == f.modulus() - 1);
  CHECK(f.from_int(-1) == f.modulus() - 1);
  CHECK(f.mul(f.from_int(-1), f.from_int(-1)) == 1);
  for (Elem a : {Elem{1}, Elem{2}, Elem{12345}, f.modulus() - 1}) {
    CHECK(f.mul(a, f.inv(a)) == 1);
  }
  CHECK(f.pow(3, 0) == 1);
  CHECK(f.pow(2, 31) == 1);  // 2^31 = 1 mod 2^31 - 1
  CHECK_THROWS_AS((void)f.inv(0), std::domain_error);

  const PrimeField small(7);
  CHECK(small.mul(3, 5) == 1);
  CHECK(small.inv(3) == 5);
}

TEST_CASE("prime field rejects bad moduli and small primes") {
  CHECK_THROWS_AS(PrimeField(10), precondition_error);
  CHECK_THROWS_AS(PrimeField(1), precondition_error);
  CHECK_THROWS_AS(PrimeField(4294967311ull), precondition_error);  // prime above 2^32
  const PrimeField f(11);
  CHECK_NOTHROW(f.require_degree_bound(5));
  CHECK_THROWS_AS(f.require_degree_bound(6), prime_too_small_error);
}

TEST_CASE("matrix_rank and kernel_dim examples") {
  const PrimeField f;
  const DenseMatrix zero(f, 3, 3);
  CHECK(matrix_rank(zero) == 0);
  CHECK(kernel_dim(zero) == 3);

  const DenseMatrix id = DenseMatrix::identity(f, 4);
  CHECK(matrix_rank(id) == 4);
  CHECK(kernel_dim(id) == 0);

  const auto prop = DenseMatrix::from_rows(f, {{1, 2, 3}, {2, 4, 6}});
  CHECK(matrix_rank(prop) == 1);
  CHECK(kernel_dim(prop) == 2);

  CHECK(matrix_rank(DenseMatrix(f, 0, 0)) == 0);
  CHECK(matrix_rank(DenseMatrix(f, 0, 5)) == 0);
  CHECK(kernel_dim(DenseMatrix(f, 0, 5)) == 5);
}

TEST_CASE("entries are reduced and stored row-major") {
  const PrimeField f(13);
  const auto m = DenseMatrix::from_rows(f, {{14, -1}, {26, 5}});
  CHECK(m.entries().size() == 4);
  CHECK(m.at(0, 0) == 1);
  CHECK(m.at(0, 1) == 12);
  CHECK(m.at(1, 0) == 0);
  CHECK(m.at(1, 1) == 5);
  CHECK_THROWS_AS(DenseMatrix::from_rows(f, {{1, 2}, {3}}), precondition_error);
}

TEST_CASE("rank of planted low-rank products") {
  const PrimeField f;
  std::mt19937_64 rng(7);
  for (int t = 0; t < 30; ++t) {
    const std::size_t rows = 1 + rng() % 12, cols = 1 + rng() % 12;
    const std::size_t k = rng() % (std::min(rows, cols) + 1);
    CHECK(matrix_rank(rank_k_matrix(f, rows, cols, k, rng)) == k);
  }
}

TEST_CASE("rank over a small field agrees with a brute-force span count") {
  // Over GF(3), the row space of an r-row matrix has 3^rank elements.
  const PrimeField f(3);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    const DenseMatrix m = random_matrix(f, rows, cols, rng, 40);
    std::vector<std::vector<Elem>> span;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < rows; ++i) combos *= 3;
    for (std::size_t code = 0; code < combos; ++code) {
      std::vector<Elem> v(cols, 0);
      std::size_t c = code;
      for (std::size_t r = 0; r < rows; ++r, c /= 3)
        for (std::size_t j = 0; j < cols; ++j) v[j] = f.add(v[j], f.mul(c % 3, m.at(r, j)));
      span.push_back(v);
    }
    std::sort(span.begin(), span.end());
    span.erase(std::unique(span.begin(), span.end()), span.end());
    std::size_t expected = 0, size = 1;
    while (size < span.size()) size *= 3, ++expected;
    CHECK(size == span.size());
    CHECK(matrix_rank(m) == expected);
  }
}

TEST_CASE("rank properties") {
  const PrimeField f;
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 40; ++t) {
    const std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 9;
    const std::size_t k = rng() % (std::min(rows, cols) + 1);
    DenseMatrix m = rank_k_matrix(f, rows, cols, k, rng);
    const std::size_t r = matrix_rank(m);
    CHECK(r <= std::min(rows, cols));

    std::vector<std::size_t> perm(rows);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    DenseMatrix shuffled(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      const Elem scale = 1 + rng() % (f.modulus() - 1);
      for (std::size_t c = 0; c < cols; ++c)
        shuffled.set(i, c, f.mul(scale, m.at(perm[i], c)));
    }
    CHECK(matrix_rank(shuffled) == r);

    const DenseMatrix other = random_matrix(f, 1 + rng() % 5, cols, rng, 50);
    const std::size_t stacked = matrix_rank(stack(m, other));
    CHECK(stacked >= std::max(r, matrix_rank(other)));
    CHECK(stacked <= r + matrix_rank(other));
    CHECK(matrix_rank(transpose(m)) == r);
    CHECK(kernel_dim(m) == cols - r);
  }
}

TEST_CASE("inverse") {
  const PrimeField f;
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 1 + rng() % 7;
    const DenseMatrix m = random_matrix(f, n, n, rng);
    const auto inv = inverse(m);
    REQUIRE(inv.has_value());
    CHECK(multiply(m, *inv) == DenseMatrix::identity(f, n));
  }
  CHECK_FALSE(inverse(DenseMatrix::from_rows(f, {{1, 2}, {2, 4}})).has_value());
  CHECK_FALSE(inverse(DenseMatrix(f, 2, 3)).has_value());
}

TEST_CASE("echelon basis tracks rank and clears pivots") {
  const PrimeField f;
  std::mt19937_64 rng(99);
  for (int t = 0; t < 20; ++t) {
    const std::size_t rows = 1 + rng() % 10, cols = 1 + rng() % 10;
    const DenseMatrix m = rank_k_matrix(f, rows, cols, rng() % (std::min(rows, cols) + 1), rng);
    EchelonBasis basis(f, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      auto row = m.row(r);
      basis.insert(std::vector<Elem>(row.begin(), row.end()));
    }
    CHECK(basis.rank() == matrix_rank(m));
    CHECK(basis.free_columns().size() == cols - basis.rank());
    for (std::size_t r = 0; r < rows; ++r) {
      auto src = m.row(r);
      std::vector<Elem> v(src.begin(), src.end());
      basis.reduce(v);
      CHECK(std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; }));
    }
  }
  EchelonBasis b(f, 3);
  CHECK(b.insert({0, 1, 2}));
  CHECK_FALSE(b.insert({0, 2, 4}));
  CHECK_THROWS_AS(b.insert({1, 2}), precondition_error);
}
