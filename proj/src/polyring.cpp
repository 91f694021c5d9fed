#include "leflab/polyring.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace leflab {

namespace {

void check_shape(int num_vars, int degree) {
  if (num_vars < 1 || num_vars > kMaxVars) {
    throw precondition_error("number of variables must be in [1, " +
                             std::to_string(kMaxVars) + "]");
  }
  if (degree < 0 || degree > kMaxDegree) {
    throw precondition_error("degree must be in [0, " + std::to_string(kMaxDegree) + "]");
  }
}

void enumerate(int var, int remaining, std::vector<int>& current,
               const std::vector<int>& caps, std::vector<Monomial>& out) {
  const int r = static_cast<int>(current.size());
  if (var == r - 1) {
    if (caps[var] < 0 || remaining < caps[var]) {
      current[var] = remaining;
      out.push_back(Monomial{current});
    }
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    if (caps[var] >= 0 && e >= caps[var]) continue;
    current[var] = e;
    enumerate(var + 1, remaining - e, current, caps, out);
  }
  current[var] = 0;
}

}  // namespace

int Monomial::degree() const {
  return std::accumulate(exponents.begin(), exponents.end(), 0);
}

std::uint64_t monomial_key(const std::vector<int>& exponents) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    key |= static_cast<std::uint64_t>(exponents[i]) << (8 * i);
  }
  return key;
}

std::uint64_t Monomial::key() const { return monomial_key(exponents); }

GradedBasis::GradedBasis(int num_vars, int degree, std::vector<Monomial> monomials)
    : num_vars_(num_vars), degree_(degree), monomials_(std::move(monomials)) {
  keys_.reserve(monomials_.size());
  index_.reserve(monomials_.size());
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    keys_.push_back(monomials_[i].key());
    index_.emplace(keys_.back(), i);
  }
}

std::optional<std::size_t> GradedBasis::index_of(std::uint64_t key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

GradedBasis monomial_basis(int num_vars, int degree) {
  return capped_basis(num_vars, degree, std::vector<int>(std::max(num_vars, 0), -1));
}

GradedBasis capped_basis(int num_vars, int degree, const std::vector<int>& caps) {
  check_shape(num_vars, degree);
  if (static_cast<int>(caps.size()) != num_vars) {
    throw precondition_error("caps length must equal number of variables");
  }
  std::vector<Monomial> out;
  std::vector<int> current(num_vars, 0);
  enumerate(0, degree, current, caps, out);
  return GradedBasis(num_vars, degree, std::move(out));
}

bool LinearForm::is_zero() const {
  for (Elem c : coeffs)
    if (c != 0) return false;
  return true;
}

HomogeneousForm multiply_linear(const PrimeField& field, const HomogeneousForm& f,
                                const LinearForm& l) {
  if (l.num_vars() != f.num_vars) throw precondition_error("variable count mismatch");
  const GradedBasis src = monomial_basis(f.num_vars, f.degree);
  const GradedBasis dst = monomial_basis(f.num_vars, f.degree + 1);
  HomogeneousForm out{f.num_vars, f.degree + 1, std::vector<Elem>(dst.size(), 0)};
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (f.coeffs[i] == 0) continue;
    for (int v = 0; v < f.num_vars; ++v) {
      if (l.coeffs[v] == 0) continue;
      const std::uint64_t key = src.key(i) + (std::uint64_t{1} << (8 * v));
      const std::size_t t = *dst.index_of(key);
      out.coeffs[t] = field.add(out.coeffs[t], field.mul(f.coeffs[i], l.coeffs[v]));
    }
  }
  return out;
}

HomogeneousForm power_coords(const PrimeField& field, const LinearForm& l, int a) {
  if (a < 1) throw precondition_error("power must be at least 1");
  HomogeneousForm acc{l.num_vars(), 0, {1}};
  for (int d = 0; d < a; ++d) acc = multiply_linear(field, acc, l);
  return acc;
}

DenseMatrix mult_matrix(const PrimeField& field, const HomogeneousForm& f,
                        int target_degree) {
  const int k = f.degree;
  if (target_degree < k || k < 0) throw precondition_error("need target_degree >= k >= 0");
  const GradedBasis fb = monomial_basis(f.num_vars, k);
  const GradedBasis dom = monomial_basis(f.num_vars, target_degree - k);
  const GradedBasis cod = monomial_basis(f.num_vars, target_degree);
  DenseMatrix m(field, cod.size(), dom.size());
  for (std::size_t c = 0; c < dom.size(); ++c) {
    for (std::size_t u = 0; u < fb.size(); ++u) {
      if (f.coeffs[u] == 0) continue;
      const std::size_t r = *cod.index_of(dom.key(c) + fb.key(u));
      m.set(r, c, field.add(m.at(r, c), f.coeffs[u]));
    }
  }
  return m;
}

}  // namespace leflab
