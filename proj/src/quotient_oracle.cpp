#include "leflab/quotient_oracle.hpp"

#include <algorithm>
#include <string>

namespace leflab {

namespace {

constexpr std::uint64_t kTagForms = 0x464f524d53;     // "FORMS"
constexpr std::uint64_t kTagGeneral = 0x47454e4552;   // "GENER"
constexpr int kMaxResample = 100;

long long binom_count(long long n, long long k) {
  if (k < 0 || n < k) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

LinearForm random_form(const PrimeField& field, int num_vars, Rng& rng) {
  LinearForm f{std::vector<Elem>(num_vars)};
  do {
    for (auto& c : f.coeffs) c = uniform_below(rng, field.modulus());
  } while (f.is_zero());
  return f;
}

bool independent(const PrimeField& field, const std::vector<LinearForm>& forms,
                 const std::vector<std::size_t>& pick) {
  const std::size_t r = forms.front().coeffs.size();
  DenseMatrix m(field, pick.size(), r);
  for (std::size_t i = 0; i < pick.size(); ++i)
    for (std::size_t c = 0; c < r; ++c) m.set(i, c, forms[pick[i]].coeffs[c]);
  return matrix_rank(m) == pick.size();
}

// Every min(r, s)-subset of the forms is independent.
bool general_enough(const PrimeField& field, const std::vector<LinearForm>& forms,
                    int num_vars) {
  const std::size_t s = forms.size();
  const std::size_t size = std::min<std::size_t>(s, num_vars);
  if (size == 0) return true;
  std::vector<bool> mask(s, false);
  std::fill(mask.begin(), mask.begin() + size, true);
  do {
    std::vector<std::size_t> pick;
    for (std::size_t i = 0; i < s; ++i)
      if (mask[i]) pick.push_back(i);
    if (!independent(field, forms, pick)) return false;
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return true;
}

}  // namespace

IdealSample sample_ideal(const ExponentSpec& spec, std::uint64_t prime, std::uint64_t seed) {
  const long long bound = 2LL * (spec.max_exponent() + spec.count() + 10);
  if (prime <= static_cast<std::uint64_t>(bound)) {
    throw prime_too_small_error("prime " + std::to_string(prime) + " must exceed " +
                                std::to_string(bound));
  }
  const PrimeField field(prime);
  Rng rng(derive_seed(seed, {kTagForms, spec_hash(spec)}));
  for (int attempt = 0; attempt < kMaxResample; ++attempt) {
    std::vector<LinearForm> forms;
    forms.reserve(spec.count());
    for (int i = 0; i < spec.count(); ++i) forms.push_back(random_form(field, spec.num_vars, rng));
    if (general_enough(field, forms, spec.num_vars)) {
      return IdealSample{spec, std::move(forms), prime, seed};
    }
  }
  throw std::runtime_error("could not draw linear forms in general position");
}

QuotientOracle::QuotientOracle(IdealSample sample)
    : sample_(std::move(sample)),
      field_(sample_.prime),
      num_vars_(sample_.spec.num_vars),
      caps_(num_vars_, -1),
      adapt_(field_, num_vars_, num_vars_) {
  const auto& spec = sample_.spec;
  if (static_cast<int>(sample_.forms.size()) != spec.count()) {
    throw precondition_error("sample has the wrong number of forms");
  }
  for (const auto& f : sample_.forms) {
    if (f.num_vars() != num_vars_ || f.is_zero()) {
      throw precondition_error("sample forms must be nonzero with r coefficients");
    }
  }

  // Rows of `coords` are the new coordinates y_i as forms in x.
  const int c = std::min(spec.count(), num_vars_);
  std::vector<LinearForm> coords(sample_.forms.begin(), sample_.forms.begin() + c);
  for (int i = 0; i < c; ++i) caps_[i] = spec.exponents[i];
  for (int v = 0; v < num_vars_ && static_cast<int>(coords.size()) < num_vars_; ++v) {
    LinearForm e{std::vector<Elem>(num_vars_, 0)};
    e.coeffs[v] = 1;
    coords.push_back(e);
    std::vector<std::size_t> all(coords.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    if (!independent(field_, coords, all)) coords.pop_back();
  }
  DenseMatrix m(field_, num_vars_, num_vars_);
  for (int i = 0; i < num_vars_; ++i)
    for (int j = 0; j < num_vars_; ++j) m.set(i, j, coords[i].coeffs[j]);
  auto inv = inverse(m);
  if (!inv) throw precondition_error("leading forms are not independent");
  adapt_ = *inv;

  for (int i = c; i < spec.count(); ++i) {
    extras_.push_back(
        Generator{spec.exponents[i],
                  power_coords(field_, to_adapted(sample_.forms[i]), spec.exponents[i])});
  }
}

LinearForm QuotientOracle::to_adapted(const LinearForm& f) const {
  if (f.num_vars() != num_vars_) throw precondition_error("form has wrong variable count");
  LinearForm out{std::vector<Elem>(num_vars_, 0)};
  for (int j = 0; j < num_vars_; ++j) {
    Elem acc = 0;
    for (int i = 0; i < num_vars_; ++i)
      acc = field_.add(acc, field_.mul(f.coeffs[i] % field_.modulus(), adapt_.at(i, j)));
    out.coeffs[j] = acc;
  }
  return out;
}

const GradedBasis& QuotientOracle::working(int j) {
  auto it = working_.find(j);
  if (it == working_.end()) {
    it = working_.emplace(j, capped_basis(num_vars_, j, caps_)).first;
  }
  return it->second;
}

const GradedBasis& QuotientOracle::full_basis(int degree) {
  auto it = full_.find(degree);
  if (it == full_.end()) it = full_.emplace(degree, monomial_basis(num_vars_, degree)).first;
  return it->second;
}

std::vector<Elem> QuotientOracle::project_product(const HomogeneousForm& power,
                                                  std::uint64_t mono_key,
                                                  const GradedBasis& target) {
  const GradedBasis& pb = full_basis(power.degree);
  std::vector<Elem> v(target.size(), 0);
  for (std::size_t u = 0; u < pb.size(); ++u) {
    if (power.coeffs[u] == 0) continue;
    // Monomials outside the target basis lie in (y_i^{a_i}) and drop out.
    if (auto t = target.index_of(pb.key(u) + mono_key)) {
      v[*t] = field_.add(v[*t], power.coeffs[u]);
    }
  }
  return v;
}

const EchelonBasis& QuotientOracle::ideal_part(int j) {
  auto it = ideal_.find(j);
  if (it != ideal_.end()) return it->second;
  const GradedBasis& target = working(j);
  EchelonBasis basis(field_, target.size());
  for (const auto& g : extras_) {
    if (g.exponent > j) continue;
    const GradedBasis& src = working(j - g.exponent);
    for (std::size_t i = 0; i < src.size() && basis.rank() < target.size(); ++i) {
      basis.insert(project_product(g.power, src.key(i), target));
    }
  }
  return ideal_.emplace(j, std::move(basis)).first->second;
}

int QuotientOracle::quotient_dim(int j) {
  if (j < 0) return 0;
  return static_cast<int>(working(j).size() - ideal_part(j).rank());
}

int QuotientOracle::ideal_piece_dim(int j) {
  if (j < 0) return 0;
  return static_cast<int>(binom_count(j + num_vars_ - 1, num_vars_ - 1)) - quotient_dim(j);
}

int QuotientOracle::quotient_dim_with_power(const LinearForm& f, int k, int j) {
  if (k < 1) throw precondition_error("power must be at least 1");
  if (k > j) return quotient_dim(j);
  const HomogeneousForm power = power_coords(field_, to_adapted(f), k);
  const GradedBasis& target = working(j);
  EchelonBasis basis = ideal_part(j);
  const GradedBasis& src = working(j - k);
  for (std::size_t i = 0; i < src.size() && basis.rank() < target.size(); ++i) {
    basis.insert(project_product(power, src.key(i), target));
  }
  return static_cast<int>(target.size() - basis.rank());
}

int QuotientOracle::induced_mult_rank(const LinearForm& f, int k, int j) {
  if (k < 1 || j < k) throw precondition_error("need j >= k >= 1");
  const HomogeneousForm power = power_coords(field_, to_adapted(f), k);
  const GradedBasis& dom_basis = working(j - k);
  const GradedBasis& cod_basis = working(j);
  const std::vector<std::size_t> dom_free = ideal_part(j - k).free_columns();
  const EchelonBasis& cod_ideal = ideal_part(j);
  const std::vector<std::size_t> cod_free = cod_ideal.free_columns();
  DenseMatrix m(field_, dom_free.size(), cod_free.size());
  for (std::size_t r = 0; r < dom_free.size(); ++r) {
    std::vector<Elem> v = project_product(power, dom_basis.key(dom_free[r]), cod_basis);
    cod_ideal.reduce(v);
    for (std::size_t c = 0; c < cod_free.size(); ++c) m.set(r, c, v[cod_free[c]]);
  }
  return static_cast<int>(matrix_rank(m));
}

void QuotientOracle::require_artinian() const {
  if (!sample_.spec.artinian()) {
    throw non_artinian_error("quotient is not artinian: " + std::to_string(sample_.spec.count()) +
                             " forms in " + std::to_string(num_vars_) + " variables");
  }
}

HilbertData QuotientOracle::hilbert_function() {
  require_artinian();
  if (hilbert_) return *hilbert_;
  HilbertData h;
  for (int j = 0;; ++j) {
    const int d = quotient_dim(j);
    if (d == 0) break;
    h.values.push_back(d);
  }
  h.regularity = static_cast<int>(h.values.size()) - 1;
  hilbert_ = h;
  return h;
}

int QuotientOracle::regularity() { return hilbert_function().regularity; }

LinearForm QuotientOracle::general_form(int k, int trial) const {
  Rng rng(derive_seed(sample_.seed, {kTagGeneral, spec_hash(sample_.spec),
                                     static_cast<std::uint64_t>(k),
                                     static_cast<std::uint64_t>(trial)}));
  return random_form(field_, num_vars_, rng);
}

RankReport QuotientOracle::mult_rank_report(int k, int j, int trials) {
  if (k < 1 || j < k) throw precondition_error("need j >= k >= 1");
  if (trials < 1) throw precondition_error("trials must be at least 1");
  RankReport rep;
  rep.k = k;
  rep.j = j;
  rep.dim_domain = quotient_dim(j - k);
  rep.dim_codomain = quotient_dim(j);
  const int ceiling = std::min(rep.dim_domain, rep.dim_codomain);
  if (ceiling > 0) {
    for (int t = 0; t < trials; ++t) {
      const int r = rep.dim_codomain - quotient_dim_with_power(general_form(k, t), k, j);
      rep.rank = std::max(rep.rank, r);
      rep.trials_used = t + 1;
      if (rep.rank == ceiling) break;
    }
  }
  rep.kernel_dim = rep.dim_domain - rep.rank;
  rep.cokernel_dim = rep.dim_codomain - rep.rank;
  return rep;
}

std::vector<ScanFailure> QuotientOracle::lefschetz_scan(int k, int trials) {
  if (k < 1) throw precondition_error("power must be at least 1");
  const int reg = regularity();
  std::vector<ScanFailure> out;
  for (int j = k; j <= reg + k; ++j) {
    const RankReport rep = mult_rank_report(k, j, trials);
    if (!rep.maximal()) {
      out.push_back(ScanFailure{j, rep.deficiency(), rep.kernel_dim, rep.cokernel_dim});
    }
  }
  return out;
}

int ideal_piece_dim(const IdealSample& sample, int j) {
  return QuotientOracle(sample).ideal_piece_dim(j);
}

int ideal_piece_dim_direct(const IdealSample& sample, int j) {
  if (j < 0) return 0;
  const PrimeField field(sample.prime);
  const int r = sample.spec.num_vars;
  const GradedBasis target = monomial_basis(r, j);
  std::vector<std::vector<Elem>> columns;
  for (std::size_t i = 0; i < sample.forms.size(); ++i) {
    const int a = sample.spec.exponents[i];
    if (a > j) continue;
    const DenseMatrix m = mult_matrix(field, power_coords(field, sample.forms[i], a), j);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      std::vector<Elem> col(m.rows());
      for (std::size_t row = 0; row < m.rows(); ++row) col[row] = m.at(row, c);
      columns.push_back(std::move(col));
    }
  }
  DenseMatrix all(field, columns.size(), target.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t row = 0; row < target.size(); ++row) all.set(c, row, columns[c][row]);
  return static_cast<int>(matrix_rank(all));
}

int quotient_dim(const IdealSample& sample, int j) {
  return QuotientOracle(sample).quotient_dim(j);
}

HilbertData hilbert_function(const IdealSample& sample) {
  return QuotientOracle(sample).hilbert_function();
}

int regularity(const IdealSample& sample) { return QuotientOracle(sample).regularity(); }

RankReport mult_rank_report(const IdealSample& sample, int k, int j, int trials) {
  return QuotientOracle(sample).mult_rank_report(k, j, trials);
}

std::vector<ScanFailure> lefschetz_scan(const IdealSample& sample, int k, int trials) {
  return QuotientOracle(sample).lefschetz_scan(k, trials);
}

}  // namespace leflab
