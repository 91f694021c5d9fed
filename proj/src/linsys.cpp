#include "leflab/linsys.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "leflab/polyring.hpp"

namespace leflab {

long long binom(long long n, long long k) {
  if (k < 0 || n < k) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

PlaneSystem PlaneSystem::make(int degree, std::vector<int> mults) {
  for (int b : mults) {
    if (b < 0) throw precondition_error("multiplicities must be non-negative");
  }
  std::erase(mults, 0);
  std::sort(mults.begin(), mults.end(), std::greater<>());
  return PlaneSystem{degree, std::move(mults)};
}

std::string PlaneSystem::to_string() const {
  return "L(" + std::to_string(degree) + ";" + join_ints(mults) + ")";
}

std::string to_string(StepKind kind) {
  switch (kind) {
    case StepKind::bezout: return "bezout";
    case StepKind::cremona: return "cremona";
    case StepKind::simple_points_split: return "simple-points-split";
    case StepKind::terminal: return "terminal";
  }
  return "unknown";
}

long long expected_dim(const PlaneSystem& sys) {
  if (sys.degree < 0) return 0;
  long long v = binom(sys.degree + 2, 2);
  for (int b : sys.mults) v -= binom(b + 1, 2);
  return std::max(0LL, v);
}

namespace {

// Falling factorial n (n-1) ... (n-k+1) in the field; 0 when k > n.
Elem falling(const PrimeField& f, int n, int k) {
  if (k > n) return 0;
  Elem r = 1;
  for (int i = 0; i < k; ++i) r = f.mul(r, static_cast<Elem>(n - i));
  return r;
}

}  // namespace

long long fatpoint_dim(const PlaneSystem& sys, std::uint64_t prime, std::uint64_t seed,
                       int trials) {
  if (trials < 1) throw precondition_error("trials must be at least 1");
  const PrimeField field(prime);
  field.require_degree_bound(sys.degree);
  const int d = sys.degree;
  if (d < 0) return 0;
  const GradedBasis monos = monomial_basis(3, d);
  const std::size_t n_cols = monos.size();

  std::size_t best_rank = 0;
  for (int t = 0; t < trials && best_rank < n_cols; ++t) {
    Rng rng(derive_seed(seed, {0x504f494e54, static_cast<std::uint64_t>(t)}));
    EchelonBasis conditions(field, n_cols);
    for (int b : sys.mults) {
      std::array<Elem, 3> pt{};
      do {
        for (auto& c : pt) c = uniform_below(rng, field.modulus());
      } while (pt[0] == 0 && pt[1] == 0 && pt[2] == 0);
      // Multiplicity above d forces the zero form; order-d derivatives say so.
      const int order = std::min(b, d + 1) - 1;
      const GradedBasis derivs = monomial_basis(3, order);
      for (const Monomial& alpha : derivs.monomials()) {
        std::vector<Elem> row(n_cols, 0);
        for (std::size_t c = 0; c < n_cols; ++c) {
          const auto& e = monos[c].exponents;
          Elem v = 1;
          for (int i = 0; i < 3 && v != 0; ++i) {
            v = field.mul(v, falling(field, e[i], alpha.exponents[i]));
            v = field.mul(v, field.pow(pt[i], e[i] - std::min(e[i], alpha.exponents[i])));
          }
          row[c] = v;
        }
        conditions.insert(std::move(row));
        if (conditions.rank() == n_cols) break;
      }
    }
    best_rank = std::max(best_rank, conditions.rank());
  }
  return static_cast<long long>(n_cols - best_rank);
}

PlaneSystem cremona_step(const PlaneSystem& sys) {
  const int b1 = sys.mult(1), b2 = sys.mult(2), b3 = sys.mult(3);
  const int m = sys.degree - (b1 + b2 + b3);
  if (b3 + m < 0) {
    throw precondition_error("cremona step needs b_i + m >= 0 for " + sys.to_string());
  }
  std::vector<int> mults(std::max(sys.count(), 3), 0);
  std::copy(sys.mults.begin(), sys.mults.end(), mults.begin());
  for (int i = 0; i < 3; ++i) mults[i] += m;
  return PlaneSystem::make(sys.degree + m, std::move(mults));
}

PlaneSystem bezout_step(const PlaneSystem& sys) {
  if (sys.count() < 2) throw precondition_error("bezout step needs two base points");
  if (sys.degree >= sys.mult(1) + sys.mult(2)) {
    throw precondition_error("bezout step needs d < b_1 + b_2 for " + sys.to_string());
  }
  std::vector<int> mults = sys.mults;
  mults[0] -= 1;
  mults[1] -= 1;
  return PlaneSystem::make(sys.degree - 1, std::move(mults));
}

bool is_standard_form(const PlaneSystem& sys) {
  return sys.degree >= sys.mult(1) + sys.mult(2) + sys.mult(3);
}

long long ah_double_dim(int d, int m) {
  if (d < 0 || m < 0) throw precondition_error("need d, m >= 0");
  if ((d == 4 && m == 5) || (d == 2 && m == 2)) return 1;
  return std::max(0LL, binom(d + 2, 2) - 3LL * m);
}

SystemDim system_dim(const PlaneSystem& sys, const OracleFallback& fallback) {
  SystemDim out;
  auto& steps = out.trace.steps;
  PlaneSystem cur = PlaneSystem::make(sys.degree, sys.mults);
  long long split = 0;
  const int cap = 10 * (std::max(cur.degree, 0) + cur.count()) + 10;
  long long inner = 0;

  auto finish = [&](long long dim, std::string why) {
    steps.push_back({StepKind::terminal, cur, cur, std::move(why)});
    inner = dim;
  };

  for (int iter = 0;; ++iter) {
    if (iter > cap) {
      finish(fatpoint_dim(cur, fallback.prime, fallback.seed, fallback.trials), "oracle");
      break;
    }
    const int simple = static_cast<int>(std::count(cur.mults.begin(), cur.mults.end(), 1));
    if (simple > 0) {
      std::vector<int> rest = cur.mults;
      std::erase(rest, 1);
      PlaneSystem next = PlaneSystem::make(cur.degree, std::move(rest));
      steps.push_back({StepKind::simple_points_split, cur, next, std::to_string(simple)});
      split += simple;
      cur = std::move(next);
      continue;
    }
    if (cur.degree < 0) {
      finish(0, "negative-degree");
      break;
    }
    if (cur.mult(1) > cur.degree) {
      finish(0, "multiplicity-exceeds-degree");
      break;
    }
    if (cur.count() >= 2 && cur.degree < cur.mult(1) + cur.mult(2)) {
      PlaneSystem next = bezout_step(cur);
      steps.push_back({StepKind::bezout, cur, next, ""});
      cur = std::move(next);
      continue;
    }
    if (!is_standard_form(cur)) {
      // d >= b_1 + b_2 here, so b_3 + m = d - b_1 - b_2 >= 0.
      PlaneSystem next = cremona_step(cur);
      steps.push_back({StepKind::cremona, cur, next, ""});
      cur = std::move(next);
      continue;
    }
    if (cur.mults.empty()) {
      finish(binom(cur.degree + 2, 2), "no-base-points");
    } else if (std::all_of(cur.mults.begin(), cur.mults.end(), [](int b) { return b == 2; })) {
      finish(ah_double_dim(cur.degree, cur.count()), "double-points");
    } else {
      finish(expected_dim(cur), "standard-form");
    }
    break;
  }
  out.dim = std::max(0LL, inner - split);
  return out;
}

PlaneSystem ei_dual(const ExponentSpec& spec, int j, std::optional<int> extra_power) {
  if (spec.num_vars != 3) throw precondition_error("duality with plane systems needs 3 variables");
  if (j < 0) throw precondition_error("degree must be non-negative");
  std::vector<int> mults;
  for (int a : spec.exponents) {
    if (a <= j) mults.push_back(j - a + 1);
  }
  if (extra_power) {
    if (*extra_power < 1) throw precondition_error("extra power must be positive");
    if (*extra_power <= j) mults.push_back(j - *extra_power + 1);
  }
  return PlaneSystem::make(j, std::move(mults));
}

}  // namespace leflab
