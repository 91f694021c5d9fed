#include "leflab/lefschetz_theory.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "leflab/linsys.hpp"

namespace leflab {

namespace {

int count_at_most(const ExponentSpec& spec, int j) {
  return static_cast<int>(std::count_if(spec.exponents.begin(), spec.exponents.end(),
                                        [j](int a) { return a <= j; }));
}

int count_equal(const ExponentSpec& spec, int j) {
  return static_cast<int>(std::count(spec.exponents.begin(), spec.exponents.end(), j));
}

// sum over a_i <= j of (j + 1 - a_i)
long long excess(const ExponentSpec& spec, int j) {
  long long v = 0;
  for (int a : spec.exponents) {
    if (a <= j) v += j + 1 - a;
  }
  return v;
}

Verdict maximal(std::string property, std::string reason) {
  Verdict v;
  v.property = std::move(property);
  v.status = Status::maximal_everywhere;
  v.reason = std::move(reason);
  return v;
}

void require_vars(const ExponentSpec& spec, int r) {
  if (spec.num_vars != r) {
    throw precondition_error("expected " + std::to_string(r) + " variables, got " +
                             std::to_string(spec.num_vars));
  }
}

void require_artinian(const ExponentSpec& spec) {
  if (!spec.artinian()) {
    throw non_artinian_error("spec " + spec.to_string() + " has fewer forms than variables");
  }
}

}  // namespace

int NVector::at(int j) const {
  if (j < 0) return 0;
  if (j >= static_cast<int>(counts.size())) throw std::out_of_range("n_j beyond stored range");
  return counts[static_cast<std::size_t>(j)];
}

int NVector::partial_sum(int j) const {
  int v = 0;
  for (int i = 0; i <= j; ++i) v += at(i);
  return v;
}

NVector n_counts(const ExponentSpec& spec, int j_max) {
  NVector n;
  for (int j = 0; j <= j_max; ++j) n.counts.push_back(count_at_most(spec, j));
  return n;
}

int compute_p(const ExponentSpec& spec) {
  if (spec.count() < 2) throw precondition_error("p needs at least two exponents");
  // Past a_2 the excess grows by n_{j+1} >= 2 per step, so the inequality
  // cannot recover once it breaks there.
  const int a2 = spec.exponents[1];
  int p = 0;
  for (int j = 0;; ++j) {
    const bool ok = excess(spec, j) <= j;
    if (ok) p = j;
    if (!ok && j >= a2) break;
  }
  return p;
}

int compute_p_uniform(int s, int t) {
  if (s < 2 || t < 1) throw precondition_error("need s >= 2 and t >= 1");
  if (s <= t) return s * (t - 1) / (s - 1);
  return t - 1;
}

long long magic_rhs(const ExponentSpec& spec, int k, int j) {
  if (k < 1) throw precondition_error("k must be positive");
  if (j < std::max(k, spec.max_exponent())) {
    throw precondition_error("magic criterion needs j >= max(k, a_s)");
  }
  const long long c = binom(k - 1, 2);
  long long v = static_cast<long long>(j) * k + 1 - c;
  for (int a : spec.exponents) {
    if (a <= j - k) {
      v -= static_cast<long long>(k) * (j - a) + 1 - c;
    } else {
      v -= binom(j - a + 2, 2);
    }
  }
  return v;
}

std::string to_string(Status status) {
  return status == Status::fails ? "fails" : "maximal-everywhere";
}

std::optional<long long> Witness::get(const std::string& name) const {
  for (const auto& [key, value] : values) {
    if (key == name) return value;
  }
  return std::nullopt;
}

std::vector<int> Verdict::failing_degrees() const {
  std::vector<int> out;
  for (const auto& f : failures) out.push_back(f.degree);
  return out;
}

Verdict classify_square(const ExponentSpec& spec) {
  require_vars(spec, 3);
  if (spec.count() < 3) throw precondition_error("classify_square needs s >= 3");
  Verdict v = maximal("xL^2", "unconditional in three variables");
  v.witness.p = compute_p(spec);
  return v;
}

Verdict classify_cube(const ExponentSpec& spec) {
  require_vars(spec, 3);
  require_artinian(spec);
  if (spec.contains(1)) return maximal("xL^3", "exponent 1 reduces to two variables");
  if (spec.count() == 3) return maximal("xL^3", "complete intersection");

  const int p = compute_p(spec);
  const NVector n = n_counts(spec, p + 2);
  const int sigma = n.partial_sum(p);
  const int target = p + 2 - sigma;

  Verdict v = maximal("xL^3", "failure conditions not met");
  v.witness.p = p;
  auto& w = v.witness.values;
  w.emplace_back("m", n.at(p));
  w.emplace_back("n", count_equal(spec, p + 1));
  w.emplace_back("q", count_equal(spec, p + 2));
  w.emplace_back("d", static_cast<long long>(p) - excess(spec, p));
  w.emplace_back("n_p+1", n.at(p + 1));
  w.emplace_back("n_p+2", n.at(p + 2));
  w.emplace_back("p+2-sum", target);

  const bool fail = n.at(p + 1) == target && target >= 4 && target % 2 == 0 &&
                    n.at(p + 2) == n.at(p + 1);
  if (!fail) return v;

  long long low = binom(p + 1, 2);
  long long high = binom(p + 4, 2) - 3LL * count_equal(spec, p + 1);
  for (int a : spec.exponents) {
    if (a <= p) {
      low -= binom(p + 1 - a, 2);
      high -= binom(p + 4 - a, 2);
    }
  }
  if (low != high) {
    throw std::logic_error("dim[A]_{p-1} != dim[A]_{p+2} for failing spec " + spec.to_string());
  }
  w.emplace_back("dim_A_p-1", low);
  w.emplace_back("dim_A_p+2", high);
  v.status = Status::fails;
  v.reason = "failure conditions met";
  v.failures.push_back({p + 2, 1, 1, 1});
  return v;
}

Verdict classify_cube_uniform(int s, int t) {
  if (s < 2 || t < 1) throw precondition_error("need s >= 2 and t >= 1");
  if (s >= 4 && s % 2 == 0 && t % (s - 1) == 0) {
    Verdict v;
    v.property = "xL^3";
    v.status = Status::fails;
    v.reason = "s even and s-1 divides t";
    v.witness.p = compute_p_uniform(s, t);
    v.failures.push_back({s * t / (s - 1), 1, 1, 1});
    return v;
  }
  Verdict v = maximal("xL^3", "s odd, s < 4, or s-1 does not divide t");
  v.witness.p = compute_p_uniform(s, t);
  return v;
}

Verdict slp_quadric_3vars(const ExponentSpec& spec) {
  require_vars(spec, 3);
  if (!spec.contains(2)) throw precondition_error("slp_quadric_3vars needs an exponent 2");
  if (spec.count() < 3) throw precondition_error("slp_quadric_3vars needs s >= 3");
  return maximal("SLP", "a square among the generators");
}

Verdict wlp_quadric_4vars(const ExponentSpec& spec) {
  require_vars(spec, 4);
  if (spec.exponents.empty() || spec.exponents.front() > 2) {
    throw precondition_error("wlp_quadric_4vars needs an exponent at most 2");
  }
  if (spec.count() < 4) throw precondition_error("wlp_quadric_4vars needs at least 4 forms");
  return maximal("WLP", "an exponent at most two");
}

SlpCubeResult slp_cube_char(const ExponentSpec& spec) {
  require_vars(spec, 3);
  if (spec.count() < 2) throw non_artinian_error("A/l^3 A needs at least two other forms");
  SlpCubeResult out;
  out.p = compute_p(spec);
  for (int b = 3; b <= out.p; ++b) {
    const ExponentSpec next = spec.with(b);
    const int p_after = compute_p(next);
    if (p_after > out.p) {
      throw std::logic_error("p increased after adjoining " + std::to_string(b) + " to " +
                             spec.to_string());
    }
    Verdict v = classify_cube(next);
    if (v.fails()) out.slp = false;
    out.per_power.push_back({b, p_after, std::move(v)});
  }
  return out;
}

bool slp_cube_uniform(int s, int t) {
  if (s < 2 || t < 1) throw precondition_error("need s >= 2 and t >= 1");
  return !(s % 2 == 1 && t >= s);
}

FailingPowers failing_powers_cube(int s, int t, int reg_bound) {
  if (s < 3 || s % 2 == 0) throw precondition_error("failing_powers_cube needs s odd, s >= 3");
  if (t < s) throw precondition_error("failing_powers_cube needs t >= s");
  FailingPowers out;
  for (int b = s; b < reg_bound; b += s) {
    (b <= t ? out.asserted : out.exploratory).push_back(b);
  }
  return out;
}

Verdict wlp_cube_uniform_4vars(int s, int t) {
  if (s < 4 || t < 3) throw precondition_error("wlp_cube_uniform_4vars needs s >= 4, t >= 3");
  if (s % 2 == 0 && t % (s - 1) == 0) {
    Verdict v;
    v.property = "WLP";
    v.status = Status::fails;
    v.reason = "s even and s-1 divides t";
    v.failures.push_back({s * t / (s - 1), std::nullopt, 1, 1});
    return v;
  }
  return maximal("WLP", "s odd or s-1 does not divide t");
}

std::optional<ExchangeConclusion> exchange_implication(const ExchangeFacts& f) {
  const std::string statement = "xL^" + std::to_string(f.b) + " maximal on A/l^" +
                                std::to_string(f.k) + " A";
  if (f.lk_on_a_mod_lb && f.lb_on_a) return ExchangeConclusion{'b', statement};
  if (f.wlp_a && f.b >= f.k && f.lk_on_a && f.lk_on_a_mod_lb) {
    return ExchangeConclusion{'a', statement};
  }
  return std::nullopt;
}

std::optional<Verdict> predict_lefschetz(const ExponentSpec& spec, int k) {
  if (k < 1) throw precondition_error("k must be positive");
  require_artinian(spec);
  const int r = spec.num_vars;
  const int s = spec.count();
  const std::string property = "xL^" + std::to_string(k);

  if (r <= 2) return maximal(property, "at most two variables");
  if (spec.contains(1)) {
    std::vector<int> rest = spec.exponents;
    rest.erase(std::find(rest.begin(), rest.end(), 1));
    auto v = predict_lefschetz(ExponentSpec::make(r - 1, std::move(rest)), k);
    if (v) v->reason = "exponent 1 removed; " + v->reason;
    return v;
  }
  if (s == r) return maximal(property, "complete intersection");

  if (r == 3) {
    switch (k) {
      case 1: return maximal(property, "WLP in three variables");
      case 2: return classify_square(spec);
      case 3: return classify_cube(spec);
      default: return std::nullopt;
    }
  }
  if (r == 4 && k == 1) {
    if (spec.exponents.front() <= 2) return wlp_quadric_4vars(spec);
    const std::vector<int> rest(spec.exponents.begin() + 1, spec.exponents.end());
    const bool cube_plus_uniform = spec.exponents.front() == 3 && rest.size() >= 4 &&
                                   std::adjacent_find(rest.begin(), rest.end(),
                                                      std::not_equal_to<>()) == rest.end();
    if (cube_plus_uniform) {
      return wlp_cube_uniform_4vars(static_cast<int>(rest.size()), rest.front());
    }
  }
  return std::nullopt;
}

}  // namespace leflab
