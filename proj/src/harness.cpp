#include "leflab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>
#include <thread>

namespace leflab {

void SweepConfig::validate() const {
  if (num_vars < 2 || num_vars > kMaxVars) {
    throw precondition_error("num_vars must lie in [2, " + std::to_string(kMaxVars) + "]");
  }
  if (primes.empty()) throw precondition_error("at least one prime is required");
  for (auto p : primes) PrimeField{p};
  if (trials < 1) throw precondition_error("trials must be at least 1");
  if (ks.empty()) throw precondition_error("at least one k is required");
  for (int k : ks) {
    if (k < 1) throw precondition_error("k must be positive");
  }
  if (random_count < 0) throw precondition_error("random count must be non-negative");
  if (threads < 0) throw precondition_error("threads must be non-negative");
  const bool ranged = s_min <= s_max && a_min <= a_max;
  if (ranged && (s_min < 1 || a_min < 1)) {
    throw precondition_error("ranges must start at 1 or above");
  }
}

namespace {

void enumerate(int a_lo, int a_hi, int remaining, std::vector<int>& cur, int num_vars,
               std::set<ExponentSpec>& out) {
  if (remaining == 0) {
    out.insert(ExponentSpec::make(num_vars, cur));
    return;
  }
  for (int a = a_lo; a <= a_hi; ++a) {
    cur.push_back(a);
    enumerate(a, a_hi, remaining - 1, cur, num_vars, out);
    cur.pop_back();
  }
}

long long multiset_count(int values, int size) {
  // C(values + size - 1, size), capped to avoid overflow
  long long r = 1;
  for (int i = 1; i <= size; ++i) {
    r = r * (values + i - 1) / i;
    if (r > (1LL << 40)) return r;
  }
  return r;
}

}  // namespace

std::vector<ExponentSpec> sweep_specs(const SweepConfig& config) {
  std::set<ExponentSpec> out(config.specs.begin(), config.specs.end());
  const bool ranged = config.s_min <= config.s_max && config.a_min <= config.a_max;
  if (ranged && config.random_count == 0) {
    for (int s = config.s_min; s <= config.s_max; ++s) {
      std::vector<int> cur;
      enumerate(config.a_min, config.a_max, s, cur, config.num_vars, out);
    }
  } else if (ranged) {
    long long available = 0;
    for (int s = config.s_min; s <= config.s_max; ++s) {
      available += multiset_count(config.a_max - config.a_min + 1, s);
    }
    const auto want = static_cast<std::size_t>(
        std::min<long long>(config.random_count, available) + static_cast<long long>(out.size()));
    Rng rng(derive_seed(config.seed, {0x53504543}));
    const auto s_span = static_cast<std::uint64_t>(config.s_max - config.s_min + 1);
    const auto a_span = static_cast<std::uint64_t>(config.a_max - config.a_min + 1);
    while (out.size() < want) {
      const int s = config.s_min + static_cast<int>(uniform_below(rng, s_span));
      std::vector<int> exps;
      for (int i = 0; i < s; ++i) {
        exps.push_back(config.a_min + static_cast<int>(uniform_below(rng, a_span)));
      }
      out.insert(ExponentSpec::make(config.num_vars, std::move(exps)));
    }
  }
  return {out.begin(), out.end()};
}

bool failures_agree(const std::vector<TheoryFailure>& theory,
                    const std::vector<ScanFailure>& oracle) {
  if (theory.size() != oracle.size()) return false;
  for (std::size_t i = 0; i < theory.size(); ++i) {
    const auto& t = theory[i];
    const auto& o = oracle[i];
    if (t.degree != o.degree || t.deficiency != o.deficiency || t.cokernel != o.cokernel_dim) {
      return false;
    }
    if (t.kernel && *t.kernel != o.kernel_dim) return false;
  }
  return true;
}

VerificationRow verify_one(const ExponentSpec& spec, int k, const SweepConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  VerificationRow row;
  row.spec = spec;
  row.k = k;
  row.theory = predict_lefschetz(spec, k);

  const std::uint64_t seed = derive_seed(config.seed, {spec_hash(spec), static_cast<std::uint64_t>(k)});
  auto scan = [&](std::uint64_t prime, std::uint64_t sample_seed, int trials) {
    QuotientOracle oracle(sample_ideal(spec, prime, sample_seed));
    return oracle.lefschetz_scan(k, trials);
  };

  row.prime = config.primes.front();
  row.oracle = scan(row.prime, seed, config.trials);
  if (row.theory) {
    std::vector<TheoryFailure> expected = row.theory->failures;
    std::sort(expected.begin(), expected.end(),
              [](const auto& a, const auto& b) { return a.degree < b.degree; });
    row.agree = failures_agree(expected, row.oracle);
    if (!row.agree) {
      row.rerun = true;
      row.prime = config.primes.size() > 1 ? config.primes[1] : config.primes.front();
      row.oracle = scan(row.prime, mix_seed(seed), config.trials * 4);
      row.agree = failures_agree(expected, row.oracle);
    }
  }
  if (config.timing) {
    row.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  }
  return row;
}

VerificationReport run_verification(const SweepConfig& config) {
  config.validate();
  struct Task {
    ExponentSpec spec;
    int k;
  };
  std::vector<Task> tasks;
  for (const auto& spec : sweep_specs(config)) {
    for (int k : config.ks) tasks.push_back({spec, k});
  }

  VerificationReport report;
  report.rows.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size() && !failed; i = next++) {
      try {
        report.rows[i] = verify_one(tasks[i].spec, tasks[i].k, config);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  unsigned n_threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(std::max<std::size_t>(1, tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  std::sort(report.rows.begin(), report.rows.end(), [](const auto& a, const auto& b) {
    return a.spec != b.spec ? a.spec < b.spec : a.k < b.k;
  });
  auto& sum = report.summary;
  for (const auto& row : report.rows) {
    ++sum.rows;
    if (!row.theory) ++sum.unpredicted;
    else if (row.agree) ++sum.agreements;
    else ++sum.disagreements;
    if (row.rerun) ++sum.reruns;
  }
  return report;
}

}  // namespace leflab
