#include <cstdlib>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "leflab/harness.hpp"
#include "leflab/linsys.hpp"

namespace leflab {

namespace {

using json = nlohmann::ordered_json;

struct CommonOptions {
  int vars = 3;
  std::string powers;
  std::uint64_t prime = PrimeField::kDefaultModulus;
  int trials = kDefaultTrials;
  std::uint64_t seed = 0;
  std::string format = "json";
};

void add_common(CLI::App* sub, CommonOptions& c, bool needs_powers) {
  sub->add_option("--vars", c.vars, "number of variables")->check(CLI::Range(2, kMaxVars));
  if (needs_powers) {
    sub->add_option("--powers", c.powers, "exponents, e.g. 3,3,3,3")->required();
  }
  sub->add_option("--prime", c.prime, "prime modulus (default from LEFLAB_PRIME)");
  sub->add_option("--trials", c.trials, "random trials per rank")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "master seed");
  sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const int v = std::stoi(text);
    return {v, v};
  }
  return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
}

json failure_json(const TheoryFailure& f) {
  json j;
  j["degree"] = f.degree;
  j["kernel"] = f.kernel ? json(*f.kernel) : json(nullptr);
  j["cokernel"] = f.cokernel;
  j["deficiency"] = f.deficiency;
  return j;
}

json scan_failure_json(const ScanFailure& f) {
  return json{{"degree", f.degree},
              {"deficiency", f.deficiency},
              {"kernel", f.kernel_dim},
              {"cokernel", f.cokernel_dim}};
}

json verdict_json(const Verdict& v) {
  json j;
  j["status"] = to_string(v.status);
  j["degrees"] = v.failing_degrees();
  j["property"] = v.property;
  j["failures"] = json::array();
  for (const auto& f : v.failures) j["failures"].push_back(failure_json(f));
  j["p"] = v.witness.p ? json(*v.witness.p) : json(nullptr);
  j["witness"] = json::object();
  for (const auto& [name, value] : v.witness.values) j["witness"][name] = value;
  j["reason"] = v.reason;
  return j;
}

std::string join_degrees(const std::vector<int>& v) { return join_ints(v, ','); }

std::vector<int> oracle_degrees(const std::vector<ScanFailure>& v) {
  std::vector<int> out;
  for (const auto& f : v) out.push_back(f.degree);
  return out;
}

void emit(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

int run_hilbert(const CommonOptions& c, std::ostream& out) {
  const auto spec = ExponentSpec::parse(c.vars, c.powers);
  QuotientOracle oracle(sample_ideal(spec, c.prime, c.seed));
  const HilbertData hf = oracle.hilbert_function();
  if (c.format == "csv") {
    out << "degree;dim\n";
    for (std::size_t d = 0; d < hf.values.size(); ++d) out << d << ';' << hf.values[d] << '\n';
  } else {
    emit(out, json{{"hf", hf.values}, {"reg", hf.regularity}});
  }
  return 0;
}

int run_rank(const CommonOptions& c, int k, int degree, std::ostream& out) {
  const auto spec = ExponentSpec::parse(c.vars, c.powers);
  QuotientOracle oracle(sample_ideal(spec, c.prime, c.seed));
  const RankReport r = oracle.mult_rank_report(k, degree, c.trials);
  if (c.format == "csv") {
    out << "k;j;dim_domain;dim_codomain;rank;kernel;cokernel;maximal\n";
    out << r.k << ';' << r.j << ';' << r.dim_domain << ';' << r.dim_codomain << ';' << r.rank
        << ';' << r.kernel_dim << ';' << r.cokernel_dim << ';' << (r.maximal() ? "true" : "false")
        << '\n';
  } else {
    emit(out, json{{"k", r.k},
                   {"j", r.j},
                   {"dim_domain", r.dim_domain},
                   {"dim_codomain", r.dim_codomain},
                   {"rank", r.rank},
                   {"kernel", r.kernel_dim},
                   {"cokernel", r.cokernel_dim},
                   {"maximal", r.maximal()},
                   {"trials_used", r.trials_used}});
  }
  return 0;
}

int run_scan(const CommonOptions& c, int k, std::ostream& out) {
  const auto spec = ExponentSpec::parse(c.vars, c.powers);
  QuotientOracle oracle(sample_ideal(spec, c.prime, c.seed));
  const auto failures = oracle.lefschetz_scan(k, c.trials);
  if (c.format == "csv") {
    out << "degree;deficiency;kernel;cokernel\n";
    for (const auto& f : failures) {
      out << f.degree << ';' << f.deficiency << ';' << f.kernel_dim << ';' << f.cokernel_dim
          << '\n';
    }
  } else {
    json j{{"k", k}, {"reg", oracle.regularity()}, {"degrees", oracle_degrees(failures)}};
    j["failures"] = json::array();
    for (const auto& f : failures) j["failures"].push_back(scan_failure_json(f));
    emit(out, j);
  }
  return 0;
}

int run_classify(const CommonOptions& c, int k, std::ostream& out) {
  const auto spec = ExponentSpec::parse(c.vars, c.powers);
  const auto verdict = predict_lefschetz(spec, k);
  if (c.format == "csv") {
    out << "status;degrees\n";
    if (verdict) {
      out << to_string(verdict->status) << ';' << join_degrees(verdict->failing_degrees()) << '\n';
    } else {
      out << "no-prediction;\n";
    }
    return 0;
  }
  emit(out, verdict ? verdict_json(*verdict) : json{{"status", "no-prediction"}});
  return 0;
}

int run_slp(const CommonOptions& c, const std::string& mode, std::ostream& out) {
  const auto spec = ExponentSpec::parse(c.vars, c.powers);
  json j;
  if (mode == "square") {
    const Verdict v = c.vars == 3 ? slp_quadric_3vars(spec) : wlp_quadric_4vars(spec);
    j = verdict_json(v);
  } else if (c.vars == 3) {
    const SlpCubeResult res = slp_cube_char(spec);
    j["slp"] = res.slp;
    j["p"] = res.p;
    if (spec.is_uniform()) {
      j["uniform_slp"] = slp_cube_uniform(spec.count(), spec.max_exponent());
    }
    j["powers"] = json::array();
    for (const auto& pv : res.per_power) {
      j["powers"].push_back(json{{"b", pv.b},
                                 {"p_after", pv.p_after},
                                 {"status", to_string(pv.verdict.status)},
                                 {"degrees", pv.verdict.failing_degrees()}});
    }
  } else {
    if (!spec.is_uniform()) {
      throw precondition_error("--mode cube --vars 4 expects uniform powers t,...,t");
    }
    j = verdict_json(wlp_cube_uniform_4vars(spec.count(), spec.max_exponent()));
  }
  if (c.format == "csv") {
    out << "status;degrees\n";
    if (j.contains("status")) {
      out << j["status"].get<std::string>() << ';'
          << join_degrees(j["degrees"].get<std::vector<int>>()) << '\n';
    } else {
      out << (j["slp"].get<bool>() ? "slp" : "fails") << ';';
      std::vector<int> bad;
      for (const auto& pv : j["powers"]) {
        if (pv["status"] == "fails") bad.push_back(pv["b"].get<int>());
      }
      out << join_degrees(bad) << '\n';
    }
    return 0;
  }
  emit(out, j);
  return 0;
}

int run_linsys(const CommonOptions& c, int degree, const std::string& mults, bool with_oracle,
               std::ostream& out) {
  const PlaneSystem sys = PlaneSystem::make(degree, mults.empty() ? std::vector<int>{}
                                                                  : parse_int_list(mults));
  const SystemDim res = system_dim(sys, OracleFallback{c.prime, c.seed, c.trials});
  if (c.format == "csv") {
    out << "step;kind;before;after;note\n";
    for (std::size_t i = 0; i < res.trace.steps.size(); ++i) {
      const auto& s = res.trace.steps[i];
      out << i << ';' << to_string(s.kind) << ';' << s.before.to_string() << ';'
          << s.after.to_string() << ';' << s.note << '\n';
    }
    return 0;
  }
  json j{{"dim", res.dim}};
  j["trace"] = json::array();
  for (const auto& s : res.trace.steps) {
    j["trace"].push_back(json{{"kind", to_string(s.kind)},
                              {"before", s.before.to_string()},
                              {"after", s.after.to_string()},
                              {"note", s.note}});
  }
  j["system"] = sys.to_string();
  j["expected"] = expected_dim(sys);
  if (with_oracle) j["fatpoint"] = fatpoint_dim(sys, c.prime, c.seed, c.trials);
  emit(out, j);
  return 0;
}

struct VerifyOptions {
  std::string s_range;
  std::string a_range;
  std::string specs;
  std::string ks = "3";
  std::string primes;
  int random = 0;
  int threads = 0;
  bool timing = false;
};

int run_verify(const CommonOptions& c, const VerifyOptions& v, bool prime_given,
               std::ostream& out) {
  SweepConfig cfg;
  cfg.num_vars = c.vars;
  if (!v.s_range.empty()) std::tie(cfg.s_min, cfg.s_max) = parse_range(v.s_range);
  if (!v.a_range.empty()) std::tie(cfg.a_min, cfg.a_max) = parse_range(v.a_range);
  if (!v.specs.empty()) {
    std::stringstream ss(v.specs);
    std::string item;
    while (std::getline(ss, item, ';')) {
      if (!item.empty()) cfg.specs.push_back(ExponentSpec::parse(c.vars, item));
    }
  }
  cfg.random_count = v.random;
  cfg.ks = parse_int_list(v.ks);
  if (!v.primes.empty()) {
    cfg.primes.clear();
    for (int p : parse_int_list(v.primes)) cfg.primes.push_back(static_cast<std::uint64_t>(p));
  } else if (prime_given || c.prime != PrimeField::kDefaultModulus) {
    cfg.primes.front() = c.prime;
    if (cfg.primes.size() > 1 && cfg.primes[1] == c.prime) cfg.primes.pop_back();
  }
  cfg.trials = c.trials;
  cfg.seed = c.seed;
  cfg.threads = v.threads;
  cfg.timing = v.timing;

  const VerificationReport report = run_verification(cfg);
  auto theory_degrees = [](const VerificationRow& row) {
    return row.theory ? join_degrees(row.theory->failing_degrees()) : std::string("NA");
  };
  if (c.format == "csv") {
    out << "spec;k;theory_fail_degrees;oracle_fail_degrees;agree;millis\n";
    for (const auto& row : report.rows) {
      out << row.spec.to_string() << ';' << row.k << ';' << theory_degrees(row) << ';'
          << join_degrees(oracle_degrees(row.oracle)) << ';' << (row.agree ? "true" : "false")
          << ';' << row.millis << '\n';
    }
  } else {
    json rows = json::array();
    for (const auto& row : report.rows) {
      json r{{"spec", row.spec.to_string()}, {"vars", row.spec.num_vars}, {"k", row.k}};
      r["theory"] = row.theory ? verdict_json(*row.theory) : json(nullptr);
      r["oracle_fail_degrees"] = oracle_degrees(row.oracle);
      r["oracle"] = json::array();
      for (const auto& f : row.oracle) r["oracle"].push_back(scan_failure_json(f));
      r["agree"] = row.agree;
      r["rerun"] = row.rerun;
      r["prime"] = row.prime;
      r["millis"] = row.millis;
      rows.push_back(std::move(r));
    }
    const auto& s = report.summary;
    emit(out, json{{"rows", rows},
                   {"summary",
                    {{"rows", s.rows},
                     {"agreements", s.agreements},
                     {"disagreements", s.disagreements},
                     {"unpredicted", s.unpredicted},
                     {"reruns", s.reruns}}}});
  }
  return report.summary.disagreements > 0 ? 1 : 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lefschetz lab: exact ranks and closed-form verdicts for quotients by powers "
               "of general linear forms"};
  app.name("leflab");
  app.require_subcommand(1);

  CommonOptions common;
  if (const char* env = std::getenv("LEFLAB_PRIME"); env != nullptr && *env != '\0') {
    try {
      common.prime = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: LEFLAB_PRIME is not an integer: " << env << '\n';
      return 2;
    }
  }

  auto* hilbert = app.add_subcommand("hilbert", "Hilbert function and regularity of R/I");
  add_common(hilbert, common, true);

  int k = 1;
  int degree = 0;
  auto* rank = app.add_subcommand("rank", "rank of x L^k into one degree");
  add_common(rank, common, true);
  rank->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  rank->add_option("--degree", degree, "target degree j")->required();

  auto* scan = app.add_subcommand("scan", "degrees where x L^k fails maximal rank (oracle)");
  add_common(scan, common, true);
  scan->add_option("--k", k)->required()->check(CLI::PositiveNumber);

  auto* classify = app.add_subcommand("classify", "closed-form verdict for x L^k");
  add_common(classify, common, true);
  classify->add_option("--k", k)->required()->check(CLI::Range(1, 3));

  std::string mode = "cube";
  auto* slp = app.add_subcommand("slp", "SLP/WLP classifications involving l^2 or l^3");
  add_common(slp, common, true);
  slp->add_option("--mode", mode, "square or cube")->check(CLI::IsMember({"square", "cube"}));

  std::string mults;
  bool with_oracle = false;
  int sys_degree = 0;
  auto* linsys = app.add_subcommand("linsys", "dimension of a plane linear system");
  add_common(linsys, common, false);
  linsys->add_option("--degree", sys_degree)->required();
  linsys->add_option("--mults", mults, "multiplicities, e.g. 2,2,2");
  linsys->add_flag("--oracle", with_oracle, "also report the fat-point oracle dimension");

  VerifyOptions vopt;
  auto* verify = app.add_subcommand("verify", "theory-versus-oracle sweep");
  add_common(verify, common, false);
  verify->add_option("--s-range", vopt.s_range, "number of forms, lo:hi");
  verify->add_option("--a-range", vopt.a_range, "exponent range, lo:hi");
  verify->add_option("--specs", vopt.specs, "explicit specs separated by ';'");
  verify->add_option("--random", vopt.random, "draw this many random specs from the ranges");
  verify->add_option("--k", vopt.ks, "powers to test, e.g. 2,3");
  verify->add_option("--primes", vopt.primes, "primes for the first run and the rerun");
  verify->add_option("--threads", vopt.threads, "worker threads (0 = all cores)");
  verify->add_flag("--timing", vopt.timing, "record wall-clock milliseconds per row");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*hilbert) return run_hilbert(common, out);
    if (*rank) return run_rank(common, k, degree, out);
    if (*scan) return run_scan(common, k, out);
    if (*classify) return run_classify(common, k, out);
    if (*slp) {
      if (common.vars != 3 && common.vars != 4) throw precondition_error("slp needs --vars 3 or 4");
      return run_slp(common, mode, out);
    }
    if (*linsys) return run_linsys(common, sys_degree, mults, with_oracle, out);
    if (*verify) return run_verify(common, vopt, verify->count("--prime") > 0, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace leflab
