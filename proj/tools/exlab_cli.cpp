// Command-line laboratory driver.
//
// Verbs: solve-bp, family, demo-strong, demo-weak, trials, exitflag,
// decision, condition, rip, sweep.  Exit codes: 0 all guarantees met,
// 1 contract violation detected, 2 configuration error.
//
// All numeric flags accept exact rational strings ("7/5", "0.37" is NOT
// accepted — use numerator/denominator form).  Decimal output cells are
// rounded outward from certified intervals, never inward.

#include <atomic>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "exlab/adversary.hpp"
#include "exlab/bpinstances.hpp"
#include "exlab/condition.hpp"
#include "exlab/exitflag.hpp"
#include "exlab/hadamard.hpp"
#include "exlab/kdigit.hpp"
#include "exlab/multimin.hpp"
#include "exlab/rip.hpp"

using nlohmann::json;
using namespace exlab;

namespace {

constexpr int kOk = 0, kViolation = 1, kConfig = 2;

Rat parse_rat(const std::string& s) {
  Rat r(s);
  r.canonicalize();
  return r;
}

// Decimal string with `digits` fractional digits, rounded toward -inf
// (dir < 0) or +inf (dir > 0).
std::string dec(const Rat& r, int digits, int dir) {
  Int scaled_num = r.get_num() * pow10_int(digits);
  Int q;
  if (dir < 0)
    mpz_fdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), r.get_den().get_mpz_t());
  else
    mpz_cdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), r.get_den().get_mpz_t());
  bool neg = q < 0;
  Int a = neg ? Int(-q) : q;
  std::string s = a.get_str();
  if (s.size() <= static_cast<std::size_t>(digits))
    s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  return neg ? "-" + s : s;
}

json iv_json(const RatIv& iv, int digits = 12) {
  return {{"lo", dec(iv.lo, digits, -1)}, {"hi", dec(iv.hi, digits, +1)}};
}

RealVec to_real_vec(const DyadicVec& v) {
  RealVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Real(to_rat(v[i]));
  return r;
}

Kind parse_kind(const std::string& s) {
  for (Kind k : {Kind::LP, Kind::BPl1, Kind::ULl1, Kind::CL, Kind::BPTV, Kind::ULTV})
    if (s == kind_name(k)) return k;
  throw CLI::ValidationError("kind", "unknown kind: " + s);
}

std::vector<long> parse_long_list(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stol(tok));
  return out;
}

// Run jobs 0..count-1 on a pool; results land at their own index, so output
// order is independent of scheduling.
void run_pool(std::size_t count, const std::function<void(std::size_t)>& job) {
  unsigned workers = std::max(1u, std::min(std::thread::hardware_concurrency(),
                                           static_cast<unsigned>(count)));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) job(i);
    });
  for (auto& t : pool) t.join();
}

// Wilson score interval at z = 1.96, outward-rounded.
RatIv wilson(unsigned long succ, unsigned long total) {
  Rat z = make_rat(49, 25), n(static_cast<long>(total));
  Rat p = Rat(static_cast<long>(succ)) / n;
  Rat z2 = z * z;
  Rat center = p + z2 / (2 * n), denom = 1 + z2 / n;
  RatIv root = sqrt_interval(p * (1 - p) / n + z2 / (4 * n * n), 40);
  return {(center - z * root.hi) / denom, (center + z * root.hi) / denom};
}

// exact rational distance from the instance's closed-form solution set
bool within_digits(const DyadicVec& out, const SolutionSet& truth, long K) {
  if (out.empty()) return false;
  RealRatio d = set_distance_exact(to_real_vec(out), truth, /*p=*/-1);
  return d.cmp(Real(pow10(-K))) <= 0;
}

// ---------------------------------------------------------------------------
// solve-bp

int cmd_solve_bp(const std::string& instance, std::size_t N, long n_had, std::size_t s_level,
                 long K, const std::string& delta_str, int digits) {
  Rat delta = parse_rat(delta_str);
  BpSetup setup;
  if (instance == "identity")
    setup = identity_setup(N);
  else if (instance == "hadamard")
    setup = hadamard_setup(n_had);
  else if (instance == "multimin")
    setup = multimin_setup(s_level, N ? N : 5 * s_level, delta);
  else {
    std::cerr << "unknown instance kind: " << instance << "\n";
    return kConfig;
  }
  if (!k_within_accuracy_bound(K, setup.par, delta)) {
    Rat thr = (1 - setup.par.rho) / (16 * setup.par.tau * pow10(K));
    std::cerr << "config rejected: delta " << delta << " exceeds the accuracy threshold " << thr
              << " for K = " << K << "\n";
    return kConfig;
  }
  auto oracle = std::make_shared<RoundingOracle>(setup.data);
  OracleView view{oracle, setup.data->m, setup.data->N};
  BpSolveResult res;
  try {
    res = bp_solve(view, K, setup.par, delta);
  } catch (const ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return kViolation;
  }
  RatIv err = set_distance(to_real_vec(res.x), setup.truth, -1, 40);
  json out;
  out["instance"] = instance;
  out["m"] = setup.data->m;
  out["N"] = setup.data->N;
  out["K"] = K;
  out["iterations"] = res.inner.iterations;
  out["budget"] = res.inner.budget;
  out["digits_served"] = oracle->account().max_precision;
  out["constants"] = {{"n1", res.consts.n1}, {"n2", res.consts.n2},
                      {"n3", res.consts.n3}, {"n4", res.consts.n4}};
  json xs = json::array();
  for (const Dyadic& d : res.x) {
    Rat r = to_rat(d);
    xs.push_back(dec(r, digits, r >= 0 ? +1 : -1));
  }
  out["x"] = xs;
  out["error"] = iv_json(err, digits);
  bool ok = err.hi <= pow10(-K);
  out["guarantee_met"] = ok;
  std::cout << out.dump(2) << "\n";
  return ok ? kOk : kViolation;
}

// ---------------------------------------------------------------------------
// family

int cmd_family(Kind kind, long K, std::size_t m, std::size_t N, const Rat& alpha, const Rat& beta,
               bool weak, int digits) {
  RegParams reg;
  FamilyPoint fp = weak ? weak_point(kind, K, m, N, alpha, beta, reg)
                        : strong_point(kind, K, m, N, alpha, beta, reg);
  SolutionSet sol = solve_closed_form(fp);
  json out;
  out["kind"] = kind_name(kind);
  out["mode"] = weak ? "weak" : "strong";
  out["K"] = K;
  out["m"] = m;
  out["N"] = N;
  out["alpha"] = alpha.get_str();
  out["beta"] = beta.get_str();
  out["y1"] = iv_json(fp.y1.interval(64), digits);
  json pieces = json::array();
  for (const SolutionPiece& p : sol.pieces) {
    json piece;
    piece["segment"] = p.is_segment;
    json a = json::array(), b = json::array();
    for (const Real& v : p.a) a.push_back(iv_json(v.interval(64), digits));
    if (p.is_segment)
      for (const Real& v : p.b) b.push_back(iv_json(v.interval(64), digits));
    piece["a"] = a;
    if (p.is_segment) piece["b"] = b;
    pieces.push_back(piece);
  }
  out["solution"] = pieces;
  std::cout << out.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// demo-strong: a registry of strategies, each fed the staircase oracle and
// then confronted with a fork that answers its whole transcript identically.

struct Strategy {
  std::string name;
  Rat tolerance;  // the accuracy this strategy claims
  std::function<DyadicVec(const OracleView&, Kind, long, const RegParams&)> run;
};

int cmd_demo_strong(Kind kind, long K, std::size_t m, std::size_t N, long round_precision) {
  RegParams reg;
  std::vector<Strategy> registry;
  registry.push_back({"det-k-minus-1-at-K", pow10(-K),
                      [](const OracleView& v, Kind k, long kk, const RegParams& r) {
                        return det_k_minus_1(v, k, kk + 1, r);
                      }});
  registry.push_back({"round-and-solve", pow10(-K),
                      [&](const OracleView& v, Kind k, long kk, const RegParams& r) {
                        std::size_t c2 = is_tv(k) ? v.N - 1 : 1;
                        Rat a = v.A(0, 0, round_precision), b = v.A(0, c2, round_precision);
                        Rat y1 = v.y(0, round_precision);
                        auto clamp = [](const Rat& x) {
                          return rat_max(rat_min(x, make_rat(1, 2)), pow2(-8));
                        };
                        FamilyPoint fp = strong_point(k, kk, v.m, v.N, clamp(a), clamp(b), r);
                        fp.y1 = Real(y1);
                        SolutionSet s = solve_closed_form(fp);
                        DyadicVec out(v.N);
                        for (std::size_t i = 0; i < v.N; ++i)
                          out[i] = approx_dyadic(s.pieces[0].a[i], bits_for_digits(kk) + 4);
                        return out;
                      }});
  registry.push_back({"poly-k-minus-2", pow10(-(K - 2)),
                      [](const OracleView& v, Kind k, long kk, const RegParams& r) {
                        return poly_k_minus_2(v, k, kk, r).output;
                      }});

  json report = json::array();
  bool sane = true;
  for (const Strategy& strat : registry) {
    BreakdownFamily fam = build_breakdown_family(kind, K, m, N, BreakdownMode::Strong, reg);
    auto stair = std::make_shared<StaircaseOracle>(fam);
    OracleView view{stair, m, N};
    DyadicVec out;
    try {
      out = strat.run(view, kind, K, reg);
    } catch (const FamilyExhausted&) {
      // querying past the commitment depth concedes: the family is deeper
      // than the digit budget in the paper's setting
    }
    Transcript t = stair->transcript();
    long M = 0;
    for (const auto& e : t)
      if (e.n > M) M = e.n;
    auto fork = adversary_fork(*stair, t, fam.separation());
    (void)fork;
    long q = M + 1;
    RatIv da = out.empty() ? RatIv(Rat(1))
                           : set_distance(to_real_vec(out), fam.target(1, q), -1, 40);
    RatIv db = out.empty() ? RatIv(Rat(1))
                           : set_distance(to_real_vec(out), fam.target(2, q), -1, 40);
    bool fooled = rat_max(da.lo, db.lo) > strat.tolerance;
    json row;
    row["strategy"] = strat.name;
    row["digits_served"] = M;
    row["fork_index"] = q;
    row["miss_lo"] = dec(rat_max(da.lo, db.lo), 12, -1);
    row["tolerance"] = strat.tolerance.get_str();
    row["fooled"] = fooled;
    report.push_back(row);
    // the first two claim K digits and must be fooled; the last claims only
    // K-2 digits and must survive
    bool expect_fooled = strat.name != "poly-k-minus-2";
    if (fooled != expect_fooled) sane = false;
  }
  std::cout << json{{"kind", kind_name(kind)}, {"K", K}, {"report", report}}.dump(2) << "\n";
  return sane ? kOk : kViolation;
}

// ---------------------------------------------------------------------------
// demo-weak: digits consumed against the gap exponent

int cmd_demo_weak(Kind kind, long K, std::size_t m, std::size_t N, long t_min, long t_max,
                  bool strong_control) {
  RegParams reg;
  std::cout << "t,digits,queries\n";
  std::vector<std::pair<long, long>> rows;
  for (long t = t_min; t <= t_max; ++t) {
    FamilyPoint fp;
    if (strong_control) {
      fp = strong_point(kind, K, m, N, make_rat(1, 2), make_rat(1, 2), reg);
    } else {
      Rat beta = make_rat(1, 2) - pow2(-t);
      fp = weak_point(kind, K, m, N, make_rat(1, 2), beta, reg);
    }
    auto oracle = make_oracle(fp.instance());
    OracleView view{oracle, m, N};
    DyadicVec out = det_k_minus_1(view, kind, K, reg, /*iter_cap=*/t_max + 64);
    if (!within_digits(out, solve_closed_form(fp), K - 1)) return kViolation;
    DigitAccount acc = oracle->account();
    rows.emplace_back(t, acc.max_precision);
    std::cout << t << "," << acc.max_precision << "," << acc.queries << "\n";
  }
  if (strong_control) return kOk;
  // least-squares slope of digits against t
  double n = static_cast<double>(rows.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [t, d] : rows) {
    sx += t;
    sy += d;
    sxx += double(t) * t;
    sxy += double(t) * d;
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  std::cout << "# slope," << slope << "\n";
  return (slope > 0.8 && slope < 1.2) ? kOk : kViolation;
}

// ---------------------------------------------------------------------------
// trials: randomised K-digit success rate

int cmd_trials(Kind kind, long K, std::size_t m, std::size_t N, const Rat& alpha, const Rat& beta,
               unsigned long trials, std::uint64_t seed, bool weak) {
  RegParams reg;
  FamilyPoint fp = weak ? weak_point(kind, K, m, N, alpha, beta, reg)
                        : strong_point(kind, K, m, N, alpha, beta, reg);
  SolutionSet truth = solve_closed_form(fp);
  auto data = fp.instance().data;
  std::vector<char> ok(trials, 0);
  run_pool(trials, [&](std::size_t i) {
    auto oracle = std::make_shared<RoundingOracle>(data);
    OracleView view{oracle, m, N};
    AlgorithmRun run = randomised_k_digit(view, kind, K, reg, seed + i);
    ok[i] = !run.nonhalt && within_digits(run.output, truth, K);
  });
  unsigned long succ = 0;
  for (char c : ok) succ += c;
  RatIv w = wilson(succ, trials);
  json out;
  out["kind"] = kind_name(kind);
  out["K"] = K;
  out["alpha"] = alpha.get_str();
  out["beta"] = beta.get_str();
  out["trials"] = trials;
  out["successes"] = succ;
  out["rate"] = dec(Rat(static_cast<long>(succ)) / Rat(static_cast<long>(trials)), 6, -1);
  out["wilson"] = iv_json(w, 6);
  bool pass;
  if (alpha == beta)
    pass = w.lo <= make_rat(2, 3) && make_rat(2, 3) <= w.hi;
  else
    pass = 100 * succ >= 99 * trials;
  out["guarantee_met"] = pass;
  std::cout << out.dump(2) << "\n";
  return pass ? kOk : kViolation;
}

// ---------------------------------------------------------------------------
// exitflag

int cmd_exitflag(const Rat& alpha, std::size_t m, std::size_t N, long K, bool corrupt) {
  FamilyPoint fp = exit_point(alpha, m, N, K);
  SolutionSet truth = solve_closed_form(fp);
  auto oracle = make_oracle(fp.instance());
  OracleView view{oracle, m, N};
  // the inner algorithm: an honest 10^-K reading of the true solution,
  // optionally corrupted in its first coordinate
  long bits = bits_for_digits(K) + 4;
  DyadicVec inner(N);
  for (std::size_t i = 0; i < N; ++i) inner[i] = approx_dyadic(truth.pieces[0].a[i], bits);
  if (corrupt) inner[0] = approx_dyadic(Real(to_rat(inner[0]) + 5 * pow10(-K)), bits);
  Rat g1 = to_rat(approx_dyadic(truth.pieces[0].a[0], bits));
  RatVec inner_rat(N);
  for (std::size_t i = 0; i < N; ++i) inner_rat[i] = to_rat(inner[i]);
  int flag = compute_exit_flag(g1, inner_rat, K);
  DyadicVec final_out =
      compute_true_solution(view, flag, inner, Kind::LP, K, RegParams{});
  bool ok = within_digits(final_out, truth, K) && (flag == (corrupt ? 0 : 1));
  json out;
  out["alpha"] = alpha.get_str();
  out["K"] = K;
  out["flag"] = flag;
  out["corrupted_inner"] = corrupt;
  out["recovered"] = ok;
  std::cout << out.dump(2) << "\n";
  return ok ? kOk : kViolation;
}

// ---------------------------------------------------------------------------
// decision

int cmd_decision(const std::string& cse, const Rat& alpha, std::size_t m, std::size_t N, long K,
                 const Rat& M) {
  FamilyPoint fp;
  int want;
  if (cse == "strong") {
    fp = decision_strong(alpha, m, N, K, M);
    want = 1;
  } else if (cse == "weak-pos") {
    fp = decision_weak_pos(alpha, m, N, K, M);
    want = 0;
  } else if (cse == "weak-neg") {
    fp = decision_weak_neg(alpha, m, N, K, M);
    want = 1;
  } else {
    std::cerr << "case must be strong | weak-pos | weak-neg\n";
    return kConfig;
  }
  auto oracle = make_oracle(fp.instance());
  OracleView view{oracle, m, N};
  int got = smale9_decision(view, K);
  json out;
  out["case"] = cse;
  out["alpha"] = alpha.get_str();
  out["M"] = M.get_str();
  out["K"] = K;
  out["decision"] = got;
  out["expected"] = want;
  out["digits_served"] = oracle->account().max_precision;
  std::cout << out.dump(2) << "\n";
  return got == want ? kOk : kViolation;
}

// ---------------------------------------------------------------------------
// condition

int cmd_condition(Kind kind, long K, std::size_t m, std::size_t N, const Rat& alpha,
                  const Rat& beta, unsigned directions, std::uint64_t seed, int digits) {
  RegParams reg;
  FamilyPoint fp = strong_point(kind, K, m, N, alpha, beta, reg);
  RatMat a = build_matrix(kind, alpha, beta, m, N);
  RatIv cm = cond_mat(a * a.transpose());
  RatIv fpc = c_fp(fp);
  SolutionMapEstimate est = cond_solution_map_sampled(fp, directions, seed);
  json out;
  out["kind"] = kind_name(kind);
  out["cond_gram"] = iv_json(cm, digits);
  out["c_fp"] = iv_json(fpc, digits);
  out["solution_map_lower"] = dec(est.lower, digits, -1);
  out["solution_map_bound"] = est.bound;
  out["samples_used"] = est.samples_used;
  bool ok = est.lower <= est.bound && est.samples_used > 0;
  out["guarantee_met"] = ok;
  std::cout << out.dump(2) << "\n";
  return ok ? kOk : kViolation;
}

// ---------------------------------------------------------------------------
// rip

int cmd_rip(long n, const std::string& rows_csv, std::size_t s, bool falsify,
            const std::string& rho_str, const std::string& tau_str, unsigned long trials,
            std::uint64_t seed, int digits) {
  std::vector<std::size_t> rows;
  for (long v : parse_long_list(rows_csv)) rows.push_back(static_cast<std::size_t>(v));
  SubsampledHadamard sh = subsample_hadamard(n, rows, Rat(1) / Rat(1L << n));
  json out;
  out["n"] = n;
  out["m"] = sh.m();
  out["N"] = sh.N();
  out["s"] = s;
  if (falsify) {
    auto cx = rnp_falsify(sh.base(), s, parse_rat(rho_str), parse_rat(tau_str), trials, seed);
    out["counterexample_found"] = cx.has_value();
    if (cx) {
      json v = json::array();
      for (const Rat& x : cx->v) v.push_back(x.get_str());
      out["v"] = v;
      out["support"] = cx->support;
    }
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  RatIv delta = rip_constant(sh.gram(), s);
  out["rip_constant"] = iv_json(delta, digits);
  try {
    RnpParams p = rip_to_rnp(delta.hi);
    out["rho"] = iv_json(p.rho, digits);
    out["tau"] = iv_json(p.tau, digits);
  } catch (const std::domain_error& e) {
    out["rnp"] = std::string("not derivable: ") + e.what();
  }
  std::cout << out.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// sweep

int cmd_sweep(std::size_t s_level, const std::string& n_list, const std::string& k_list,
              const std::string& delta_str) {
  Rat delta = parse_rat(delta_str);
  std::vector<long> ns = parse_long_list(n_list), ks = parse_long_list(k_list);
  BpClassParams par{make_rat(1, 2), Rat(39), Rat(1), Rat(2)};
  for (long K : ks)
    if (!k_within_accuracy_bound(K, par, delta)) {
      Rat thr = (1 - par.rho) / (16 * par.tau * pow10(K));
      std::cerr << "config rejected: delta " << delta << " exceeds the accuracy threshold "
                << thr << " for K = " << K << "\n";
      return kConfig;
    }
  struct Row {
    long N, K;
    std::string err;
    long iters, budget, digits;
    bool ok;
  };
  std::vector<std::pair<long, long>> jobs;
  for (long N : ns)
    for (long K : ks) jobs.emplace_back(N, K);
  std::vector<Row> rows(jobs.size());
  std::atomic<bool> violated{false};
  run_pool(jobs.size(), [&](std::size_t i) {
    auto [N, K] = jobs[i];
    BpSetup setup = multimin_setup(s_level, static_cast<std::size_t>(N), delta);
    auto oracle = std::make_shared<RoundingOracle>(setup.data);
    OracleView view{oracle, setup.data->m, setup.data->N};
    Row r{N, K, "", 0, 0, 0, false};
    try {
      BpSolveResult res = bp_solve(view, K, setup.par, delta);
      RatIv err = set_distance(to_real_vec(res.x), setup.truth, -1, 40);
      r.err = dec(err.hi, 12, +1);
      r.iters = res.inner.iterations;
      r.budget = res.inner.budget;
      r.digits = oracle->account().max_precision;
      r.ok = err.hi <= pow10(-K);
    } catch (const ContractViolation&) {
      r.err = "violation";
    }
    if (!r.ok) violated = true;
    rows[i] = r;
  });
  std::cout << "n_var,K,error_hi,iterations,budget,digits,ok\n";
  for (const Row& r : rows)
    std::cout << 2 * r.N << "," << r.K << "," << r.err << "," << r.iters << "," << r.budget << ","
              << r.digits << "," << (r.ok ? 1 : 0) << "\n";
  return violated ? kViolation : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic laboratory for minimisation with inexact oracles"};
  app.require_subcommand(1);

  std::string kind_str = "LP", instance = "identity", case_str = "strong";
  std::string alpha_str = "1/2", beta_str = "1/2", delta_str = "0", m_str = "0";
  std::string rows_csv = "0", n_list = "10", k_list = "2", rho_str = "1/3", tau_str = "2";
  std::size_t m = 4, N = 6, s_level = 2;
  long K = 2, n_had = 2, t_min = 4, t_max = 24, round_precision = 20;
  unsigned long trials = 1000;
  unsigned directions = 16;
  std::uint64_t seed = 0;
  int digits = 12;
  bool weak = false, corrupt = false, falsify = false, strong_control = false;

  auto* sb = app.add_subcommand("solve-bp", "run the ellipsoid basis-pursuit solver");
  sb->add_option("--instance", instance, "identity | hadamard | multimin");
  sb->add_option("--N", N, "columns (identity / multimin padding)");
  sb->add_option("--n", n_had, "Hadamard order");
  sb->add_option("--s", s_level, "sparsity level of the multimin core");
  sb->add_option("--K", K, "requested correct digits");
  sb->add_option("--delta", delta_str, "noise level (exact rational)");
  sb->add_option("--digits", digits, "output decimal digits");

  auto* fa = app.add_subcommand("family", "materialise a family member and its solution");
  fa->add_option("--kind", kind_str);
  fa->add_option("--K", K);
  fa->add_option("--m", m);
  fa->add_option("--N", N);
  fa->add_option("--alpha", alpha_str);
  fa->add_option("--beta", beta_str);
  fa->add_flag("--weak", weak);
  fa->add_option("--digits", digits);

  auto* ds = app.add_subcommand("demo-strong", "adversarial fork against the strategy registry");
  ds->add_option("--kind", kind_str);
  ds->add_option("--K", K);
  ds->add_option("--m", m);
  ds->add_option("--N", N);
  ds->add_option("--round-precision", round_precision);

  auto* dw = app.add_subcommand("demo-weak", "digit consumption against the gap exponent");
  dw->add_option("--kind", kind_str);
  dw->add_option("--K", K);
  dw->add_option("--m", m);
  dw->add_option("--N", N);
  dw->add_option("--t-min", t_min);
  dw->add_option("--t-max", t_max);
  dw->add_flag("--strong-control", strong_control);

  auto* tr = app.add_subcommand("trials", "randomised K-digit success rate");
  tr->add_option("--kind", kind_str);
  tr->add_option("--K", K);
  tr->add_option("--m", m);
  tr->add_option("--N", N);
  tr->add_option("--alpha", alpha_str);
  tr->add_option("--beta", beta_str);
  tr->add_option("--trials", trials);
  tr->add_option("--seed", seed)->required();
  tr->add_flag("--weak", weak);

  std::string exit_alpha_str = "1/3";
  auto* ef = app.add_subcommand("exitflag", "exit-flag computation and recovery");
  ef->add_option("--alpha", exit_alpha_str);
  ef->add_option("--m", m);
  ef->add_option("--N", N);
  ef->add_option("--K", K);
  ef->add_flag("--corrupt", corrupt);

  auto* de = app.add_subcommand("decision", "objective-threshold decision bit");
  de->add_option("--case", case_str, "strong | weak-pos | weak-neg");
  de->add_option("--alpha", alpha_str);
  de->add_option("--m", m);
  de->add_option("--N", N);
  de->add_option("--K", K);
  de->add_option("--M", m_str, "threshold constant (exact rational)");

  auto* co = app.add_subcommand("condition", "condition numbers of a family member");
  co->add_option("--kind", kind_str);
  co->add_option("--K", K);
  co->add_option("--m", m);
  co->add_option("--N", N);
  co->add_option("--alpha", alpha_str);
  co->add_option("--beta", beta_str);
  co->add_option("--directions", directions);
  co->add_option("--seed", seed)->required();
  co->add_option("--digits", digits);

  auto* ri = app.add_subcommand("rip", "restricted-isometry and nullspace certificates");
  ri->add_option("--n", n_had)->required();
  ri->add_option("--rows", rows_csv, "kept rows, comma separated");
  ri->add_option("--s", s_level);
  ri->add_flag("--falsify", falsify);
  ri->add_option("--rho", rho_str);
  ri->add_option("--tau", tau_str);
  ri->add_option("--trials", trials);
  ri->add_option("--seed", seed);
  ri->add_option("--digits", digits);

  auto* sw = app.add_subcommand("sweep", "accuracy/cost sweep of the basis-pursuit solver");
  sw->add_option("--s", s_level);
  sw->add_option("--N-list", n_list, "comma separated");
  sw->add_option("--K-list", k_list, "comma separated");
  sw->add_option("--delta", delta_str);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kConfig;
  }

  try {
    if (ri->parsed() && falsify && ri->count("--seed") == 0) {
      std::cerr << "--seed is required with --falsify\n";
      return kConfig;
    }
    if (sb->parsed())
      return cmd_solve_bp(instance, N, n_had, s_level, K, delta_str, digits);
    if (fa->parsed())
      return cmd_family(parse_kind(kind_str), K, m, N, parse_rat(alpha_str), parse_rat(beta_str),
                        weak, digits);
    if (ds->parsed()) return cmd_demo_strong(parse_kind(kind_str), K, m, N, round_precision);
    if (dw->parsed())
      return cmd_demo_weak(parse_kind(kind_str), K, m, N, t_min, t_max, strong_control);
    if (tr->parsed())
      return cmd_trials(parse_kind(kind_str), K, m, N, parse_rat(alpha_str), parse_rat(beta_str),
                        trials, seed, weak);
    if (ef->parsed()) return cmd_exitflag(parse_rat(exit_alpha_str), m, N, K, corrupt);
    if (de->parsed())
      return cmd_decision(case_str, parse_rat(alpha_str), m, N, K, parse_rat(m_str));
    if (co->parsed())
      return cmd_condition(parse_kind(kind_str), K, m, N, parse_rat(alpha_str),
                           parse_rat(beta_str), directions, seed, digits);
    if (ri->parsed())
      return cmd_rip(n_had, rows_csv, s_level, falsify, rho_str, tau_str, trials, seed, digits);
    if (sw->parsed()) return cmd_sweep(s_level, n_list, k_list, delta_str);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return kViolation;
  }
  return kConfig;
}
