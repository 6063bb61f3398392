#include "mvxop/cli.hpp"

#include "mvxop/exceptional.hpp"
#include "mvxop/fourier.hpp"
#include "mvxop/zeros.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

namespace mvxop::cli {

using json = nlohmann::ordered_json;

namespace {

const std::set<std::string> kCommands{"weight", "mvop", "seed", "xpoly", "verify", "fourier", "zeros", "figure"};
const std::set<std::string> kSuites{"factorization", "symmetry", "pearson",       "lowering",
                                    "eigen",         "orthogonality", "adjoint", "diagonal"};
const std::set<std::string> kKeys{"N",   "alpha", "nu",  "mu",     "delta",  "m",     "n",              "order",
                                  "prec", "tol",  "out", "suite",  "check",  "panel", "figure",         "allow-small-nu",
                                  "timing", "weight-fixture"};

struct Panel {
  const char* N;
  const char* m;
  const char* n;
  const char* alpha;
  const char* nu;
};

const std::map<std::string, Panel> kPanels{
    {"1a", {"2", "30", "7", "30", "31"}},
    {"1b", {"3", "13", "5", "14", "14"}},
    {"1c", {"2", "30", "7", "30", "55/2"}},
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

unsigned parse_unsigned(const std::string& key, const std::string& v) {
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw UsageError(key + " must be a non-negative integer (got '" + v + "')");
  try {
    const unsigned long x = std::stoul(v);
    if (x > 1000000) throw UsageError(key + " is out of range (got '" + v + "')");
    return static_cast<unsigned>(x);
  } catch (const std::out_of_range&) {
    throw UsageError(key + " is out of range (got '" + v + "')");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw UsageError(key + " must be true or false (got '" + v + "')");
}

double parse_positive_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || !(x > 0) || !std::isfinite(x)) throw UsageError(key + " must be a positive number (got '" + v + "')");
  return x;
}

Rat parse_param_rat(const std::string& key, const std::string& v) {
  try {
    return parse_rat(trim(v));
  } catch (const std::invalid_argument& e) {
    throw UsageError(key + ": " + e.what());
  }
}

std::vector<Rat> parse_rat_list(const std::string& key, const std::string& v) {
  std::vector<Rat> r;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) r.push_back(parse_param_rat(key, item));
  if (r.empty()) throw UsageError(key + " must be a comma-separated list of rationals");
  return r;
}

// ---- json encoding

json to_json(const Poly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(format_rat(c));
  return a;
}

json to_json(const Mat& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_rat(m(i, j)));
    a.push_back(row);
  }
  return a;
}

json to_json(const MatPoly& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(to_json(m(i, j)));
    a.push_back(row);
  }
  return a;
}

json params_json(const Params& p) {
  json j;
  j["N"] = p.N;
  j["alpha"] = format_rat(p.alpha);
  j["nu"] = format_rat(p.nu);
  j["mu"] = json::array();
  for (const auto& q : p.mu) j["mu"].push_back(format_rat(q));
  j["delta"] = json::array();
  for (const auto& q : p.delta) j["delta"].push_back(format_rat(q));
  j["m"] = p.m;
  j["allow_small_nu"] = p.allow_small_nu;
  return j;
}

Poly poly_from_json(const json& j) {
  std::vector<Rat> c;
  for (const auto& e : j) c.push_back(parse_rat(e.get<std::string>()));
  return Poly(std::move(c));
}

MatPoly matpoly_from_json(const json& j, std::size_t N) {
  if (!j.is_array() || j.size() != N) throw std::invalid_argument("weight fixture: V must be an N x N array");
  MatPoly m(N);
  for (std::size_t i = 0; i < N; ++i) {
    if (!j[i].is_array() || j[i].size() != N) throw std::invalid_argument("weight fixture: V must be an N x N array");
    for (std::size_t k = 0; k < N; ++k) m(i, k) = poly_from_json(j[i][k]);
  }
  return m;
}

QuasiWeight load_weight_fixture(const std::string& path, const Params& p) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read weight fixture '" + path + "'");
  json j;
  try {
    j = json::parse(in);
    const long shift = j.value("shift", 0L);
    const Rat nu = j.contains("nu") ? parse_rat(j["nu"].get<std::string>()) : p.nu;
    return QuasiWeight(matpoly_from_json(j.at("V"), p.N), shift, nu);
  } catch (const json::exception& e) {
    throw std::invalid_argument("weight fixture '" + path + "': " + e.what());
  }
}

// ---- jobs

struct Job {
  std::string suite;
  unsigned n = 0;
  std::string name;
  std::function<Check()> fn;
};

struct Outcome {
  std::string suite;
  unsigned n = 0;
  std::string name;
  std::string status;
  double residual = 0;
  std::string detail;
  double ms = 0;
};

std::vector<Outcome> run_jobs(const std::vector<Job>& jobs) {
  std::vector<Outcome> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      Outcome& o = out[i];
      o.suite = job.suite;
      o.n = job.n;
      o.name = job.name;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const Check c = job.fn();
        o.status = c.ok ? "PASS" : "FAIL";
        o.residual = c.residual;
        o.detail = c.detail;
      } catch (const std::exception& e) {
        o.status = "FAIL";
        o.residual = 1;
        o.detail = std::string("error: ") + e.what();
      }
      o.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  const unsigned nthreads = std::max(1u, std::min<unsigned>(thread_limit(), static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::sort(out.begin(), out.end(), [](const Outcome& a, const Outcome& b) {
    return std::tie(a.suite, a.n, a.name) < std::tie(b.suite, b.n, b.name);
  });
  return out;
}

Check make_check(bool ok, const std::string& what, double residual_if_bad = 1) {
  return {ok, ok ? 0.0 : residual_if_bad, what + (ok ? ": holds" : ": fails")};
}

struct Report {
  json doc;
  bool failed = false;
};

Report make_report(const RunConfig& cfg, const std::vector<Outcome>& outcomes, const std::set<std::string>& advisory = {}) {
  Report r;
  r.doc["command"] = cfg.command;
  r.doc["params"] = params_json(cfg.params);
  if (cfg.command == "verify") r.doc["suite"] = cfg.suite;
  if (cfg.command == "fourier") r.doc["check"] = cfg.check;
  if (cfg.command == "figure") r.doc["panel"] = cfg.panel;
  double max_res = 0;
  json results = json::array();
  for (const auto& o : outcomes) {
    json e;
    e["name"] = o.suite + "/" + o.name;
    e["status"] = o.status;
    e["residual"] = o.residual;
    if (cfg.timing) e["runtime_ms"] = std::round(o.ms * 1000) / 1000;
    e["detail"] = o.detail;
    results.push_back(e);
    if (advisory.count(o.suite)) continue;
    max_res = std::max(max_res, o.residual);
    r.failed = r.failed || o.status != "PASS";
  }
  r.doc["status"] = r.failed ? "FAIL" : "PASS";
  r.doc["max_residual"] = max_res;
  r.doc["results"] = results;
  return r;
}

std::string with_n(const std::string& name, unsigned n) { return name + " n=" + std::to_string(n); }

QuadOptions quad_options(const RunConfig& cfg) {
  QuadOptions q;
  q.min_order = cfg.min_order;
  q.max_order = cfg.max_order;
  return q;
}

// ---- subcommands

Report cmd_weight(const RunConfig& cfg) {
  const Params& p = cfg.params;
  const QuasiWeight w = build_weight(p);
  std::vector<Job> jobs;
  jobs.push_back({"weight", 0, "symmetric", [&] { return make_check(w.v() == w.v().transpose(), "V = V^T"); }});
  jobs.push_back({"weight", 0, "positive_definite", [&] {
                    bool ok = true;
                    for (const Rat& x : {Rat(1, 10), Rat(1, 2), Rat(1), Rat(2), Rat(5), Rat(10)})
                      ok = ok && w.v().eval(x).is_positive_definite();
                    return make_check(ok, "V(x) positive definite at x = 1/10, 1/2, 1, 2, 5, 10");
                  }});
  const IndicialResult ind = indicial_exponents(m2_mat(p).transpose(), Mat(p.N));
  jobs.push_back({"weight", 0, "indicial_exponents", [&] {
                    std::vector<std::pair<Rat, unsigned>> expect;
                    for (std::size_t j = p.N; j >= 1; --j) expect.emplace_back(-p.nu - Rat(static_cast<long>(j)), 1u);
                    expect.emplace_back(Rat(0), static_cast<unsigned>(p.N));
                    return make_check(ind.numeric.empty() && ind.exact == expect, "exponents {0 x N} and {-nu-j}");
                  }});
  Report r = make_report(cfg, run_jobs(jobs));
  json d;
  d["nu"] = format_rat(w.nu());
  d["shift"] = w.shift();
  d["V"] = to_json(w.v());
  json ex = json::array();
  for (const auto& [q, k] : ind.exact) ex.push_back({{"value", format_rat(q)}, {"multiplicity", k}});
  d["indicial_exponents"] = ex;
  r.doc["data"] = d;
  return r;
}

Report cmd_mvop(const RunConfig& cfg) {
  const Params& p = cfg.params;
  const MVOPData d = monic_mvop(p, cfg.n, false);
  const RightDiffOp t0 = build_T0(p);
  std::vector<Job> jobs;
  jobs.push_back({"mvop", cfg.n, with_n("eigen", cfg.n), [&] {
                    return make_check(apply_right(t0, d.P) == RatMatFun(d.Gamma * d.P), "P_n . T0 = Gamma_n P_n");
                  }});
  jobs.push_back({"mvop", cfg.n, with_n("norm", cfg.n), [&] {
                    return make_check(d.H.is_symmetric() && d.H.is_positive_definite(), "H_n symmetric positive definite");
                  }});
  Report r = make_report(cfg, run_jobs(jobs));
  r.doc["data"] = {{"n", d.n}, {"P", to_json(d.P)}, {"H", to_json(d.H)}, {"Gamma", to_json(d.Gamma)}};
  return r;
}

Report cmd_seed(const RunConfig& cfg) {
  const Params& p = cfg.params;
  const SeedData s = build_seed(p);
  std::vector<Job> jobs;
  jobs.push_back({"seed", 0, "eigenfunction", [&] { return make_check(verify_seed(p), "seed equation"); }});
  jobs.push_back({"seed", 0, "det_closed_form", [&] {
                    return make_check(mat_det(s.F) == det_F_closed_form(p), "det F equals the product of 1F1 factors");
                  }});
  jobs.push_back({"seed", 0, "detF_positive", [&] {
                    const PositivityCertificate c = certify_detF(p, s);
                    return make_check(c.holds(), "det F has no zeros on [0, inf)");
                  }});
  Report r = make_report(cfg, run_jobs(jobs));
  r.doc["data"] = {{"m", s.m}, {"F", to_json(s.F)}, {"detF", to_json(s.detF)}, {"Upsilon", to_json(s.Upsilon)},
                   {"Phi", to_json(s.Phi)}};
  return r;
}

Report cmd_xpoly(const RunConfig& cfg) {
  const Model md = Model::build(cfg.params, cfg.n, false);
  const XPolyData& x = md.xfamily.at(cfg.n);
  std::vector<Job> jobs;
  const unsigned n = cfg.n;
  jobs.push_back({"xpoly", n, with_n("degree", n), [&] { return verify_xdegree(md, n); }});
  jobs.push_back({"xpoly", n, with_n("lowering", n), [&] { return verify_lowering(md, n); }});
  jobs.push_back({"xpoly", n, with_n("norm", n), [&] { return verify_xnorm(md, n); }});
  jobs.push_back({"xpoly", n, with_n("eigen_two_route", n), [&] { return verify_eigen_two_route(md, n); }});
  Report r = make_report(cfg, run_jobs(jobs));
  r.doc["data"] = {{"n", x.n}, {"degree", x.Phat.degree()}, {"Phat", to_json(x.Phat)}, {"Hhat", to_json(x.Hhat)}};
  return r;
}

Report cmd_verify(const RunConfig& cfg) {
  const Params& p = cfg.params;
  const std::string& s = cfg.suite;
  const bool need_T1 = s == "factorization" || s == "eigen";
  const Model md = Model::build(p, cfg.n, need_T1);
  const QuadOptions qo = quad_options(cfg);
  const double tol = cfg.tol;
  std::vector<Job> jobs;
  if (s == "factorization") {
    jobs.push_back({s, 0, "factorization", [&] { return verify_factorization(md); }});
    jobs.push_back({s, 0, "seed", [&] { return make_check(verify_seed(p), "seed equation"); }});
    jobs.push_back({s, 0, "det_closed_form", [&] {
                      return make_check(mat_det(md.seed.F) == det_F_closed_form(p), "det F closed form");
                    }});
  } else if (s == "symmetry") {
    if (cfg.weight_fixture.empty()) {
      jobs.push_back({s, 0, "symmetry", [&] { return verify_symmetry(md); }});
    } else {
      const QuasiWeight w = load_weight_fixture(cfg.weight_fixture, p);
      jobs.push_back({s, 0, "symmetry", [&md, w] { return verify_symmetry(w, md.T0); }});
    }
  } else if (s == "pearson") {
    jobs.push_back({s, 0, "pearson", [&] { return verify_pearson(md); }});
    jobs.push_back({s, 0, "pearson_symmetrized", [&] { return verify_pearson_symmetrized(md); }});
  } else if (s == "lowering") {
    for (unsigned n = 0; n <= cfg.n; ++n) {
      jobs.push_back({s, n, with_n("lowering", n), [&md, n] { return verify_lowering(md, n); }});
      jobs.push_back({s, n, with_n("degree", n), [&md, n] { return verify_xdegree(md, n); }});
      jobs.push_back({s, n, with_n("norm", n), [&md, n] { return verify_xnorm(md, n); }});
    }
  } else if (s == "eigen") {
    for (unsigned n = 0; n <= cfg.n; ++n) {
      jobs.push_back({s, n, with_n("mvop_eigen", n), [&md, n] {
                        const MVOPData& d = md.family.at(n);
                        return make_check(apply_right(md.T0, d.P) == RatMatFun(d.Gamma * d.P), "P_n . T0 = Gamma_n P_n");
                      }});
      jobs.push_back({s, n, with_n("eigen_T1", n), [&md, n] { return verify_eigen_T1(md, n); }});
      jobs.push_back({s, n, with_n("eigen_two_route", n), [&md, n] { return verify_eigen_two_route(md, n); }});
      jobs.push_back({s, n, with_n("BA", n), [&md, n] { return verify_BA(md, n); }});
    }
  } else if (s == "orthogonality") {
    jobs.push_back({s, cfg.n, with_n("gram", cfg.n), [&] { return verify_orthogonality(md, cfg.n, tol, qo); }});
  } else if (s == "adjoint") {
    for (unsigned n = 0; n <= cfg.n; ++n)
      for (unsigned k = 0; k <= cfg.n; ++k)
        jobs.push_back({s, n, "adjoint n=" + std::to_string(n) + " k=" + std::to_string(k),
                        [&md, n, k, tol, qo] { return verify_adjoint_mvop(md, n, k, tol, qo); }});
  } else if (s == "diagonal") {
    for (unsigned n = 0; n <= cfg.n; ++n)
      jobs.push_back({s, n, with_n("exact", n), [&md, n] { return verify_diagonal_exact(md, n); }});
    jobs.push_back({s, cfg.n, with_n("orthogonality", cfg.n),
                    [&] { return verify_diagonal_orthogonality(md, cfg.n, tol, qo); }});
  }
  return make_report(cfg, run_jobs(jobs));
}

Report cmd_fourier(const RunConfig& cfg) {
  const Params& p = cfg.params;
  std::vector<Job> jobs;
  json data;
  if (cfg.check == "diagram") {
    const Model md = Model::build(p, cfg.n + 1, false);
    jobs.push_back({"diagram", 0, "xi_round_trip", [&] { return verify_xi_round_trip(md); }});
    for (unsigned n = 0; n <= cfg.n; ++n) {
      jobs.push_back({"diagram", n, with_n("ttr", n), [&md, n] { return verify_ttr_operator(md, n); }});
      jobs.push_back({"diagram", n, with_n("diagram", n), [&md, n] { return verify_diagram(md, n); }});
      jobs.push_back({"diagram", n, with_n("chi_round_trip", n), [&md, n] { return verify_chi_round_trip(md, n); }});
      if (p.N == 1)
        jobs.push_back({"diagram", n, with_n("scalar_recurrence", n), [&md, n] { return verify_scalar_recurrence(md, n); }});
    }
    data["xi_order"] = xi_of_x(md).order();
    Report r = make_report(cfg, run_jobs(jobs));
    r.doc["data"] = data;
    return r;
  }
  CdhResult res;
  jobs.push_back({"cdh", cfg.n, with_n("cdh", cfg.n), [&] {
                    res = cdh_check(p.alpha, p.m, cfg.n);
                    return Check{res.ok, res.ok ? 0.0 : 1.0, res.detail};
                  }});
  Report r = make_report(cfg, run_jobs(jobs));
  r.doc["data"] = {{"max_n", res.max_n}, {"shifted_plus_form", res.shifted_plus_form}};
  return r;
}

std::string figure_title(const Params& p, unsigned n) {
  std::ostringstream os;
  os << "N=" << p.N << ", m=" << p.m << ", n=" << n << ", alpha=" << format_rat(p.alpha) << ", nu=" << format_rat(p.nu);
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << text;
}

Report cmd_zeros(const RunConfig& cfg, std::ostream& err) {
  const Params& p = cfg.params;
  const unsigned n = cfg.n;
  const Model md = Model::build(p, n, false);
  ZeroOptions zo;
  zo.precision_bits = cfg.precision_bits;
  ZeroReport z;
  const auto t0 = std::chrono::steady_clock::now();
  z = analyze_zeros(md, n, zo);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  unsigned total = 0, n_multiple = 0;
  for (const auto& r : z.roots) {
    total += r.multiplicity;
    if (r.multiplicity > 1) ++n_multiple;
  }
  const int expect_degree = static_cast<int>(p.N * (p.m * p.N + n));
  const double res_bound = std::ldexp(1.0, -static_cast<int>(z.precision_bits / 2));
  auto outcome = [&](const std::string& suite, const std::string& name, const std::string& status, double residual,
                     const std::string& detail) { return Outcome{suite, n, name, status, residual, detail, ms}; };
  auto pf = [](bool b) { return std::string(b ? "PASS" : "FAIL"); };
  std::vector<Outcome> out;
  out.push_back(outcome("zeros", "degree", pf(z.degree == expect_degree), 0, "deg det P_hat_n = " + std::to_string(z.degree)));
  out.push_back(outcome("zeros", "multiplicity_sum", pf(static_cast<int>(total) == z.degree), 0,
                        "sum of multiplicities = " + std::to_string(total)));
  out.push_back(outcome("zeros", "conjugate_closed", pf(z.conjugate_closed), 0, "roots closed under conjugation"));
  out.push_back(outcome("zeros", "residuals", pf(z.max_residual <= res_bound), z.max_residual,
                        "max relative residual against 2^-(precision/2)"));
  out.push_back(outcome("zeros", "cross_check", pf(z.cross_check_mismatches == 0), z.cross_check_mismatches,
                        "roots of the full determinant match the factored roots"));
  out.push_back(outcome("zeros", "sturm",
                        pf(z.sturm_real == static_cast<int>(z.n_real) && z.sturm_positive == static_cast<int>(z.n_positive)),
                        0, "exact Sturm counts agree with the numeric classification"));
  out.push_back(outcome("conjecture", "real_simple", to_string(z.real_simple), 0,
                        std::to_string(z.n_positive) + " distinct zeros on [0, inf), expected nN = " + std::to_string(n * p.N)));
  std::ostringstream cs;
  cs << z.n_clusters << " clusters off [0, inf), expected m = " << p.m << " of size N^2 = " << p.N * p.N;
  out.push_back(outcome("conjecture", "clusters", to_string(z.clusters), 0, cs.str()));
  out.push_back(outcome("conjecture", "coincide", to_string(z.coincide), 0,
                        std::string("det divisible by detF^(N-1): ") + (z.remainder_zero ? "yes" : "no")));
  std::sort(out.begin(), out.end(), [](const Outcome& a, const Outcome& b) {
    return std::tie(a.suite, a.n, a.name) < std::tie(b.suite, b.n, b.name);
  });
  Report r = make_report(cfg, out, {"conjecture"});
  json d;
  d["n"] = n;
  d["degree"] = z.degree;
  d["precision_bits"] = z.precision_bits;
  d["n_real"] = z.n_real;
  d["n_positive"] = z.n_positive;
  d["n_complex_distinct"] = z.n_complex_distinct;
  d["n_multiple"] = n_multiple;
  d["n_clusters"] = z.n_clusters;
  d["cluster_sizes"] = z.cluster_sizes;
  d["cluster_radius"] = z.cluster_radius;
  d["n_clusters_plain"] = z.n_clusters_plain;
  d["remainder_zero"] = z.remainder_zero;
  d["multiplicities_certified"] = z.multiplicities_certified;
  d["sturm_real"] = z.sturm_real;
  d["sturm_positive"] = z.sturm_positive;
  r.doc["data"] = d;

  if (cfg.figure || cfg.command == "figure") {
    const std::filesystem::path dir = cfg.out.empty() ? std::filesystem::path(".") : std::filesystem::path(cfg.out);
    std::filesystem::create_directories(dir);
    const std::string stem = cfg.command == "figure" ? "figure_" + cfg.panel
                                                     : "zeros_N" + std::to_string(p.N) + "_m" + std::to_string(p.m) +
                                                           "_n" + std::to_string(n);
    write_file(dir / (stem + ".csv"), zeros_csv(z));
    write_file(dir / (stem + ".svg"), zeros_svg(z, figure_title(p, n)));
    r.doc["artifacts"] = {stem + ".csv", stem + ".svg"};
    err << "wrote " << (dir / (stem + ".csv")).string() << " and " << (dir / (stem + ".svg")).string() << "\n";
  }
  return r;
}

}  // namespace

unsigned thread_limit() {
  if (const char* env = std::getenv("MVXOP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Settings parse_config_text(const std::string& text) {
  Settings s;
  std::istringstream in(text);
  std::string line;
  unsigned lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(t.substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    if (!kKeys.count(key)) throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    s[key] = trim(t.substr(eq + 1));
  }
  return s;
}

Settings read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

RunConfig make_config(const std::string& command, const Settings& given) {
  if (!kCommands.count(command)) throw UsageError("unknown command '" + command + "'");
  for (const auto& kv : given)
    if (!kKeys.count(kv.first)) throw UsageError("unknown setting '" + kv.first + "'");
  RunConfig c;
  c.command = command;
  Settings s;
  if (command == "figure") {
    const auto it = given.find("panel");
    if (it == given.end()) throw UsageError("figure needs a panel: 1a, 1b or 1c");
    const auto pn = kPanels.find(it->second);
    if (pn == kPanels.end()) throw UsageError("unknown figure panel '" + it->second + "' (expected 1a, 1b or 1c)");
    const Panel& pp = pn->second;
    s = {{"N", pp.N}, {"m", pp.m}, {"n", pp.n}, {"alpha", pp.alpha}, {"nu", pp.nu}};
    c.panel = it->second;
  }
  for (const auto& kv : given) s[kv.first] = kv.second;

  auto get = [&](const std::string& k) -> const std::string* {
    const auto it = s.find(k);
    return it == s.end() ? nullptr : &it->second;
  };
  Params& p = c.params;
  if (auto v = get("N")) p.N = parse_unsigned("N", *v);
  if (auto v = get("m")) p.m = parse_unsigned("m", *v);
  if (auto v = get("alpha")) p.alpha = parse_param_rat("alpha", *v);
  if (auto v = get("nu")) p.nu = parse_param_rat("nu", *v);
  if (auto v = get("mu")) p.mu = parse_rat_list("mu", *v);
  if (auto v = get("delta")) p.delta = parse_rat_list("delta", *v);
  if (auto v = get("allow-small-nu")) p.allow_small_nu = parse_bool("allow-small-nu", *v);
  if (auto v = get("n")) c.n = parse_unsigned("n", *v);
  if (auto v = get("order")) {
    c.max_order = parse_unsigned("order", *v);
    if (c.max_order < c.min_order) throw UsageError("order must be at least " + std::to_string(c.min_order));
  }
  if (auto v = get("prec")) {
    c.precision_bits = parse_unsigned("prec", *v);
    if (c.precision_bits < 64) throw UsageError("prec must be at least 64 bits");
  }
  if (auto v = get("tol")) c.tol = parse_positive_double("tol", *v);
  if (auto v = get("out")) c.out = *v;
  if (auto v = get("figure")) c.figure = parse_bool("figure", *v);
  if (auto v = get("timing")) c.timing = parse_bool("timing", *v);
  if (auto v = get("weight-fixture")) c.weight_fixture = *v;
  if (auto v = get("suite")) c.suite = *v;
  if (auto v = get("check")) c.check = *v;

  if (command == "verify" && !kSuites.count(c.suite))
    throw UsageError("verify needs --suite factorization|symmetry|pearson|lowering|eigen|orthogonality|adjoint|diagonal");
  if (command == "fourier" && c.check != "diagram" && c.check != "cdh")
    throw UsageError("fourier needs --check diagram|cdh");
  if (command == "fourier" && c.check == "diagram" && !get("n")) c.n = 4;
  if (command == "fourier" && c.check == "cdh" && !get("n")) c.n = 6;
  if (!c.weight_fixture.empty() && !(command == "verify" && c.suite == "symmetry"))
    throw UsageError("--weight-fixture applies to verify --suite symmetry only");
  p.complete();
  return c;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Report r;
  try {
    const std::string& c = cfg.command;
    if (c == "weight") r = cmd_weight(cfg);
    else if (c == "mvop") r = cmd_mvop(cfg);
    else if (c == "seed") r = cmd_seed(cfg);
    else if (c == "xpoly") r = cmd_xpoly(cfg);
    else if (c == "verify") r = cmd_verify(cfg);
    else if (c == "fourier") r = cmd_fourier(cfg);
    else if (c == "zeros" || c == "figure") r = cmd_zeros(cfg, err);
    else throw UsageError("unknown command '" + c + "'");
  } catch (const std::invalid_argument& e) {
    err << "mvxop: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "mvxop: " << e.what() << "\n";
    return kVerificationFailed;
  }
  const std::string text = r.doc.dump(2) + "\n";
  out << text;
  if (!cfg.out.empty()) {
    std::filesystem::create_directories(cfg.out);
    write_file(std::filesystem::path(cfg.out) / (cfg.command + ".json"), text);
  }
  return r.failed ? kVerificationFailed : kOk;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matrix-valued exceptional Laguerre polynomials: construction, verification and zeros", "mvxop"};
  app.require_subcommand(1);
  struct Bound {
    std::map<std::string, std::string> values;
    std::map<std::string, bool> flags;
    std::map<std::string, CLI::Option*> options;
    std::string config;
    CLI::Option* config_opt = nullptr;
  };
  const std::vector<std::pair<std::string, std::string>> descriptions{
      {"weight", "matrix Laguerre weight, positivity and indicial exponents"},
      {"mvop", "monic matrix orthogonal polynomial P_n with H_n and Gamma_n"},
      {"seed", "seed matrix F_m, det F_m, Upsilon_m and Phi_m"},
      {"xpoly", "exceptional polynomial P_hat_n with its norm"},
      {"verify", "identity suites"},
      {"fourier", "difference-operator diagram or continuous dual Hahn check"},
      {"zeros", "zeros of det P_hat_n"},
      {"figure", "zero plots for panels 1a, 1b, 1c"},
  };
  std::map<std::string, Bound> bound;
  for (const auto& [name, desc] : descriptions) {
    CLI::App* sub = app.add_subcommand(name, desc);
    Bound& b = bound[name];
    auto opt = [&](const std::string& key, const std::string& help) {
      b.options[key] = sub->add_option("--" + key, b.values[key], help);
    };
    auto flag = [&](const std::string& key, const std::string& help) {
      b.options[key] = sub->add_flag("--" + key, b.flags[key], help);
    };
    opt("N", "matrix size");
    opt("alpha", "alpha as p/q");
    opt("nu", "nu as p/q");
    opt("mu", "comma-separated mu_1..mu_N as p/q");
    opt("delta", "comma-separated delta_1..delta_N as p/q");
    opt("m", "seed degree");
    opt("n", "degree");
    opt("order", "largest quadrature order");
    opt("prec", "root-finding precision in bits");
    opt("tol", "relative tolerance for quadrature checks");
    opt("out", "directory for the report and artifacts");
    flag("allow-small-nu", "accept nu <= max(0, m-1)");
    flag("timing", "include runtime_ms in results");
    b.config_opt = sub->add_option("--config", b.config, "key=value file; flags take precedence");
    if (name == "verify") {
      opt("suite", "factorization|symmetry|pearson|lowering|eigen|orthogonality|adjoint|diagonal");
      opt("weight-fixture", "JSON weight replacing W in the symmetry suite");
    }
    if (name == "fourier") opt("check", "diagram|cdh");
    if (name == "zeros") flag("figure", "write CSV and SVG");
    if (name == "figure") b.options["panel"] = sub->add_option("panel", b.values["panel"], "1a, 1b or 1c")->required();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  const Bound& b = bound.at(command);
  try {
    Settings s;
    if (b.config_opt->count() > 0) s = read_config_file(b.config);
    for (const auto& [key, o] : b.options) {
      if (o->count() == 0) continue;
      const auto f = b.flags.find(key);
      s[key] = f != b.flags.end() ? (f->second ? "true" : "false") : b.values.at(key);
    }
    const RunConfig cfg = make_config(command, s);
    return run(cfg, out, err);
  } catch (const std::invalid_argument& e) {
    err << "mvxop: " << e.what() << "\n";
    return kInvalidInput;
  }
}

}  // namespace mvxop::cli
