#include "zetarel/survey.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <mpfr.h>
#include <nlohmann/json.hpp>

#include "zetarel/error.hpp"
#include "zetarel/sievecalc.hpp"

namespace zetarel {

namespace {
using json = nlohmann::json;

long ms_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

SurveyConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Err::IoError, "cannot open config " + path);
  SurveyConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t\r");
      size_t b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    try {
      if (key == "f") {
        cfg.f.clear();
        std::stringstream ss(val);
        std::string tok;
        while (std::getline(ss, tok, ',')) cfg.f.emplace_back(trim(tok));
      } else if (key == "p") cfg.p = std::stoll(val);
      else if (key == "e") cfg.e = std::stoi(val);
      else if (key == "k") cfg.k = std::stoi(val);
      else if (key == "ell_budget") cfg.ell_budget = std::stoll(val);
      else if (key == "bits") cfg.bits = std::stoi(val);
      else if (key == "height") cfg.height = std::stoi(val);
      else if (key == "seed") cfg.seed = std::stoull(val);
      else if (key == "out") cfg.out = val;
      else if (key == "format") cfg.format = val;
      else if (key == "jobs") cfg.jobs = std::stoi(val);
      else if (key == "cross_check") cfg.cross_check = (val == "1" || val == "true");
      else if (key == "pair_budget") cfg.pair_budget = std::stoull(val);
      else if (key == "cache_dir") cfg.cache_dir = val;
      else fail(Err::ConfigInvalid, "unknown key " + key);
    } catch (const std::invalid_argument&) {
      fail(Err::ConfigInvalid, "bad value for " + key);
    }
  }
  return cfg;
}

void validate_config(const SurveyConfig& cfg) {
  ZPoly f = zp::normalize(cfg.f);
  int d = zp::deg(f);
  if (d < 2 || d % 2 != 0 || f.back() != 1)
    fail(Err::ConfigInvalid, "f must be monic of even degree >= 2");
  if (!zp::is_squarefree(f)) fail(Err::ConfigInvalid, "f must be squarefree");
  if (cfg.p < 3 || !is_prime(cfg.p)) fail(Err::ConfigInvalid, "p must be an odd prime");
  if (cfg.e < 1) fail(Err::ConfigInvalid, "e >= 1");
  if (cfg.k < 1 || cfg.k > 2) fail(Err::ConfigInvalid, "k in {1,2}");
  if (cfg.format != "csv" && cfg.format != "json")
    fail(Err::ConfigInvalid, "format must be csv or json");
  if (cfg.bits < 64) fail(Err::ConfigInvalid, "bits >= 64");
  int g = d / 2;
  Int qg = pow_int(Int(cfg.p), cfg.e * g);
  if (qg > Int(static_cast<unsigned long>(kCountCap)))
    fail(Err::CapExceeded, "p^{e g} beyond the counting cap");
  // disc(f) mod p: reject upfront with the config error channel
  try {
    auto params = curve_parameters(f, cfg.p, cfg.e);
    if (params.empty()) fail(Err::ConfigInvalid, "f vanishes on all of F_q");
    make_curve(f, cfg.p, cfg.e, params.front());
  } catch (const Error& e) {
    if (e.code() == Err::SingularCurve)
      fail(Err::ConfigInvalid, std::string("family is singular: ") + e.what());
    throw;
  }
}

namespace {

SurveyRecord survey_one(const SurveyConfig& cfg, const std::vector<uint64_t>& ts) {
  SurveyRecord rec;
  rec.t = ts;
  auto t0 = std::chrono::steady_clock::now();
  std::vector<QSymplecticPoly> ls;
  for (uint64_t t : ts) {
    auto spec = make_curve(cfg.f, cfg.p, cfg.e, t);
    ls.push_back(lpolynomial(spec));
  }
  rec.ms_count = ms_since(t0);

  QSymplecticPoly prod = ls[0];
  for (size_t i = 1; i < ls.size(); ++i) prod = qs_mul(prod, ls[i]);
  rec.coeffs = prod.c;
  if (!is_q_symplectic(prod.c, prod.q) || !rh_check(prod))
    fail(Err::InvalidInput, "internal invariant: structural check failed");

  t0 = std::chrono::steady_clock::now();
  GaloisCertificate cert;
  bool cert_ok = true;
  try {
    cert = tuple_certificate(ls, cfg.ell_budget);
  } catch (const Error& e) {
    if (e.code() == Err::SharedRoots || e.code() == Err::NotSeparable) cert_ok = false;
    else throw;
  }
  rec.cert = cert_ok && cert.proven() ? "proven" : "undetermined";
  for (auto& [ell, lbl] : cert.witnesses)
    rec.witnesses.push_back(std::to_string(ell) + ":" + lbl);
  rec.ms_cert = ms_since(t0);
  for (const auto& l : ls)
    if (trace_is_zero(l)) rec.trace_zero = true;

  t0 = std::chrono::steady_clock::now();
  ReportOptions opt;
  opt.ell_budget = cfg.ell_budget;
  opt.bits = cfg.bits;
  opt.force_detectors = cfg.cross_check;
  auto rep = independence_report(ls, opt);
  rec.rel_verdict = rep.verdict_label();
  if (rep.detectors_ran) rec.nontrivial_rank = rep.multiplicative_lattice.nontrivial_rank;
  // certificate proven but the rigorous path stood aside: genus-1 torsion
  rec.torsion_escape = cert_ok && cert.proven() && !rec.trace_zero && !rep.by_certificate;
  rec.ms_rel = ms_since(t0);
  return rec;
}

}  // namespace

SurveyResult run_survey(const SurveyConfig& cfg0) {
  SurveyConfig cfg = cfg0;
  cfg.f = zp::normalize(cfg.f);
  validate_config(cfg);
  if (!cfg.cache_dir.empty()) set_lattice_cache_dir(cfg.cache_dir);

  SurveyResult res;
  res.config = cfg;
  auto params = curve_parameters(cfg.f, cfg.p, cfg.e);

  std::vector<std::vector<uint64_t>> items;
  if (cfg.k == 1) {
    for (uint64_t t : params) items.push_back({t});
  } else {
    // ordered pairs with distinct coordinates; sampled when too many
    uint64_t total = static_cast<uint64_t>(params.size()) *
                     (static_cast<uint64_t>(params.size()) - 1);
    if (total <= cfg.pair_budget) {
      for (uint64_t a : params)
        for (uint64_t b : params)
          if (a != b) items.push_back({a, b});
    } else {
      res.agg.sampled = true;
      std::mt19937_64 rng(cfg.seed ^ 0x5eedc0ffee);
      std::vector<std::pair<uint64_t, uint64_t>> chosen;
      std::unordered_set<uint64_t> seen;
      while (chosen.size() < cfg.pair_budget) {
        uint64_t i = rng() % params.size(), j = rng() % params.size();
        if (i == j) continue;
        uint64_t key = i * params.size() + j;
        if (!seen.insert(key).second) continue;
        chosen.emplace_back(params[i], params[j]);
      }
      std::sort(chosen.begin(), chosen.end());
      for (auto& [a, b] : chosen) items.push_back({a, b});
    }
  }

  res.records.resize(items.size());
  int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    for (size_t i = 0; i < items.size(); ++i) res.records[i] = survey_one(cfg, items[i]);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<size_t>(jobs));
    for (int w = 0; w < jobs; ++w) {
      pool.emplace_back([&, w] {
        try {
          while (true) {
            size_t i = next.fetch_add(1);
            if (i >= items.size()) break;
            res.records[i] = survey_one(cfg, items[i]);
          }
        } catch (...) {
          errors[static_cast<size_t>(w)] = std::current_exception();
        }
        mpfr_free_cache();  // per-thread constant caches
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  auto& agg = res.agg;
  agg.records = res.records.size();
  for (const auto& rec : res.records) {
    if (rec.cert == "proven") ++agg.certified_max;
    if (rec.trace_zero) ++agg.trace_zero;
    if (rec.rel_verdict == "has-relations" && rec.nontrivial_rank > 0) ++agg.with_nontrivial;
    if (rec.rel_verdict == "undetermined") ++agg.undetermined;
    if (rec.torsion_escape) ++agg.torsion_escapes;
    // a certified record with nonzero traces must carry no verified
    // nontrivial relation, whether the verdict came from the certificate
    // path or the detectors
    bool literal = rec.cert == "proven" && !rec.trace_zero &&
                   (rec.rel_verdict == "has-relations" || rec.nontrivial_rank > 0);
    if (literal && !rec.torsion_escape && !agg.invariant_violated) {
      agg.invariant_violated = true;
      std::string at;
      for (uint64_t t : rec.t) at += (at.empty() ? "" : ",") + std::to_string(t);
      agg.violation_at = at;
    }
  }
  int g = zp::deg(cfg.f) / 2;
  double q = std::pow(static_cast<double>(cfg.p), cfg.e);
  agg.bound_th2 = sieve_bound(q, cfg.k, exponent_gamma(GammaMethod::Th2, g, cfg.k).get_d());
  agg.bound_tori = sieve_bound(q, cfg.k, exponent_gamma(GammaMethod::Tori, g, cfg.k).get_d());
  return res;
}

// ---------------------------------------------------------------------------

std::string export_csv(const SurveyResult& r, bool include_timings) {
  std::ostringstream out;
  size_t ncoef = r.records.empty()
                     ? static_cast<size_t>(zp::deg(zp::normalize(r.config.f)) *
                                           r.config.k) + 1
                     : r.records[0].coeffs.size();
  out << "t";
  for (size_t i = 0; i < ncoef; ++i) out << ",c_" << i;
  out << ",cert,trace_zero,rel_verdict,nontrivial_rank,ms_count,ms_cert,ms_rel\n";
  for (const auto& rec : r.records) {
    std::string t;
    for (uint64_t x : rec.t) t += (t.empty() ? "" : ";") + std::to_string(x);
    out << t;
    for (const auto& c : rec.coeffs) out << "," << c.get_str();
    out << "," << rec.cert << "," << (rec.trace_zero ? 1 : 0) << "," << rec.rel_verdict
        << "," << rec.nontrivial_rank;
    if (include_timings)
      out << "," << rec.ms_count << "," << rec.ms_cert << "," << rec.ms_rel;
    else
      out << ",0,0,0";
    out << "\n";
  }
  return out.str();
}

std::string export_json(const SurveyResult& r, bool include_timings) {
  json j;
  j["p"] = r.config.p;
  j["e"] = r.config.e;
  j["k"] = r.config.k;
  j["seed"] = r.config.seed;
  std::vector<std::string> fc;
  for (const auto& c : r.config.f) fc.push_back(c.get_str());
  j["f"] = fc;
  json recs = json::array();
  for (const auto& rec : r.records) {
    json rj;
    rj["t"] = rec.t;
    std::vector<std::string> cs;
    for (const auto& c : rec.coeffs) cs.push_back(c.get_str());
    rj["coeffs"] = cs;
    rj["cert"] = rec.cert;
    rj["witnesses"] = rec.witnesses;
    rj["trace_zero"] = rec.trace_zero;
    rj["rel_verdict"] = rec.rel_verdict;
    rj["nontrivial_rank"] = rec.nontrivial_rank;
    rj["torsion_escape"] = rec.torsion_escape;
    rj["ms_count"] = include_timings ? rec.ms_count : 0;
    rj["ms_cert"] = include_timings ? rec.ms_cert : 0;
    rj["ms_rel"] = include_timings ? rec.ms_rel : 0;
    recs.push_back(rj);
  }
  j["records"] = recs;
  json agg;
  agg["records"] = r.agg.records;
  agg["certified_max"] = r.agg.certified_max;
  agg["trace_zero"] = r.agg.trace_zero;
  agg["with_nontrivial"] = r.agg.with_nontrivial;
  agg["undetermined"] = r.agg.undetermined;
  agg["torsion_escapes"] = r.agg.torsion_escapes;
  agg["sampled"] = r.agg.sampled;
  agg["invariant_violated"] = r.agg.invariant_violated;
  agg["violation_at"] = r.agg.violation_at;
  agg["bound_th2_times_O1"] = r.agg.bound_th2;
  agg["bound_tori_times_O1"] = r.agg.bound_tori;
  j["aggregate"] = agg;
  return j.dump(1) + "\n";
}

void export_to_file(const SurveyResult& r, const std::string& format,
                    const std::string& path, bool include_timings) {
  if (r.records.empty()) fail(Err::InvalidInput, "no records to export");
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Err::IoError, "cannot write " + path);
  out << (format == "json" ? export_json(r, include_timings)
                           : export_csv(r, include_timings));
}

std::vector<SurveyRecord> parse_records_json(const std::string& text) {
  json j = json::parse(text);
  std::vector<SurveyRecord> out;
  for (const auto& rj : j["records"]) {
    SurveyRecord rec;
    for (const auto& t : rj["t"]) rec.t.push_back(t.get<uint64_t>());
    for (const auto& c : rj["coeffs"]) rec.coeffs.emplace_back(c.get<std::string>());
    rec.cert = rj["cert"].get<std::string>();
    for (const auto& w : rj["witnesses"]) rec.witnesses.push_back(w.get<std::string>());
    rec.trace_zero = rj["trace_zero"].get<bool>();
    rec.rel_verdict = rj["rel_verdict"].get<std::string>();
    rec.nontrivial_rank = rj["nontrivial_rank"].get<long>();
    rec.torsion_escape = rj["torsion_escape"].get<bool>();
    rec.ms_count = rj["ms_count"].get<long>();
    rec.ms_cert = rj["ms_cert"].get<long>();
    rec.ms_rel = rj["ms_rel"].get<long>();
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace zetarel
