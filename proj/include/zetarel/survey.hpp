#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "zetarel/curve.hpp"
#include "zetarel/relations.hpp"

namespace zetarel {

struct SurveyConfig {
  ZPoly f;
  int64_t p = 5;
  int e = 1;
  int k = 1;
  int64_t ell_budget = kDefaultEllBudget;
  int bits = kDefaultBits;
  int height = 3;
  uint64_t seed = 1;
  std::string out;
  std::string format = "csv";  // csv | json
  int jobs = 1;
  bool cross_check = true;      // run detectors even on certified records
  uint64_t pair_budget = 2048;  // sampled k=2 tuples beyond this count
  std::string cache_dir;
};

// flat key=value text, '#' comments; keys match the field names, f as a
// comma-separated coefficient list c0,c1,...
SurveyConfig parse_config_file(const std::string& path);
void validate_config(const SurveyConfig& cfg);  // ConfigInvalid / CapExceeded

struct SurveyRecord {
  std::vector<uint64_t> t;     // parameter indices (k of them)
  std::vector<Int> coeffs;     // product L-polynomial coefficients
  std::string cert;            // proven | undetermined
  std::vector<std::string> witnesses;  // "ell:class" pairs backing the verdict
  bool trace_zero = false;     // some factor has zero trace
  std::string rel_verdict;     // independent | has-relations | undetermined
  long nontrivial_rank = 0;    // multiplicative quotient rank (detectors)
  bool torsion_escape = false; // genus-1 torsion screen rerouted the report
  long ms_count = 0, ms_cert = 0, ms_rel = 0;
};

struct SurveyAggregate {
  size_t records = 0;
  size_t certified_max = 0;
  size_t trace_zero = 0;
  size_t with_nontrivial = 0;
  size_t undetermined = 0;
  size_t torsion_escapes = 0;
  bool sampled = false;       // k = 2 tuple sampling kicked in
  // theorem-consistency: certificate Proven, all traces nonzero, verified
  // nontrivial relation, and not explained by the genus-1 torsion screen
  bool invariant_violated = false;
  std::string violation_at;
  double bound_th2 = 0, bound_tori = 0;  // sieve bounds, implied constant O(1)
};

struct SurveyResult {
  SurveyConfig config;
  std::vector<SurveyRecord> records;
  SurveyAggregate agg;
};

SurveyResult run_survey(const SurveyConfig& cfg);

// Byte-stable exports: identical config + seed give identical bytes. Wall
// times are volatile, so ms columns are zeroed unless include_timings is set.
std::string export_csv(const SurveyResult& r, bool include_timings = false);
std::string export_json(const SurveyResult& r, bool include_timings = false);
void export_to_file(const SurveyResult& r, const std::string& format,
                    const std::string& path, bool include_timings = false);

// parse a JSON export back into records (round-trip support)
std::vector<SurveyRecord> parse_records_json(const std::string& text);

}  // namespace zetarel
