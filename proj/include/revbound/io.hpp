// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef REVBOUND_IO_HPP_
#define REVBOUND_IO_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "revbound/distribution.hpp"
#include "revbound/factor_lp.hpp"
#include "revbound/instance.hpp"
#include "revbound/mechanisms.hpp"
#include "revbound/myerson.hpp"
#include "revbound/position_auction.hpp"

namespace revbound {

// ---------------------------------------------------------------------------
// Instance files (JSON).
//
// A distribution is {"support":[...], "probs":[...]}.  An instance is
//   {"bidders":[dist, ...], "feasibility":{"kind":"kunit","H":2}}
// or with {"kind":"partition","groups":[[0,1],[2]],"caps":[1,1]}.
// A position-auction instance additionally carries "alphas":[...] (and may
// omit "feasibility", which position auctions do not use).
//
// All loaders throw std::runtime_error whose message names the file and the
// offending field, e.g. "inst.json: bidders[2].probs: must sum to 1".
// ---------------------------------------------------------------------------

Distribution distribution_from_json(const nlohmann::json& node,
                                    const std::string& where);
Distribution load_distribution_file(const std::string& path);

struct LoadedInstance {
  Instance instance;
  std::vector<double> alphas;  // empty unless the file had "alphas"
  bool has_alphas = false;
};

LoadedInstance load_instance_file(const std::string& path);

// Requires "alphas"; "feasibility" is ignored if present.
PaInstance load_pa_instance_file(const std::string& path);

// ---------------------------------------------------------------------------
// CSV / markdown exports.
// ---------------------------------------------------------------------------

// Columns: tau,s,provenance.  Monte Carlo curves write the regularized
// estimate in the `s` column and record the sample count in `provenance`
// ("monte-carlo(100000)"); exact curves write "exact".
std::string scurve_csv(const SCurve& curve);
void write_scurve_csv(const SCurve& curve, const std::string& path);

// Columns: table,n,H,k,lp_value,bound,baseline.  Inapplicable integer
// fields are left empty.  Values use 10 significant digits.
std::string bound_table_csv(const BoundTable& table);

// GitHub-flavored markdown, one column per k (or H for the multi-unit
// table), mirroring the CSV contents for eyeball diffs.
std::string bound_table_markdown(const BoundTable& table);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

// ---------------------------------------------------------------------------
// Golden-table comparison.  Golden CSVs carry header table,n,H,k,bound and
// may contain '#' comment lines; comparisons never mutate the files.
// ---------------------------------------------------------------------------

struct GoldenRow {
  std::string table;
  int n = 0;
  int H = 0;
  int k = 0;
  double bound = 0.0;
};

std::vector<GoldenRow> read_golden_csv(const std::string& path);

struct GoldenDiff {
  GoldenRow golden;
  double actual = 0.0;
  bool found = false;  // false: no generated row matched (table,n,H,k)
};

struct GoldenReport {
  bool passed = true;
  std::size_t rows_compared = 0;
  double max_abs_diff = 0.0;
  std::vector<GoldenDiff> failures;

  std::string summary() const;
};

GoldenReport compare_to_golden(const BoundTable& table,
                               const std::vector<GoldenRow>& golden,
                               double tolerance);

// ---------------------------------------------------------------------------
// Config files: TOML-like "key = value" lines, '#' comments, optional
// [section] headers that prefix keys as "section.key".  Values keep their
// raw text; typed getters parse on demand.
// ---------------------------------------------------------------------------

using Config = std::map<std::string, std::string>;

Config parse_config(const std::string& text, const std::string& where);
Config load_config_file(const std::string& path);

std::string config_get(const Config& config, const std::string& key,
                       const std::string& fallback);
int config_get_int(const Config& config, const std::string& key, int fallback);
double config_get_double(const Config& config, const std::string& key,
                         double fallback);
bool config_get_bool(const Config& config, const std::string& key,
                     bool fallback);

// "1,2,5" and "1..4" (inclusive range), in any combination: "1..3,8".
std::vector<int> parse_int_list(const std::string& text);

// FNV-1a (64-bit) over the canonical "key=value\n" serialization, as a
// 16-hex-digit string.  Reports embed this so runs are attributable to an
// exact configuration.
std::string config_hash(const Config& config);

// ---------------------------------------------------------------------------
// JSON reports.  All writers are deterministic: fixed key order (nlohmann
// serializes maps sorted), shortest round-trip doubles, no timestamps.
// ---------------------------------------------------------------------------

nlohmann::json outcome_to_json(const MechanismOutcome& outcome);

// Appends one compact JSON object per line.
void append_jsonl(const std::string& path, const nlohmann::json& line);

// Wraps `body` with {"version", "config_hash"} envelope fields.
nlohmann::json make_report(const Config& config, nlohmann::json body);

}  // namespace revbound

#endif  // REVBOUND_IO_HPP_
