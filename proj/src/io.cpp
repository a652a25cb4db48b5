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

#include "revbound/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "revbound/version.hpp"

namespace revbound {
namespace {

using nlohmann::json;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::runtime_error(where + ": " + what);
}

const json& require_field(const json& node, const std::string& name,
                          const std::string& where) {
  if (!node.is_object()) fail(where, "expected a JSON object");
  const auto it = node.find(name);
  if (it == node.end()) fail(where, "missing field \"" + name + "\"");
  return *it;
}

std::vector<double> number_array(const json& node, const std::string& where) {
  if (!node.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_number()) {
      fail(where + "[" + std::to_string(i) + "]", "expected a number");
    }
    out.push_back(node[i].get<double>());
  }
  return out;
}

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(path, e.what());
  }
}

Feasibility feasibility_from_json(const json& node, std::size_t n,
                                  const std::string& where) {
  const std::string kind =
      require_field(node, "kind", where).get<std::string>();
  if (kind == "kunit") {
    const json& h = require_field(node, "H", where);
    if (!h.is_number_integer() || h.get<int>() <= 0) {
      fail(where + ".H", "expected a positive integer");
    }
    return Feasibility::k_unit(static_cast<std::size_t>(h.get<int>()));
  }
  if (kind == "partition") {
    const json& groups_node = require_field(node, "groups", where);
    const json& caps_node = require_field(node, "caps", where);
    if (!groups_node.is_array() || !caps_node.is_array()) {
      fail(where, "\"groups\" and \"caps\" must be arrays");
    }
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t g = 0; g < groups_node.size(); ++g) {
      const std::string gw = where + ".groups[" + std::to_string(g) + "]";
      if (!groups_node[g].is_array()) fail(gw, "expected an array of indices");
      std::vector<std::size_t> group;
      for (const auto& idx : groups_node[g]) {
        if (!idx.is_number_integer() || idx.get<long long>() < 0) {
          fail(gw, "bidder indices must be nonnegative integers");
        }
        group.push_back(static_cast<std::size_t>(idx.get<long long>()));
      }
      groups.push_back(std::move(group));
    }
    std::vector<int> caps;
    for (std::size_t g = 0; g < caps_node.size(); ++g) {
      const json& c = caps_node[g];
      if (!c.is_number_integer() || c.get<long long>() <= 0) {
        fail(where + ".caps[" + std::to_string(g) + "]",
             "expected a positive integer");
      }
      caps.push_back(c.get<int>());
    }
    Feasibility f = Feasibility::partition(std::move(groups), std::move(caps));
    try {
      f.validate_partition(n);
    } catch (const std::exception& e) {
      fail(where, e.what());
    }
    return f;
  }
  fail(where + ".kind", "unknown feasibility kind \"" + kind +
                            "\" (expected \"kunit\" or \"partition\")");
}

std::vector<Distribution> bidders_from_json(const json& node,
                                            const std::string& where) {
  const json& arr = require_field(node, "bidders", where);
  if (!arr.is_array() || arr.empty()) {
    fail(where + ".bidders", "expected a nonempty array");
  }
  std::vector<Distribution> bidders;
  bidders.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    bidders.push_back(distribution_from_json(
        arr[i], where + ".bidders[" + std::to_string(i) + "]"));
  }
  return bidders;
}

}  // namespace

Distribution distribution_from_json(const json& node,
                                    const std::string& where) {
  std::vector<double> support =
      number_array(require_field(node, "support", where), where + ".support");
  std::vector<double> probs =
      number_array(require_field(node, "probs", where), where + ".probs");
  try {
    return Distribution(std::move(support), std::move(probs));
  } catch (const std::exception& e) {
    fail(where, e.what());
  }
}

Distribution load_distribution_file(const std::string& path) {
  return distribution_from_json(parse_json_file(path), path);
}

LoadedInstance load_instance_file(const std::string& path) {
  const json root = parse_json_file(path);
  LoadedInstance loaded;
  std::vector<Distribution> bidders = bidders_from_json(root, path);
  const std::size_t n = bidders.size();

  if (root.contains("alphas")) {
    loaded.has_alphas = true;
    loaded.alphas = number_array(root["alphas"], path + ".alphas");
    if (loaded.alphas.size() != n) {
      fail(path + ".alphas", "expected one entry per bidder");
    }
  }

  Feasibility feasibility = Feasibility::k_unit(1);
  if (root.contains("feasibility")) {
    feasibility = feasibility_from_json(root["feasibility"], n,
                                        path + ".feasibility");
  } else if (!loaded.has_alphas) {
    fail(path, "missing field \"feasibility\"");
  }
  loaded.instance = Instance{std::move(bidders), std::move(feasibility)};
  return loaded;
}

PaInstance load_pa_instance_file(const std::string& path) {
  LoadedInstance loaded = load_instance_file(path);
  if (!loaded.has_alphas) fail(path, "missing field \"alphas\"");
  PaInstance pa{std::move(loaded.instance.bidders), std::move(loaded.alphas)};
  try {
    pa.validate();
  } catch (const std::exception& e) {
    fail(path + ".alphas", e.what());
  }
  return pa;
}

std::string scurve_csv(const SCurve& curve) {
  const bool mc = curve.provenance == SCurve::Provenance::kMonteCarlo;
  const std::string provenance =
      mc ? "monte-carlo(" + std::to_string(curve.trials) + ")" : "exact";
  const std::vector<double>& values = mc ? curve.s_regularized : curve.s;
  std::ostringstream out;
  out << "tau,s,provenance\n";
  for (std::size_t k = 0; k < curve.taus.size(); ++k) {
    out << fmt(curve.taus[k]) << "," << fmt(values[k]) << "," << provenance
        << "\n";
  }
  return out.str();
}

void write_scurve_csv(const SCurve& curve, const std::string& path) {
  write_text_file(path, scurve_csv(curve));
}

std::string bound_table_csv(const BoundTable& table) {
  std::ostringstream out;
  out << "table,n,H,k,lp_value,bound,baseline\n";
  for (const BoundRow& row : table.rows) {
    out << table.which << ",";
    if (row.n > 0) out << row.n;
    out << ",";
    if (row.H > 0) out << row.H;
    out << ",";
    if (row.k > 0) out << row.k;
    out << "," << fmt(row.lp_value) << "," << fmt(row.bound) << ","
        << fmt(row.baseline) << "\n";
  }
  return out.str();
}

std::string bound_table_markdown(const BoundTable& table) {
  std::ostringstream out;
  auto rule = [&out](std::size_t cols) {
    out << "|";
    for (std::size_t c = 0; c < cols; ++c) out << " --- |";
    out << "\n";
  };

  if (table.which == "multiunit") {
    // One column per H; baseline row above the bound row.
    out << "| |";
    for (const BoundRow& row : table.rows) out << " H=" << row.H << " |";
    out << "\n";
    rule(table.rows.size() + 1);
    out << "| baseline |";
    for (const BoundRow& row : table.rows) out << " " << fmt(row.baseline)
                                               << " |";
    out << "\n| bound |";
    for (const BoundRow& row : table.rows) out << " " << fmt(row.bound)
                                               << " |";
    out << "\n";
    return out.str();
  }

  if (table.which == "esp-k") {
    out << "| k | bound |\n";
    rule(2);
    for (const BoundRow& row : table.rows) {
      out << "| " << row.k << " | " << fmt(row.bound) << " |\n";
    }
    return out.str();
  }

  // spm-n / esp-n: rows indexed by n, one column per k, trailing baseline.
  std::vector<int> ks;
  for (const BoundRow& row : table.rows) {
    if (std::find(ks.begin(), ks.end(), row.k) == ks.end()) ks.push_back(row.k);
  }
  out << "| n |";
  for (int k : ks) out << " k=" << k << " |";
  out << " baseline |\n";
  rule(ks.size() + 2);
  std::vector<int> ns;
  for (const BoundRow& row : table.rows) {
    if (std::find(ns.begin(), ns.end(), row.n) == ns.end()) ns.push_back(row.n);
  }
  for (int n : ns) {
    out << "| " << n << " |";
    double baseline = 0.0;
    for (int k : ks) {
      const auto it = std::find_if(
          table.rows.begin(), table.rows.end(),
          [&](const BoundRow& row) { return row.n == n && row.k == k; });
      if (it == table.rows.end()) {
        out << " |";
      } else {
        out << " " << fmt(it->bound) << " |";
        baseline = it->baseline;
      }
    }
    out << " " << fmt(baseline) << " |\n";
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(path, "cannot open file for writing");
  out << text;
  if (!out) fail(path, "write failed");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

std::vector<GoldenRow> read_golden_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open file");
  std::vector<GoldenRow> rows;
  std::string line;
  int lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!saw_header) {
      if (t != "table,n,H,k,bound") {
        fail(path + ":" + std::to_string(lineno),
             "expected header \"table,n,H,k,bound\"");
      }
      saw_header = true;
      continue;
    }
    const std::vector<std::string> fields = split(t, ',');
    if (fields.size() != 5) {
      fail(path + ":" + std::to_string(lineno), "expected 5 fields");
    }
    GoldenRow row;
    row.table = trim(fields[0]);
    try {
      auto opt_int = [](const std::string& s) {
        return s.empty() ? 0 : std::stoi(s);
      };
      row.n = opt_int(trim(fields[1]));
      row.H = opt_int(trim(fields[2]));
      row.k = opt_int(trim(fields[3]));
      row.bound = std::stod(trim(fields[4]));
    } catch (const std::exception&) {
      fail(path + ":" + std::to_string(lineno), "malformed numeric field");
    }
    rows.push_back(row);
  }
  if (!saw_header) fail(path, "no header row found");
  return rows;
}

std::string GoldenReport::summary() const {
  std::ostringstream out;
  out << (passed ? "PASS" : "FAIL") << ": " << rows_compared
      << " rows compared, max |diff| = " << fmt(max_abs_diff);
  if (!failures.empty()) {
    out << "; " << failures.size() << " failure(s):";
    for (const GoldenDiff& d : failures) {
      out << "\n  " << d.golden.table;
      if (d.golden.n > 0) out << " n=" << d.golden.n;
      if (d.golden.H > 0) out << " H=" << d.golden.H;
      if (d.golden.k > 0) out << " k=" << d.golden.k;
      if (d.found) {
        out << ": expected " << fmt(d.golden.bound) << ", got "
            << fmt(d.actual) << " (diff " << fmt(d.actual - d.golden.bound)
            << ")";
      } else {
        out << ": no matching generated row";
      }
    }
  }
  return out.str();
}

GoldenReport compare_to_golden(const BoundTable& table,
                               const std::vector<GoldenRow>& golden,
                               double tolerance) {
  std::map<std::tuple<std::string, int, int, int>, double> actual;
  for (const BoundRow& row : table.rows) {
    actual[{table.which, row.n, row.H, row.k}] = row.bound;
  }
  GoldenReport report;
  for (const GoldenRow& row : golden) {
    GoldenDiff diff;
    diff.golden = row;
    const auto it = actual.find({row.table, row.n, row.H, row.k});
    if (it == actual.end()) {
      diff.found = false;
      report.failures.push_back(diff);
      report.passed = false;
      continue;
    }
    diff.found = true;
    diff.actual = it->second;
    ++report.rows_compared;
    const double abs_diff = std::abs(diff.actual - row.bound);
    report.max_abs_diff = std::max(report.max_abs_diff, abs_diff);
    if (abs_diff > tolerance) {
      report.failures.push_back(diff);
      report.passed = false;
    }
  }
  return report;
}

Config parse_config(const std::string& text, const std::string& where) {
  Config config;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') {
        fail(where + ":" + std::to_string(lineno), "unterminated [section]");
      }
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      fail(where + ":" + std::to_string(lineno),
           "expected \"key = value\"");
    }
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      fail(where + ":" + std::to_string(lineno), "empty key");
    }
    // Strip an inline comment: everything from the first '#' that does not
    // sit inside a quoted value.
    bool in_single = false;
    bool in_double = false;
    for (std::size_t i = 0; i < value.size(); ++i) {
      const char c = value[i];
      if (c == '"' && !in_single) {
        in_double = !in_double;
      } else if (c == '\'' && !in_double) {
        in_single = !in_single;
      } else if (c == '#' && !in_single && !in_double) {
        value = trim(value.substr(0, i));
        break;
      }
    }
    if (value.size() >= 2 && ((value.front() == '"' && value.back() == '"') ||
                              (value.front() == '\'' && value.back() == '\''))) {
      value = value.substr(1, value.size() - 2);
    }
    if (!section.empty()) key = section + "." + key;
    config[key] = value;
  }
  return config;
}

Config load_config_file(const std::string& path) {
  return parse_config(read_text_file(path), path);
}

std::string config_get(const Config& config, const std::string& key,
                       const std::string& fallback) {
  const auto it = config.find(key);
  return it == config.end() ? fallback : it->second;
}

int config_get_int(const Config& config, const std::string& key,
                   int fallback) {
  const auto it = config.find(key);
  if (it == config.end()) return fallback;
  try {
    return std::stoi(it->second);
  } catch (const std::exception&) {
    fail("config key \"" + key + "\"", "not an integer: " + it->second);
  }
}

double config_get_double(const Config& config, const std::string& key,
                         double fallback) {
  const auto it = config.find(key);
  if (it == config.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    fail("config key \"" + key + "\"", "not a number: " + it->second);
  }
}

bool config_get_bool(const Config& config, const std::string& key,
                     bool fallback) {
  const auto it = config.find(key);
  if (it == config.end()) return fallback;
  if (it->second == "true" || it->second == "1" || it->second == "yes") {
    return true;
  }
  if (it->second == "false" || it->second == "0" || it->second == "no") {
    return false;
  }
  fail("config key \"" + key + "\"", "not a boolean: " + it->second);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const std::string& raw : split(text, ',')) {
    const std::string token = trim(raw);
    if (token.empty()) {
      throw std::invalid_argument("empty entry in integer list: " + text);
    }
    const std::size_t dots = token.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stoi(token));
      } else {
        const int lo = std::stoi(trim(token.substr(0, dots)));
        const int hi = std::stoi(trim(token.substr(dots + 2)));
        if (hi < lo) {
          throw std::invalid_argument("descending range: " + token);
        }
        for (int v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("malformed integer list entry: " + token);
    }
  }
  return out;
}

std::string config_hash(const Config& config) {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& [key, value] : config) {
    mix(key);
    mix("=");
    mix(value);
    mix("\n");
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json outcome_to_json(const MechanismOutcome& outcome) {
  return nlohmann::json{{"mechanism", outcome.mechanism},
                        {"winners", outcome.winners},
                        {"payments", outcome.payments},
                        {"revenue", outcome.revenue},
                        {"welfare", outcome.welfare}};
}

void append_jsonl(const std::string& path, const nlohmann::json& line) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) fail(path, "cannot open file for appending");
  out << line.dump() << "\n";
  if (!out) fail(path, "write failed");
}

nlohmann::json make_report(const Config& config, nlohmann::json body) {
  body["version"] = kVersion;
  body["config_hash"] = config_hash(config);
  return body;
}

}  // namespace revbound
