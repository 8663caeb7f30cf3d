// Copyright 2026 The Bizfair Authors.
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

#include "bizfair/reports.h"

#include <cstdio>
#include <sstream>

#include "bizfair/error.h"
#include "json.hpp"

namespace bizfair {
namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string rpad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

nlohmann::json stats_json(const RunStats& s) {
  return {{"mean", s.mean}, {"stddev", s.stddev}, {"values", s.values}};
}

nlohmann::json optional_stats_json(const std::optional<RunStats>& s) {
  return s ? stats_json(*s) : nlohmann::json(nullptr);
}

std::optional<RunStats> aggregate_defined(const std::vector<std::optional<double>>& values) {
  std::vector<double> defined;
  for (const auto& v : values) {
    if (v) defined.push_back(*v);
  }
  if (defined.empty()) return std::nullopt;
  return aggregate_runs(defined);
}

std::string pair_name(const BiasRow& row) {
  return row.list_b.empty() ? row.list_a : row.list_a + " + " + row.list_b;
}

}  // namespace

EvalSummary summarize(std::string name, std::span<const EvalReport> runs) {
  if (runs.empty()) throw UsageError("no evaluation runs to summarize");
  EvalSummary s;
  s.name = std::move(name);
  for (const EvalReport& r : runs) s.n.push_back(r.n);
  for (const auto& [k, unused] : runs.front().at_k) {
    std::vector<double> p, r;
    for (const EvalReport& run : runs) {
      p.push_back(run.at_k.at(k).precision);
      r.push_back(run.at_k.at(k).recall);
    }
    s.at_k[k] = {aggregate_runs(p), aggregate_runs(r)};
  }
  if (!runs.front().per_class.empty()) {
    for (HighLevelClass c : kHighLevelClasses) {
      std::vector<std::optional<double>> p, r;
      for (const EvalReport& run : runs) {
        auto it = run.per_class.find(c);
        p.push_back(it == run.per_class.end() ? std::nullopt : it->second.precision);
        r.push_back(it == run.per_class.end() ? std::nullopt : it->second.recall);
      }
      s.per_class[c] = {aggregate_defined(p), aggregate_defined(r)};
    }
  }
  return s;
}

std::string eval_tsv(std::span<const EvalSummary> rows) {
  std::ostringstream out;
  out << "model\tclasses\tk\tprecision_mean\tprecision_sd\trecall_mean\trecall_sd\truns\n";
  for (const EvalSummary& s : rows) {
    for (const auto& [k, pr] : s.at_k) {
      out << s.name << "\tall\t" << k << '\t' << fixed(pr.first.mean, 4) << '\t'
          << fixed(pr.first.stddev, 4) << '\t' << fixed(pr.second.mean, 4) << '\t'
          << fixed(pr.second.stddev, 4) << '\t' << s.n.size() << '\n';
    }
    for (const auto& [cls, pr] : s.per_class) {
      out << s.name << '\t' << to_string(cls) << "\t1";
      for (const auto* stats : {&pr.first, &pr.second}) {
        if (*stats) {
          out << '\t' << fixed((*stats)->mean, 4) << '\t' << fixed((*stats)->stddev, 4);
        } else {
          out << "\tNA\tNA";
        }
      }
      out << '\t' << s.n.size() << '\n';
    }
  }
  return out.str();
}

std::string eval_text(std::span<const EvalSummary> rows) {
  if (rows.empty()) return {};
  std::vector<int> ks;
  for (const auto& [k, unused] : rows.front().at_k) ks.push_back(k);

  std::size_t name_width = 5;
  for (const EvalSummary& s : rows) name_width = std::max(name_width, s.name.size());
  name_width += 2;

  std::ostringstream out;
  out << pad("Model", name_width) << pad("Classes", 9);
  for (int k : ks) {
    out << rpad("Top-" + std::to_string(k) + " P (%)", 15)
        << rpad("Top-" + std::to_string(k) + " R (%)", 15);
  }
  out << '\n' << pad("", name_width) << pad("", 9);
  for (std::size_t i = 0; i < ks.size() * 2; ++i) out << rpad("mu", 8) << rpad("sd", 7);
  out << '\n';

  for (const EvalSummary& s : rows) {
    out << pad(s.name, name_width) << pad("All", 9);
    for (int k : ks) {
      const auto& pr = s.at_k.at(k);
      out << rpad(fixed(pr.first.mean, 1), 8) << rpad(fixed(pr.first.stddev, 1), 7)
          << rpad(fixed(pr.second.mean, 1), 8) << rpad(fixed(pr.second.stddev, 1), 7);
    }
    out << '\n';
    for (const auto& [cls, pr] : s.per_class) {
      out << pad(s.name, name_width) << pad(std::string(to_string(cls)), 9);
      for (std::size_t i = 0; i < ks.size(); ++i) {
        if (ks[i] != 1) {
          out << rpad("-", 8) << rpad("-", 7) << rpad("-", 8) << rpad("-", 7);
          continue;
        }
        for (const auto* stats : {&pr.first, &pr.second}) {
          if (*stats) {
            out << rpad(fixed((*stats)->mean, 1), 8) << rpad(fixed((*stats)->stddev, 1), 7);
          } else {
            out << rpad("N/A", 8) << rpad("N/A", 7);
          }
        }
      }
      out << '\n';
    }
  }
  out << "n per run:";
  for (std::size_t n : rows.front().n) out << ' ' << n;
  out << '\n';
  return out.str();
}

std::string eval_json(std::span<const EvalSummary> rows) {
  nlohmann::json doc = nlohmann::json::array();
  for (const EvalSummary& s : rows) {
    nlohmann::json row;
    row["model"] = s.name;
    row["n"] = s.n;
    for (const auto& [k, pr] : s.at_k) {
      row["top_k"][std::to_string(k)] = {{"precision", stats_json(pr.first)},
                                         {"recall", stats_json(pr.second)}};
    }
    for (const auto& [cls, pr] : s.per_class) {
      row["high_level"][std::string(to_string(cls))] = {
          {"precision", optional_stats_json(pr.first)},
          {"recall", optional_stats_json(pr.second)}};
    }
    doc.push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

std::string bias_tsv(const std::string& name, std::span<const BiasReport> reports) {
  std::ostringstream out;
  out << "model\tapproach\tnames\tmean\tsd\tn\tmin_count\truns\n";
  for (const BiasReport& report : reports) {
    const auto emit = [&](const BiasRow& row) {
      out << name << '\t' << report.approach << '\t' << pair_name(row) << '\t'
          << fixed(row.imbalance.mean, 4) << '\t' << fixed(row.imbalance.stddev, 4)
          << '\t' << row.n << '\t' << report.min_count << '\t'
          << row.imbalance.values.size() << '\n';
    };
    for (const BiasRow& row : report.rows) emit(row);
    emit(report.average);
  }
  return out.str();
}

std::string bias_text(const std::string& name, std::span<const BiasReport> reports) {
  std::ostringstream out;
  out << "Imbalanced classification of business names (%), model: " << name << '\n';
  for (const BiasReport& report : reports) {
    std::size_t width = 10;
    for (const BiasRow& r : report.rows) width = std::max(width, pair_name(r).size());
    width += 2;
    const std::size_t n = report.rows.empty() ? 0 : report.rows.front().n;
    out << "Approach " << report.approach << " (n=" << n
        << " per side, min_count=" << report.min_count << ")\n";
    out << pad("Given names", width) << rpad("mu", 8) << rpad("sd", 8) << '\n';
    for (const BiasRow& r : report.rows) {
      out << pad(pair_name(r), width) << rpad(fixed(r.imbalance.mean, 2), 8)
          << rpad(fixed(r.imbalance.stddev, 2), 8) << '\n';
    }
    out << pad("Average", width) << rpad(fixed(report.average.imbalance.mean, 2), 8)
        << rpad(fixed(report.average.imbalance.stddev, 2), 8) << '\n';
  }
  return out.str();
}

std::string bias_json(const std::string& name, std::span<const BiasReport> reports) {
  nlohmann::json doc;
  doc["model"] = name;
  doc["approaches"] = nlohmann::json::array();
  for (const BiasReport& report : reports) {
    nlohmann::json a;
    a["approach"] = report.approach;
    a["min_count"] = report.min_count;
    for (const BiasRow& r : report.rows) {
      a["rows"].push_back({{"list_a", r.list_a},
                           {"list_b", r.list_b},
                           {"n", r.n},
                           {"imbalance", stats_json(r.imbalance)}});
    }
    a["average"] = stats_json(report.average.imbalance);
    doc["approaches"].push_back(std::move(a));
  }
  return doc.dump(2) + "\n";
}

}  // namespace bizfair
