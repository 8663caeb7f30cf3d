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

#ifndef BIZFAIR_REPORTS_H_
#define BIZFAIR_REPORTS_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bizfair/evalbias.h"

namespace bizfair {

// Evaluation results of one model configuration aggregated over runs.
struct EvalSummary {
  std::string name;
  std::vector<std::size_t> n;
  std::map<int, std::pair<RunStats, RunStats>> at_k;  // (precision, recall)
  // Aggregated over the runs where the value was defined; nullopt if none.
  std::map<HighLevelClass, std::pair<std::optional<RunStats>, std::optional<RunStats>>>
      per_class;
};

EvalSummary summarize(std::string name, std::span<const EvalReport> runs);

std::string eval_tsv(std::span<const EvalSummary> rows);
std::string eval_text(std::span<const EvalSummary> rows);
std::string eval_json(std::span<const EvalSummary> rows);

std::string bias_tsv(const std::string& name, std::span<const BiasReport> reports);
std::string bias_text(const std::string& name, std::span<const BiasReport> reports);
std::string bias_json(const std::string& name, std::span<const BiasReport> reports);

}  // namespace bizfair

#endif  // BIZFAIR_REPORTS_H_
