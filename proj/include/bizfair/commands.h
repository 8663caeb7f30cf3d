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

#ifndef BIZFAIR_COMMANDS_H_
#define BIZFAIR_COMMANDS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "bizfair/classifier.h"

namespace bizfair {

// Bundled data (census names, dictionary). $BIZFAIR_DATA_DIR overrides the
// build-time location.
std::filesystem::path data_dir();

struct NameSources {
  std::filesystem::path male;    // empty: bundled census file
  std::filesystem::path female;  // empty: bundled census file
};

NameLexicon load_lexicon(const NameSources& sources);

struct PrepareOptions {
  std::filesystem::path input;
  std::filesystem::path out_dir;
  std::uint64_t seed = 42;
  double test_fraction = 0.1;
  std::size_t min_samples = 100;
  char delimiter = ',';
};

// Writes dataset.tsv, train.tsv, test.tsv and labels.tsv into out_dir.
void cmd_prepare(const PrepareOptions& options, std::ostream& log);

struct TrainOptions {
  std::filesystem::path input;
  std::filesystem::path out;
  TrainingMode mode = TrainingMode::kRaw;
  NameSources names;
  Hyperparams hp;
  MaskPolicy mask;
};

void cmd_train(const TrainOptions& options, std::ostream& log);

struct PredictOptions {
  std::filesystem::path model;
  std::string text;
  int k = 1;
  bool json = false;
};

void cmd_predict(const PredictOptions& options, std::ostream& out);

struct EvaluateOptions {
  std::filesystem::path model;
  std::filesystem::path input;
  std::vector<int> ks = {1, 2};
  bool high_level = false;
  std::filesystem::path labels;  // empty: built-in label space
  bool json = false;
};

void cmd_evaluate(const EvaluateOptions& options, std::ostream& out);

struct BiasOptions {
  std::vector<std::filesystem::path> models;
  std::filesystem::path models_dir;
  std::vector<int> approaches = {1, 2};
  std::size_t n = 10'000;
  std::size_t min_count = 5;
  std::uint64_t seed = 42;
  std::filesystem::path dictionary;  // empty: bundled word list
  std::filesystem::path input;       // test.tsv, approach 2
  std::filesystem::path name_lists;  // empty: built-in lists
  std::filesystem::path out_dir;     // optional report directory
  bool json = false;
};

void cmd_bias(const BiasOptions& options, std::ostream& out);

struct RunsOptions {
  std::filesystem::path input;  // dataset.tsv
  std::filesystem::path out_dir;
  TrainingMode mode = TrainingMode::kRaw;
  NameSources names;
  Hyperparams hp;
  MaskPolicy mask;
  double test_fraction = 0.1;
  std::uint64_t seed = 42;
  int runs = 10;
  std::vector<int> ks = {1, 2};
  std::filesystem::path labels;  // empty: built-in label space
  std::vector<int> approaches = {1, 2};
  std::size_t n = 10'000;
  std::size_t min_count = 5;
  std::filesystem::path dictionary;
  std::filesystem::path name_lists;
  bool save_models = false;
  bool json = false;
};

// Run i splits and trains with seed + i, evaluates, then audits all trained
// models. Writes eval_report.{tsv,txt}, bias_report.{tsv,txt} (and
// the .json variants with --json) into out_dir.
void cmd_runs(const RunsOptions& options, std::ostream& out, std::ostream& log);

}  // namespace bizfair

#endif  // BIZFAIR_COMMANDS_H_
