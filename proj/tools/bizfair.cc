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

// bizfair: business-type classification from business names, with given-name
// masking, gender-swap augmentation and paired-probe bias audits.
//
//   bizfair prepare  --input licences.csv --out data/
//   bizfair train    --input data/train.tsv --mode mask --out mask.bin
//   bizfair predict  --model mask.bin --k 2 "Daniel's Roofing Inc"
//   bizfair evaluate --model mask.bin --input data/test.tsv --high-level
//   bizfair bias     --model mask.bin --input data/test.tsv
//   bizfair runs     --input data/dataset.tsv --mode raw --runs 10 --out runs/
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "bizfair/commands.h"
#include "bizfair/error.h"

namespace {

namespace fs = std::filesystem;
using bizfair::Hyperparams;

void add_hyperparams(CLI::App* app, Hyperparams* hp) {
  app->add_option("--dim", hp->dim, "embedding width")->capture_default_str();
  app->add_option("--lr", hp->lr, "initial learning rate")->capture_default_str();
  app->add_option("--epochs", hp->epochs, "training epochs")->capture_default_str();
  app->add_option("--window", hp->window, "recorded only; unused in supervised mode")
      ->capture_default_str();
  app->add_option("--vocab-min-count", hp->min_count, "minimum token frequency")
      ->capture_default_str();
  app->add_option("--bucket", hp->bucket_count, "hash buckets for char n-grams")
      ->capture_default_str();
  app->add_option("--minn", hp->minn, "min char n-gram length")->capture_default_str();
  app->add_option("--maxn", hp->maxn, "max char n-gram length (0 disables)")
      ->capture_default_str();
}

void add_names(CLI::App* app, bizfair::NameSources* names) {
  app->add_option("--names-male", names->male, "census male first-name file");
  app->add_option("--names-female", names->female, "census female first-name file");
}

CLI::Option* add_mode(CLI::App* app, std::string* mode) {
  return app->add_option("--mode", *mode, "raw, mask or augment")
      ->check(CLI::IsMember({"raw", "mask", "augment"}))
      ->capture_default_str();
}

CLI::Option* add_seed(CLI::App* app, std::uint64_t* seed) {
  return app->add_option("--seed", *seed, "master seed")
      ->envname("BIZFAIR_SEED")
      ->capture_default_str();
}

void echo_config(const CLI::App* app, const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw bizfair::DataError("cannot write " + path.string());
  out << app->config_to_str(true, false);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Business-type classifier with given-name bias mitigation and auditing"};
  app.require_subcommand(1);

  bizfair::PrepareOptions prepare;
  auto* prepare_cmd = app.add_subcommand("prepare", "clean a licence CSV into train/test splits");
  prepare_cmd->set_config("--config");
  prepare_cmd->add_option("--input", prepare.input, "licence CSV")->required();
  prepare_cmd->add_option("--out", prepare.out_dir, "output directory")->required();
  add_seed(prepare_cmd, &prepare.seed);
  prepare_cmd->add_option("--test-frac", prepare.test_fraction, "test fraction")
      ->capture_default_str();
  prepare_cmd->add_option("--min-samples", prepare.min_samples, "drop rarer labels")
      ->capture_default_str();
  prepare_cmd->add_option("--delimiter", prepare.delimiter, "CSV delimiter")
      ->capture_default_str();

  bizfair::TrainOptions train;
  std::string train_mode = "raw";
  auto* train_cmd = app.add_subcommand("train", "train a model");
  train_cmd->set_config("--config");
  train_cmd->add_option("--input", train.input, "training TSV")->required();
  train_cmd->add_option("--out", train.out, "model file")->required();
  add_mode(train_cmd, &train_mode);
  add_names(train_cmd, &train.names);
  add_hyperparams(train_cmd, &train.hp);
  add_seed(train_cmd, &train.hp.seed);
  train_cmd->add_option("--placeholder", train.mask.placeholder, "mask token")
      ->capture_default_str();

  bizfair::PredictOptions predict;
  auto* predict_cmd = app.add_subcommand("predict", "classify one business name");
  predict_cmd->add_option("--model", predict.model, "model file")->required();
  predict_cmd->add_option("--k", predict.k, "labels to print")->capture_default_str();
  predict_cmd->add_option("text", predict.text, "business name")->required();
  predict_cmd->add_flag("--json", predict.json, "JSON output");

  bizfair::EvaluateOptions evaluate;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "top-k precision/recall on a test set");
  evaluate_cmd->add_option("--model", evaluate.model, "model file")->required();
  evaluate_cmd->add_option("--input", evaluate.input, "test TSV")->required();
  evaluate_cmd->add_option("--k", evaluate.ks, "k values")->delimiter(',')->capture_default_str();
  evaluate_cmd->add_flag("--high-level", evaluate.high_level, "per high-level class top-1");
  evaluate_cmd->add_option("--labels", evaluate.labels, "labels.tsv from prepare");
  evaluate_cmd->add_flag("--json", evaluate.json, "JSON output");

  bizfair::BiasOptions bias;
  auto* bias_cmd = app.add_subcommand("bias", "paired given-name bias audit");
  bias_cmd->set_config("--config");
  bias_cmd->add_option("--model", bias.models, "model file (repeatable)");
  bias_cmd->add_option("--models", bias.models_dir, "directory of *.bin models");
  bias_cmd->add_option("--approach", bias.approaches, "1 (name + word), 2 (name + test text)")
      ->delimiter(',')
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  bias_cmd->add_option("--n", bias.n, "approach-1 pairs")->capture_default_str();
  bias_cmd->add_option("--min-count", bias.min_count, "ignore smaller per-label imbalances")
      ->capture_default_str();
  add_seed(bias_cmd, &bias.seed);
  bias_cmd->add_option("--dict", bias.dictionary, "word list for approach 1");
  bias_cmd->add_option("--input", bias.input, "test TSV for approach 2");
  bias_cmd->add_option("--name-lists", bias.name_lists, "<list>\\t<Name> overrides");
  bias_cmd->add_option("--out", bias.out_dir, "also write reports here");
  bias_cmd->add_flag("--json", bias.json, "JSON output");

  bizfair::RunsOptions runs;
  std::string runs_mode = "raw";
  auto* runs_cmd = app.add_subcommand("runs", "repeated split/train/evaluate/audit cycles");
  runs_cmd->set_config("--config");
  runs_cmd->add_option("--input", runs.input, "dataset TSV")->required();
  runs_cmd->add_option("--out", runs.out_dir, "report directory")->required();
  add_mode(runs_cmd, &runs_mode);
  add_names(runs_cmd, &runs.names);
  add_hyperparams(runs_cmd, &runs.hp);
  add_seed(runs_cmd, &runs.seed);
  runs_cmd->add_option("--placeholder", runs.mask.placeholder, "mask token")
      ->capture_default_str();
  runs_cmd->add_option("--test-frac", runs.test_fraction, "test fraction")
      ->capture_default_str();
  runs_cmd->add_option("--runs", runs.runs, "number of runs")->capture_default_str();
  runs_cmd->add_option("--k", runs.ks, "k values")->delimiter(',')->capture_default_str();
  runs_cmd->add_option("--labels", runs.labels, "labels.tsv from prepare");
  runs_cmd->add_option("--approach", runs.approaches, "bias approaches")
      ->delimiter(',')
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  runs_cmd->add_option("--n", runs.n, "approach-1 pairs")->capture_default_str();
  runs_cmd->add_option("--min-count", runs.min_count, "ignore smaller per-label imbalances")
      ->capture_default_str();
  runs_cmd->add_option("--dict", runs.dictionary, "word list for approach 1");
  runs_cmd->add_option("--name-lists", runs.name_lists, "<list>\\t<Name> overrides");
  runs_cmd->add_flag("--save-models", runs.save_models, "keep models under <out>/models");
  runs_cmd->add_flag("--json", runs.json, "also write JSON reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {  // --help
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (prepare_cmd->parsed()) {
      bizfair::cmd_prepare(prepare, std::cerr);
      echo_config(prepare_cmd, prepare.out_dir / "config.txt");
    } else if (train_cmd->parsed()) {
      train.mode = bizfair::parse_training_mode(train_mode);
      bizfair::cmd_train(train, std::cerr);
      echo_config(train_cmd, fs::path(train.out).concat(".config.txt"));
    } else if (predict_cmd->parsed()) {
      bizfair::cmd_predict(predict, std::cout);
    } else if (evaluate_cmd->parsed()) {
      bizfair::cmd_evaluate(evaluate, std::cout);
    } else if (bias_cmd->parsed()) {
      bizfair::cmd_bias(bias, std::cout);
      if (!bias.out_dir.empty()) echo_config(bias_cmd, bias.out_dir / "config.txt");
    } else if (runs_cmd->parsed()) {
      runs.mode = bizfair::parse_training_mode(runs_mode);
      bizfair::cmd_runs(runs, std::cout, std::cerr);
      echo_config(runs_cmd, runs.out_dir / "config.txt");
    }
  } catch (const bizfair::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
