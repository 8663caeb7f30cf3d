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

#include "bizfair/commands.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "bizfair/error.h"
#include "bizfair/evalbias.h"
#include "bizfair/reports.h"
#include "json.hpp"

namespace bizfair {
namespace fs = std::filesystem;

fs::path data_dir() {
  if (const char* env = std::getenv("BIZFAIR_DATA_DIR"); env && *env) return env;
  return BIZFAIR_DATA_DIR;
}

NameLexicon load_lexicon(const NameSources& sources) {
  const fs::path male =
      sources.male.empty() ? data_dir() / "census" / "dist.male.first" : sources.male;
  const fs::path female =
      sources.female.empty() ? data_dir() / "census" / "dist.female.first" : sources.female;
  return load_census_names(male, female);
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create " + dir.string() + ": " + ec.message());
}

std::vector<std::string> dictionary_or_default(const fs::path& path) {
  return load_dictionary(path.empty() ? data_dir() / "words.txt" : path);
}

NameLists name_lists_or_default(const fs::path& path) {
  return path.empty() ? default_name_lists() : load_name_lists(path);
}

// Label space for high-level reporting; nullopt when the records use labels
// the space cannot map.
std::optional<LabelSpace> reporting_space(const fs::path& labels,
                                          const std::vector<Record>& records) {
  LabelSpace space = labels.empty() ? LabelSpace::vancouver() : LabelSpace::load(labels);
  for (const Record& r : records) {
    if (!space.contains(r.label)) {
      if (!labels.empty()) throw UsageError("label not in " + labels.string() + ": " + r.label);
      return std::nullopt;
    }
  }
  return space;
}

void check_ks(const std::vector<int>& ks, std::size_t n_labels) {
  if (ks.empty()) throw UsageError("need at least one k");
  for (int k : ks) {
    if (k < 1 || static_cast<std::size_t>(k) > n_labels) {
      throw UsageError("k must be in [1, " + std::to_string(n_labels) + "]");
    }
  }
}

std::vector<BiasReport> run_audits(std::span<const Model> models,
                                   const std::vector<int>& approaches,
                                   BiasAuditOptions base, const fs::path& dictionary,
                                   const std::vector<std::vector<std::string>>& texts) {
  std::vector<BiasReport> reports;
  for (int approach : approaches) {
    base.approach = approach;
    if (approach == 1 && base.dictionary.empty()) {
      base.dictionary = dictionary_or_default(dictionary);
    }
    if (approach == 2 && texts.empty()) {
      throw UsageError("approach 2 needs held-out texts (--input test.tsv)");
    }
    reports.push_back(bias_audit(models, base, texts));
  }
  return reports;
}

}  // namespace

void cmd_prepare(const PrepareOptions& options, std::ostream& log) {
  const LicenceTable table = read_licences(options.input, options.delimiter);
  const Dataset data = build_dataset(table.rows, LabelSpace::vancouver(), options.min_samples);
  auto [train, test] = split(data.records, {options.test_fraction, options.seed});

  ensure_dir(options.out_dir);
  write_records(options.out_dir / "dataset.tsv", data.records);
  write_records(options.out_dir / "train.tsv", train);
  write_records(options.out_dir / "test.tsv", test);
  data.space.save(options.out_dir / "labels.tsv");

  const IngestStats& s = data.stats;
  log << "rows read:            " << table.rows.size() << '\n'
      << "rows failing parse:   " << table.parse_failures << '\n'
      << "names skipped:        " << s.skipped_names << '\n'
      << "dropped labels:       " << s.dropped_labels << '\n'
      << "unknown labels:       " << s.unknown_labels << " (" << s.unknown_label_counts.size()
      << " distinct)\n"
      << "duplicates removed:   " << s.duplicates << '\n'
      << "rare-label records:   " << s.rare_label_records << '\n'
      << "records:              " << data.records.size() << '\n'
      << "labels:               " << data.space.labels().size() << '\n'
      << "train / test:         " << train.size() << " / " << test.size() << '\n';
}

void cmd_train(const TrainOptions& options, std::ostream& log) {
  const std::vector<Record> records = read_records(options.input);
  NameLexicon lexicon;
  if (options.mode != TrainingMode::kRaw) lexicon = load_lexicon(options.names);
  TrainLog train_log;
  const Model model =
      train_model(records, options.hp, options.mode, lexicon, options.mask, &train_log);
  save(model, options.out);

  log << "mode " << to_string(options.mode) << ", " << records.size() << " records, "
      << model.vocab.size() << " tokens, " << model.labels.size() << " labels\n";
  for (std::size_t e = 0; e < train_log.epoch_loss.size(); ++e) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", train_log.epoch_loss[e]);
    log << "epoch " << e + 1 << " loss " << buf << '\n';
  }
  if (train_log.skipped > 0) {
    log << "skipped " << train_log.skipped << " record visits with no known token\n";
  }
}

void cmd_predict(const PredictOptions& options, std::ostream& out) {
  const Model model = load(options.model);
  const Prediction pred = predict_topk(model, options.text, options.k);
  if (options.json) {
    nlohmann::json doc;
    doc["text"] = options.text;
    doc["input"] = preprocess(model, options.text);
    for (const auto& [label, prob] : pred.ranked) {
      doc["predictions"].push_back({{"label", model.labels[label]}, {"probability", prob}});
    }
    out << doc.dump(2) << '\n';
    return;
  }
  for (const auto& [label, prob] : pred.ranked) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", prob);
    out << model.labels[label] << '\t' << buf << '\n';
  }
}

void cmd_evaluate(const EvaluateOptions& options, std::ostream& out) {
  const Model model = load(options.model);
  const std::vector<Record> test = read_records(options.input);
  if (test.empty()) throw UsageError("test set is empty: " + options.input.string());
  check_ks(options.ks, model.labels.size());

  std::optional<LabelSpace> space;
  if (options.high_level) {
    space = reporting_space(options.labels, test);
    if (!space) throw UsageError("test labels are not in the built-in label space; pass --labels");
  }
  const EvalReport report = evaluate(model, test, options.ks, space ? &*space : nullptr);
  const EvalSummary summary = summarize(options.model.filename().string(), {&report, 1});
  out << (options.json ? eval_json({&summary, 1}) : eval_text({&summary, 1}));
}

void cmd_bias(const BiasOptions& options, std::ostream& out) {
  std::vector<fs::path> paths = options.models;
  if (!options.models_dir.empty()) {
    std::vector<fs::path> found;
    for (const auto& entry : fs::directory_iterator(options.models_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".bin") {
        found.push_back(entry.path());
      }
    }
    std::sort(found.begin(), found.end());
    paths.insert(paths.end(), found.begin(), found.end());
  }
  if (paths.empty()) throw UsageError("no models given (--model or --models)");

  std::vector<Model> models;
  for (const fs::path& p : paths) models.push_back(load(p));

  std::vector<std::vector<std::string>> texts;
  if (!options.input.empty()) {
    std::vector<std::string> names;
    for (const Record& r : read_records(options.input)) names.push_back(r.name);
    texts.push_back(std::move(names));
  }

  BiasAuditOptions audit;
  audit.n = options.n;
  audit.min_count = options.min_count;
  audit.seed = options.seed;
  audit.lists = name_lists_or_default(options.name_lists);
  const std::vector<BiasReport> reports =
      run_audits(models, options.approaches, audit, options.dictionary, texts);

  const std::string name = std::string(to_string(models.front().mode));
  out << (options.json ? bias_json(name, reports) : bias_text(name, reports));
  if (!options.out_dir.empty()) {
    ensure_dir(options.out_dir);
    write_file(options.out_dir / "bias_report.tsv", bias_tsv(name, reports));
    write_file(options.out_dir / "bias_report.txt", bias_text(name, reports));
    if (options.json) write_file(options.out_dir / "bias_report.json", bias_json(name, reports));
  }
}

void cmd_runs(const RunsOptions& options, std::ostream& out, std::ostream& log) {
  if (options.runs < 1) throw UsageError("--runs must be >= 1");
  const std::vector<Record> records = read_records(options.input);
  if (records.size() < 2) throw UsageError("dataset needs at least 2 records");
  const std::optional<LabelSpace> space = reporting_space(options.labels, records);
  if (!space) log << "labels outside the built-in label space; skipping high-level report\n";

  NameLexicon lexicon;
  if (options.mode != TrainingMode::kRaw) lexicon = load_lexicon(options.names);

  std::vector<Model> models;
  std::vector<EvalReport> evals;
  std::vector<std::vector<std::string>> test_texts;
  for (int run = 0; run < options.runs; ++run) {
    const std::uint64_t run_seed = options.seed + static_cast<std::uint64_t>(run);
    auto [train, test] = split(records, {options.test_fraction, run_seed});
    Hyperparams hp = options.hp;
    hp.seed = run_seed;
    TrainLog train_log;
    Model model = train_model(train, hp, options.mode, lexicon, options.mask, &train_log);
    check_ks(options.ks, model.labels.size());
    evals.push_back(evaluate(model, test, options.ks, space ? &*space : nullptr));

    char loss[32];
    std::snprintf(loss, sizeof(loss), "%.6f",
                  train_log.epoch_loss.empty() ? 0.0 : train_log.epoch_loss.back());
    log << "run " << run + 1 << "/" << options.runs << ": seed " << run_seed << ", train "
        << train.size() << ", test " << test.size() << ", final loss " << loss << '\n';

    std::vector<std::string> names;
    names.reserve(test.size());
    for (const Record& r : test) names.push_back(r.name);
    test_texts.push_back(std::move(names));
    models.push_back(std::move(model));
  }

  ensure_dir(options.out_dir);
  if (options.save_models) {
    ensure_dir(options.out_dir / "models");
    for (std::size_t i = 0; i < models.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "run_%02zu.bin", i);
      save(models[i], options.out_dir / "models" / name);
    }
  }

  const std::string name(to_string(options.mode));
  const EvalSummary summary = summarize(name, evals);
  write_file(options.out_dir / "eval_report.tsv", eval_tsv({&summary, 1}));
  write_file(options.out_dir / "eval_report.txt", eval_text({&summary, 1}));

  BiasAuditOptions audit;
  audit.n = options.n;
  audit.min_count = options.min_count;
  audit.seed = options.seed;
  audit.lists = name_lists_or_default(options.name_lists);
  const std::vector<BiasReport> reports =
      run_audits(models, options.approaches, audit, options.dictionary, test_texts);
  write_file(options.out_dir / "bias_report.tsv", bias_tsv(name, reports));
  write_file(options.out_dir / "bias_report.txt", bias_text(name, reports));
  if (options.json) {
    write_file(options.out_dir / "eval_report.json", eval_json({&summary, 1}));
    write_file(options.out_dir / "bias_report.json", bias_json(name, reports));
  }

  out << eval_text({&summary, 1}) << '\n' << bias_text(name, reports);
}

}  // namespace bizfair
