// Copyright 2026 The MultiIE Authors.
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

#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "commands.h"
#include "multiie/augment.h"
#include "multiie/checkpoint.h"
#include "multiie/dee_model.h"
#include "multiie/error.h"
#include "multiie/see_model.h"

namespace multiie::cli {
namespace {

struct Flags {
  std::string train;
  std::string model;
  std::string synonyms;
  std::string history;
  TrainFlags training;
  std::string input = "-";
  std::string output = "-";
};

void AddTrainOptions(CLI::App* cmd, Flags& f) {
  cmd->add_option("--train", f.train, "Training records (JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--model", f.model, "Checkpoint to write")->required();
  cmd->add_option("--config", f.training.config_path, "Config file (key = value lines)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--set", f.training.overrides, "Override one config key, key=value")
      ->take_all();
  cmd->add_option("--epochs", f.training.epochs, "Number of epochs (overrides config)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--history", f.history, "Write per-epoch loss and F1 as JSON lines");
}

void AddPredictOptions(CLI::App* cmd, Flags& f) {
  cmd->add_option("--model", f.model, "Checkpoint to load")->required()->check(CLI::ExistingFile);
  cmd->add_option("-i,--input", f.input, "Event records to annotate, '-' for stdin");
  cmd->add_option("-o,--output", f.output, "Predicted records, '-' for stdout");
}

TrainConfig Resolve(TrainConfig base, Flags& f, const GlobalFlags& global) {
  f.training.seed = global.seed;
  f.training.seed_given = global.seed_given;
  return ResolveConfig(std::move(base), f.training);
}

void WriteHistory(const std::string& path, const std::vector<EpochStats>& history) {
  if (path.empty()) return;
  Output out(path);
  for (const auto& h : history) {
    out.Line(nlohmann::json{{"epoch", h.epoch}, {"loss", h.loss}, {"f1", h.f1}}.dump());
  }
}

void Summarize(const std::vector<EpochStats>& history) {
  if (history.empty()) return;
  const EpochStats& last = history.back();
  std::cerr << "trained " << last.epoch << " epochs, loss " << last.loss << ", train F1 "
            << last.f1 << '\n';
}

template <class SaveFn, class Model>
void Save(const std::string& path, const Model& model, SaveFn save) {
  Output out(path);
  save(out.stream(), model);
  if (!out.stream()) throw ArgumentError("failed writing checkpoint '" + path + "'");
}

template <class PredictFn>
void Annotate(Flags& f, PredictFn predict) {
  Input in(f.input);
  Output out(f.output);
  ForEachLine(in.stream(), [&](std::size_t, const std::string& line) {
    EventRecord record = ParseEventRecord(line);
    EventRecord annotated = FromEventDocument(predict(record), record.text);
    annotated.title = record.title;
    out.Line(FormatEventRecord(annotated));
  });
}

}  // namespace

void AddTrainingCommands(CLI::App& app, const GlobalFlags& global, Action& action) {
  auto flags = std::make_shared<Flags>();

  auto* train_see = app.add_subcommand("train-see", "Train the sentence-level event model");
  AddTrainOptions(train_see, *flags);
  train_see
      ->add_option("--synonyms", flags->synonyms, "Synonym dictionary for augmentation")
      ->check(CLI::ExistingFile);
  train_see->callback([&action, &global, flags] {
    action = [flags, &global] {
      const TrainConfig config = Resolve(TrainConfig::SeeDefaults(), *flags, global);
      const std::vector<EventRecord> records = ReadEventRecords(flags->train);
      const SeeCorpus corpus = BuildSeeCorpus(records);
      std::unique_ptr<SynonymDictionary> dict;
      if (!flags->synonyms.empty()) {
        Input syn(flags->synonyms);
        dict = std::make_unique<SynonymDictionary>(SynonymDictionary::FromStream(syn.stream()));
      }
      SeeTrainResult result = TrainSee(corpus, config, dict.get());
      Save(flags->model, result.model, SaveSeeModel);
      WriteHistory(flags->history, result.history);
      Summarize(result.history);
    };
  });

  auto* train_dee = app.add_subcommand("train-dee", "Train the document-level event model");
  AddTrainOptions(train_dee, *flags);
  train_dee->callback([&action, &global, flags] {
    action = [flags, &global] {
      const TrainConfig config = Resolve(TrainConfig::DeeDefaults(), *flags, global);
      const std::vector<EventRecord> records = ReadEventRecords(flags->train);
      DeeTrainResult result = TrainDee(BuildDeeCorpus(records), config);
      Save(flags->model, result.model, SaveDeeModel);
      WriteHistory(flags->history, result.history);
      Summarize(result.history);
    };
  });

  auto* predict_see = app.add_subcommand("predict-see", "Annotate sentences with events");
  AddPredictOptions(predict_see, *flags);
  predict_see->callback([&action, flags] {
    action = [flags] {
      Input model_in(flags->model);
      const SeeModel model = LoadSeeModel(model_in.stream());
      Annotate(*flags, [&](const EventRecord& r) { return PredictSee(model, r.id, r.text); });
    };
  });

  auto* predict_dee = app.add_subcommand("predict-dee", "Annotate documents with events");
  AddPredictOptions(predict_dee, *flags);
  predict_dee->callback([&action, flags] {
    action = [flags] {
      Input model_in(flags->model);
      const DeeModel model = LoadDeeModel(model_in.stream());
      Annotate(*flags, [&](const EventRecord& r) { return PredictDee(model, r.id, r.text); });
    };
  });
}

}  // namespace multiie::cli
