#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hopeedi/config.h"
#include "hopeedi/corpus.h"
#include "hopeedi/ensemble.h"
#include "hopeedi/features.h"
#include "hopeedi/langid.h"
#include "hopeedi/metrics.h"
#include "hopeedi/translit.h"

namespace hopeedi {

enum class Stage { Preprocess, LanguageDetection, Transliteration, Features, Classification };

std::string_view stage_name(Stage stage);

// Language-side resources built once from a config: detector profiles and,
// for Tamil and Malayalam, the romanization table.
struct LanguageResources {
  std::vector<LanguageProfile> profiles;
  std::optional<SchemeTable> scheme;
};

LanguageResources build_language_resources(const PipelineConfig& cfg);

// The hope/not-hope classifier and, in TF-IDF mode, its vocabulary.
struct HopeModel {
  std::optional<Vocabulary> vocab;
  Ensemble ensemble;
};

struct CommentResult {
  Label label = Label::NotHope;
  std::string normalized;
  std::string detected;     // language code, empty when the text was empty
  bool gated = false;       // NotLanguage assigned by the language gate
  std::string model_input;  // text after transliteration
  bool over_token_budget = false;
  std::vector<Stage> trace;  // filled only when tracing
};

// Text as it enters the classifier: normalized and, for Tamil and Malayalam,
// transliterated.
std::string prepare_for_classifier(const std::string& raw, const PipelineConfig& cfg,
                                   const LanguageResources& res);

// Trains the hope classifier on the Hope/NotHope rows of `train`.
// `train_embeddings`, when given, is row-aligned with `train`.
HopeModel train_hope_model(const PipelineConfig& cfg, const LanguageResources& res,
                           const Corpus& train,
                           const std::vector<FeatureVector>* train_embeddings);

// Runs every comment through preprocessing, language gating, transliteration
// and classification. Output order follows the input rows.
std::vector<CommentResult> classify_comments(const PipelineConfig& cfg,
                                             const LanguageResources& res, const HopeModel& model,
                                             const Corpus& comments,
                                             const std::vector<FeatureVector>* embeddings,
                                             bool trace = false);

// Model directory layout written by `train` and read by `predict`.
void save_hope_model(const std::filesystem::path& dir, const PipelineConfig& cfg,
                     const HopeModel& model);
HopeModel load_hope_model(const std::filesystem::path& dir);

struct RunInputs {
  std::filesystem::path train;
  std::optional<std::filesystem::path> dev;
  std::filesystem::path test;
};

struct RunResult {
  std::vector<CommentResult> dev;
  std::vector<CommentResult> test;
  std::optional<EvalReport> dev_report;
  std::optional<EvalReport> test_report;
  std::vector<std::string> warnings;
  std::string manifest;
};

// Full run. Writes predictions.{dev,test}.tsv, report.{dev,test}.{txt,tsv},
// the model files and manifest.txt into `out_dir`. Errors carry the stage in
// which they happened.
RunResult run_pipeline(const PipelineConfig& cfg, const RunInputs& inputs,
                       const std::filesystem::path& out_dir, bool trace = false);

// Reads the [config] and [inputs] sections of a manifest written by
// run_pipeline, for re-running it.
std::pair<PipelineConfig, RunInputs> read_manifest(const std::filesystem::path& path);

// Hex SHA-256 of a file's bytes.
std::string file_sha256(const std::filesystem::path& path);

void write_predictions(const std::filesystem::path& path, const std::vector<Label>& labels,
                       DatasetLang lang);

}  // namespace hopeedi
