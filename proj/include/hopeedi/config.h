#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "hopeedi/ensemble.h"
#include "hopeedi/labels.h"
#include "hopeedi/langid.h"
#include "hopeedi/metrics.h"
#include "hopeedi/textprep.h"

namespace hopeedi {

enum class FeatureMode { Tfidf, Embeddings };

// Everything a pipeline run depends on. Paths are stored absolute.
struct PipelineConfig {
  DatasetLang lang = DatasetLang::English;
  NormalizationConfig normalization;

  int ngram_order = kDefaultNgramOrder;
  double smoothing_alpha = kDefaultSmoothingAlpha;
  double script_threshold = kDefaultScriptThreshold;
  std::map<std::string, std::filesystem::path> profile_files;    // code -> profile
  std::map<std::string, std::filesystem::path> profile_corpora;  // code -> text corpus

  std::filesystem::path scheme_file;

  FeatureMode feature_mode = FeatureMode::Tfidf;
  std::size_t min_df = 1;
  std::size_t embedding_dim = kEmbeddingDim;
  std::size_t token_limit = kTokenLimit;
  std::filesystem::path embeddings_train;
  std::filesystem::path embeddings_dev;
  std::filesystem::path embeddings_test;

  TrainerConfig trainer;
  EnsembleConfig ensemble;
  AggregateOptions metrics;

  // Throws Error(Config) when a constraint between fields is violated.
  void validate() const;
};

// Line-oriented key=value; '#' starts a comment. Relative paths are resolved
// against `base_dir`. Unknown keys and bad values throw Error(Config).
PipelineConfig parse_config(std::string_view text, const std::filesystem::path& base_dir);
PipelineConfig load_config(const std::filesystem::path& path);

// Applies one key=value setting on top of an existing config.
void apply_config_setting(PipelineConfig& cfg, std::string_view key, std::string_view value,
                          const std::filesystem::path& base_dir);

// Canonical key=value form with every setting spelled out. Parsing it back
// yields an equal config.
std::string render_config(const PipelineConfig& cfg);

}  // namespace hopeedi
