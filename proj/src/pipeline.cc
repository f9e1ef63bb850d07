#include "hopeedi/pipeline.h"

#include <openssl/evp.h>

#include <algorithm>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "hopeedi/error.h"
#include "hopeedi/model_io.h"
#include "hopeedi/rng.h"
#include "hopeedi/unicode.h"

namespace hopeedi {

namespace {

constexpr std::string_view kManifestMagic = "hopeedi-manifest v1";

// Runs fn(i) for i in [0, n) on contiguous chunks. If several calls throw,
// the exception of the smallest index is rethrown, so failures are reported
// the same way regardless of scheduling.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, n / 32 + 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::pair<std::size_t, std::exception_ptr>> failures(workers, {n, nullptr});
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      const std::size_t begin = w * n / workers;
      const std::size_t end = (w + 1) * n / workers;
      for (std::size_t i = begin; i < end; ++i) {
        try {
          fn(i);
        } catch (...) {
          failures[w] = {i, std::current_exception()};
          return;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  const auto first = std::min_element(failures.begin(), failures.end(),
                                      [](const auto& a, const auto& b) { return a.first < b.first; });
  if (first->second) std::rethrow_exception(first->second);
}

template <typename Fn>
auto in_stage(std::string_view stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (!e.stage().empty()) throw;
    throw e.with_stage(std::string(stage));
  }
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool is_indic(DatasetLang lang) { return lang != DatasetLang::English; }

std::vector<FeatureVector> load_aligned_embeddings(const std::filesystem::path& path,
                                                   const PipelineConfig& cfg, std::size_t rows) {
  auto vectors = load_embeddings(path, cfg.embedding_dim);
  check_row_count(vectors, rows);
  return vectors;
}

EvalReport evaluate(const Corpus& gold, const std::vector<CommentResult>& pred,
                    const AggregateOptions& options) {
  std::vector<Label> g, p;
  g.reserve(gold.size());
  p.reserve(pred.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    g.push_back(*gold[i].label);
    p.push_back(pred[i].label);
  }
  return aggregate(confusion(g, p), options);
}

std::vector<Label> labels_of(const std::vector<CommentResult>& results) {
  std::vector<Label> out;
  out.reserve(results.size());
  for (const auto& r : results) out.push_back(r.label);
  return out;
}

}  // namespace

std::string_view stage_name(Stage stage) {
  switch (stage) {
    case Stage::Preprocess: return "preprocess";
    case Stage::LanguageDetection: return "language-detection";
    case Stage::Transliteration: return "transliteration";
    case Stage::Features: return "features";
    case Stage::Classification: return "classification";
  }
  return "?";
}

std::string file_sha256(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xF];
  }
  return hex;
}

LanguageResources build_language_resources(const PipelineConfig& cfg) {
  LanguageResources res;
  for (const auto& [code, path] : cfg.profile_files) {
    if (cfg.profile_corpora.contains(code)) {
      throw Error(ErrorCode::Config, "language '" + code + "' has both a profile and a corpus");
    }
    auto profile = LanguageProfile::load(path);
    if (profile.lang() != code) {
      throw Error(ErrorCode::Config, path.string() + " holds a profile for '" + profile.lang() +
                                         "', configured as '" + code + "'");
    }
    res.profiles.push_back(std::move(profile));
  }
  for (const auto& [code, path] : cfg.profile_corpora) {
    auto lines = read_lines(path);
    for (auto& line : lines) line = normalize_text(line, cfg.normalization);
    std::erase_if(lines, [](const std::string& s) { return s.empty(); });
    res.profiles.push_back(train_profile(lines, code, cfg.ngram_order, cfg.smoothing_alpha));
  }
  std::sort(res.profiles.begin(), res.profiles.end(),
            [](const auto& a, const auto& b) { return a.lang() < b.lang(); });
  if (is_indic(cfg.lang)) res.scheme = SchemeTable::load(cfg.scheme_file, cfg.lang);
  return res;
}

std::string prepare_for_classifier(const std::string& raw, const PipelineConfig& cfg,
                                   const LanguageResources& res) {
  auto text = normalize_text(raw, cfg.normalization);
  if (is_indic(cfg.lang) && res.scheme) text = transliterate(text, *res.scheme);
  return text;
}

HopeModel train_hope_model(const PipelineConfig& cfg, const LanguageResources& res,
                           const Corpus& train,
                           const std::vector<FeatureVector>* train_embeddings) {
  // NotLanguage is assigned by the language gate, so the classifier only
  // learns Hope vs NotHope.
  std::vector<std::size_t> rows;
  for (const auto& c : train) {
    if (!c.label) throw Error(ErrorCode::UnlabeledInput, "training row " + std::to_string(c.id));
    if (*c.label != Label::NotLanguage) rows.push_back(c.id);
  }

  HopeModel model;
  std::vector<FeatureVector> x(rows.size());
  std::vector<Label> y(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) y[i] = *train[rows[i]].label;

  if (cfg.feature_mode == FeatureMode::Tfidf) {
    std::vector<std::string> docs(rows.size());
    parallel_for(rows.size(), [&](std::size_t i) {
      docs[i] = prepare_for_classifier(train[rows[i]].text, cfg, res);
    });
    model.vocab = build_vocab(docs, cfg.min_df);
    parallel_for(rows.size(), [&](std::size_t i) { x[i] = tfidf_vectorize(docs[i], *model.vocab); });
  } else {
    if (train_embeddings == nullptr) {
      throw Error(ErrorCode::Config, "embedding features need training embeddings");
    }
    check_row_count(*train_embeddings, train.size());
    for (std::size_t i = 0; i < rows.size(); ++i) x[i] = (*train_embeddings)[rows[i]];
  }
  model.ensemble = train_ensemble(x, y, cfg.ensemble, cfg.trainer);
  return model;
}

std::vector<CommentResult> classify_comments(const PipelineConfig& cfg,
                                             const LanguageResources& res, const HopeModel& model,
                                             const Corpus& comments,
                                             const std::vector<FeatureVector>* embeddings,
                                             bool trace) {
  if (cfg.feature_mode == FeatureMode::Embeddings) {
    if (embeddings == nullptr) throw Error(ErrorCode::Config, "embedding features need embeddings");
    check_row_count(*embeddings, comments.size());
  } else if (!model.vocab) {
    throw Error(ErrorCode::Config, "TF-IDF features need a vocabulary");
  }

  std::vector<CommentResult> results(comments.size());
  parallel_for(comments.size(), [&](std::size_t i) {
    auto& r = results[i];
    auto mark = [&](Stage s) {
      if (trace) r.trace.push_back(s);
    };

    mark(Stage::Preprocess);
    r.normalized = in_stage("preprocess",
                            [&] { return normalize_text(comments[i].text, cfg.normalization); });
    r.over_token_budget = !validate_token_budget(r.normalized, cfg.token_limit);

    mark(Stage::LanguageDetection);
    // A comment that normalizes to nothing (emoji only, say) has no language
    // evidence and stays in-language.
    if (!r.normalized.empty()) {
      const auto det = in_stage("language-detection", [&] {
        return detect(r.normalized, res.profiles, cfg.script_threshold);
      });
      r.detected = det.best;
      if (assign_language_class(det.best, cfg.lang) == LanguageClass::NotLanguage) {
        r.gated = true;
        r.label = Label::NotLanguage;
        return;
      }
    }

    r.model_input = r.normalized;
    if (is_indic(cfg.lang)) {
      mark(Stage::Transliteration);
      r.model_input = in_stage("transliteration", [&] { return transliterate(r.normalized, *res.scheme); });
    }

    mark(Stage::Features);
    const FeatureVector x = in_stage("features", [&] {
      return cfg.feature_mode == FeatureMode::Tfidf ? tfidf_vectorize(r.model_input, *model.vocab)
                                                    : (*embeddings)[i];
    });

    mark(Stage::Classification);
    r.label = in_stage("classification", [&] { return model.ensemble.predict(x); });
  });
  return results;
}

void save_hope_model(const std::filesystem::path& dir, const PipelineConfig& cfg,
                     const HopeModel& model) {
  std::filesystem::create_directories(dir);
  write_text(dir / "config.txt", render_config(cfg));
  if (model.vocab) write_text(dir / "vocab.tsv", model.vocab->serialize());
  save_ensemble(dir / "ensemble.model", model.ensemble);
}

HopeModel load_hope_model(const std::filesystem::path& dir) {
  HopeModel model;
  if (std::filesystem::exists(dir / "vocab.tsv")) {
    model.vocab = Vocabulary::parse(read_text(dir / "vocab.tsv"));
  }
  model.ensemble = load_ensemble(dir / "ensemble.model");
  return model;
}

void write_predictions(const std::filesystem::path& path, const std::vector<Label>& labels,
                       DatasetLang lang) {
  std::string text;
  for (Label l : labels) {
    text += dataset_label_string(l, lang);
    text += '\n';
  }
  write_text(path, text);
}

RunResult run_pipeline(const PipelineConfig& cfg, const RunInputs& inputs,
                       const std::filesystem::path& out_dir, bool trace) {
  in_stage("config", [&] { cfg.validate(); });
  RunResult result;
  if (auto warning = cfg.ensemble.validate()) result.warnings.push_back(*warning);

  const auto res = in_stage("setup", [&] { return build_language_resources(cfg); });

  const auto train = in_stage("load", [&] { return load_tsv(inputs.train, cfg.lang, true); });
  std::optional<Corpus> dev;
  if (inputs.dev) dev = in_stage("load", [&] { return load_tsv(*inputs.dev, cfg.lang, true); });
  const bool test_labeled = in_stage("load", [&] { return tsv_looks_labeled(inputs.test); });
  const auto test =
      in_stage("load", [&] { return load_tsv(inputs.test, cfg.lang, test_labeled); });

  std::optional<std::vector<FeatureVector>> emb_train, emb_dev, emb_test;
  if (cfg.feature_mode == FeatureMode::Embeddings) {
    in_stage("features", [&] {
      emb_train = load_aligned_embeddings(cfg.embeddings_train, cfg, train.size());
      if (dev) {
        if (cfg.embeddings_dev.empty()) {
          throw Error(ErrorCode::Config, "features.embeddings.dev is required with a dev set");
        }
        emb_dev = load_aligned_embeddings(cfg.embeddings_dev, cfg, dev->size());
      }
      if (cfg.embeddings_test.empty()) {
        throw Error(ErrorCode::Config, "features.embeddings.test is required");
      }
      emb_test = load_aligned_embeddings(cfg.embeddings_test, cfg, test.size());
    });
  }

  const auto model = in_stage("train", [&] {
    return train_hope_model(cfg, res, train, emb_train ? &*emb_train : nullptr);
  });

  if (dev) {
    result.dev = classify_comments(cfg, res, model, *dev, emb_dev ? &*emb_dev : nullptr, trace);
    result.dev_report = evaluate(*dev, result.dev, cfg.metrics);
  }
  result.test = classify_comments(cfg, res, model, test, emb_test ? &*emb_test : nullptr, trace);
  if (test_labeled) result.test_report = evaluate(test, result.test, cfg.metrics);

  std::size_t over_budget = 0;
  for (const auto* set : {&result.dev, &result.test}) {
    for (const auto& r : *set) over_budget += r.over_token_budget ? 1 : 0;
  }
  if (over_budget > 0) {
    result.warnings.push_back(std::to_string(over_budget) + " comment(s) exceed the " +
                              std::to_string(cfg.token_limit) + "-token budget");
  }

  // Outputs.
  std::filesystem::create_directories(out_dir);
  std::vector<std::pair<std::string, std::filesystem::path>> outputs;
  auto emit = [&](const std::string& name, const std::string& text) {
    write_text(out_dir / name, text);
    outputs.emplace_back(name, out_dir / name);
  };
  if (dev) {
    write_predictions(out_dir / "predictions.dev.tsv", labels_of(result.dev), cfg.lang);
    outputs.emplace_back("predictions.dev.tsv", out_dir / "predictions.dev.tsv");
    emit("report.dev.txt", render_report(*result.dev_report, ReportFormat::Text));
    emit("report.dev.tsv", render_report(*result.dev_report, ReportFormat::Tsv));
  }
  write_predictions(out_dir / "predictions.test.tsv", labels_of(result.test), cfg.lang);
  outputs.emplace_back("predictions.test.tsv", out_dir / "predictions.test.tsv");
  if (result.test_report) {
    emit("report.test.txt", render_report(*result.test_report, ReportFormat::Text));
    emit("report.test.tsv", render_report(*result.test_report, ReportFormat::Tsv));
  }
  save_hope_model(out_dir / "model", cfg, model);
  for (const char* name : {"model/config.txt", "model/vocab.tsv", "model/ensemble.model"}) {
    if (std::filesystem::exists(out_dir / name)) outputs.emplace_back(name, out_dir / name);
  }

  // Manifest: everything needed to repeat the run, and checksums to verify it.
  std::ostringstream m;
  m << kManifestMagic << '\n' << "rng\t" << Rng::kName << '\n';
  m << "[config]\n" << render_config(cfg);
  m << "[inputs]\n" << "train=" << std::filesystem::absolute(inputs.train).lexically_normal().string()
    << '\n';
  if (inputs.dev) {
    m << "dev=" << std::filesystem::absolute(*inputs.dev).lexically_normal().string() << '\n';
  }
  m << "test=" << std::filesystem::absolute(inputs.test).lexically_normal().string() << '\n';
  m << "[checksums]\n";
  std::vector<std::filesystem::path> checked = {inputs.train, inputs.test};
  if (inputs.dev) checked.push_back(*inputs.dev);
  for (const auto& [code, p] : cfg.profile_files) checked.push_back(p);
  for (const auto& [code, p] : cfg.profile_corpora) checked.push_back(p);
  if (!cfg.scheme_file.empty()) checked.push_back(cfg.scheme_file);
  if (cfg.feature_mode == FeatureMode::Embeddings) {
    for (const auto* p : {&cfg.embeddings_train, &cfg.embeddings_dev, &cfg.embeddings_test}) {
      if (!p->empty()) checked.push_back(*p);
    }
  }
  for (const auto& p : checked) {
    m << std::filesystem::absolute(p).lexically_normal().string() << '\t' << file_sha256(p)
      << '\n';
  }
  m << "[ensemble]\n";
  for (std::size_t i = 0; i < model.ensemble.members.size(); ++i) {
    const auto& mem = model.ensemble.members[i];
    char f1[32];
    std::snprintf(f1, sizeof f1, "%.6f", mem.validation_weighted_f1);
    m << "member\t" << i << "\tsplit_seed=" << mem.split_seed << "\ttrain_rows=" << mem.train_rows
      << "\tvalidation_rows=" << mem.validation_rows << "\tvalidation_weighted_f1=" << f1 << '\n';
  }
  m << "[warnings]\n";
  for (const auto& w : result.warnings) m << w << '\n';
  m << "[outputs]\n";
  for (const auto& [name, path] : outputs) m << name << '\t' << file_sha256(path) << '\n';
  result.manifest = m.str();
  write_text(out_dir / "manifest.txt", result.manifest);
  return result;
}

std::pair<PipelineConfig, RunInputs> read_manifest(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty() || lines[0] != kManifestMagic) {
    throw Error(ErrorCode::BadFormat, path.string() + ": not a manifest");
  }
  std::string section;
  std::string config_text;
  RunInputs inputs;
  std::vector<std::pair<std::string, std::string>> checksums;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (!line.empty() && line.front() == '[') {
      section = line;
      continue;
    }
    if (line.rfind("rng\t", 0) == 0 && section.empty()) {
      if (line.substr(4) != Rng::kName) {
        throw Error(ErrorCode::BadFormat, "manifest uses an unsupported generator");
      }
    } else if (section == "[config]") {
      config_text += line + '\n';
    } else if (section == "[inputs]") {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const auto key = line.substr(0, eq);
      const std::filesystem::path value = line.substr(eq + 1);
      if (key == "train") inputs.train = value;
      if (key == "dev") inputs.dev = value;
      if (key == "test") inputs.test = value;
    } else if (section == "[checksums]") {
      const auto tab = line.rfind('\t');
      if (tab != std::string::npos) checksums.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
  }
  for (const auto& [file, sum] : checksums) {
    if (file_sha256(file) != sum) {
      throw Error(ErrorCode::Io, "input changed since the manifest was written: " + file);
    }
  }
  return {parse_config(config_text, path.parent_path()), inputs};
}

}  // namespace hopeedi
