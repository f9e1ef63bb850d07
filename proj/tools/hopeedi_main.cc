#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hopeedi/config.h"
#include "hopeedi/corpus.h"
#include "hopeedi/error.h"
#include "hopeedi/langid.h"
#include "hopeedi/metrics.h"
#include "hopeedi/pipeline.h"
#include "hopeedi/translit.h"

namespace fs = std::filesystem;
using namespace hopeedi;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;

struct Common {
  std::string lang;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> k;
  std::string tie_break;
  std::vector<std::string> embeddings;
  std::string out;
};

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<std::string> read_input_lines(const std::string& path) {
  if (path.empty() || path == "-") return read_lines(std::cin);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return read_lines(in);
}

std::ostream& output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::Io, "cannot write " + path);
  return file;
}

DatasetLang parse_lang(const std::string& code) {
  auto lang = lang_from_code(code);
  if (!lang) throw Error(ErrorCode::Config, "unknown language '" + code + "'");
  return *lang;
}

// Builds the effective config: file, then bundled resources for anything the
// file leaves unset, then command-line overrides.
PipelineConfig effective_config(const Common& c, bool warn = true) {
  PipelineConfig cfg = c.config.empty() ? PipelineConfig{} : load_config(c.config);
  if (!c.lang.empty()) cfg.lang = parse_lang(c.lang);
  const fs::path data = HOPEEDI_DATA_DIR;
  if (cfg.profile_files.empty() && cfg.profile_corpora.empty()) {
    for (const char* code : {"en", "hi", "ml", "ta"}) {
      cfg.profile_corpora[code] = data / "langid" / (std::string(code) + ".train.txt");
    }
  }
  if (cfg.lang != DatasetLang::English && cfg.scheme_file.empty()) {
    cfg.scheme_file = data / "schemes" / (std::string(lang_code(cfg.lang)) + ".tsv");
  }
  if (c.seed) cfg.ensemble.base_seed = *c.seed;
  if (c.k) {
    if (*c.k < 1) throw Error(ErrorCode::Config, "--k must be >= 1");
    cfg.ensemble.k = *c.k;
  }
  if (!c.tie_break.empty()) {
    auto t = tie_break_from_name(c.tie_break);
    if (!t) throw Error(ErrorCode::Config, "unknown tie-break '" + c.tie_break + "'");
    cfg.ensemble.tie_break = *t;
  }
  cfg.validate();
  if (auto warning = cfg.ensemble.validate(); warning && warn) std::cerr << "warning: " << *warning << '\n';
  return cfg;
}

void add_common(CLI::App* app, Common& c, bool with_ensemble) {
  app->add_option("--lang", c.lang, "Dataset language: en, ta or ml");
  app->add_option("--config", c.config, "Pipeline config file (key=value lines)");
  if (with_ensemble) {
    app->add_option("--seed", c.seed, "Base seed of the ensemble");
    app->add_option("--k", c.k, "Number of ensemble members");
    app->add_option("--tie-break", c.tie_break, "Vote tie-break: class-order or prior");
  }
}

void print_stats(const std::string& path, const DatasetStats& s) {
  std::printf("%s\n", path.c_str());
  for (Label l : {Label::Hope, Label::NotHope, Label::NotLanguage}) {
    std::printf("  %-12s %zu\n", std::string(label_name(l)).c_str(), s.count(l));
  }
  std::printf("  %-12s %zu\n", "Total", s.total);
  if (auto ratio = s.hope_to_nothope_ratio()) {
    std::printf("  %-12s %.4f\n", "Hope/NotHope", *ratio);
  } else {
    std::printf("  %-12s -\n", "Hope/NotHope");
  }
}

void print_report(const EvalReport& report, const std::string& format) {
  ReportFormat f = ReportFormat::Text;
  if (format == "tsv") f = ReportFormat::Tsv;
  else if (format == "json") f = ReportFormat::Json;
  std::cout << render_report(report, f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hope speech detection over HopeEDI-format comment data"};
  app.require_subcommand(1);

  // stats
  Common stats_opts;
  std::vector<std::string> stats_files;
  auto* stats = app.add_subcommand("stats", "Per-label counts of labeled TSV files");
  stats->add_option("--lang", stats_opts.lang, "Dataset language")->required();
  stats->add_option("files", stats_files, "Labeled TSV files")->required();

  // detect-lang
  Common detect_opts;
  std::string detect_input;
  auto* detect_cmd = app.add_subcommand("detect-lang", "Detect the language of each input line");
  add_common(detect_cmd, detect_opts, false);
  detect_cmd->add_option("input", detect_input, "Text file, one comment per line (default stdin)");
  detect_cmd->add_option("--out", detect_opts.out, "Output file (default stdout)");

  // transliterate
  Common translit_opts;
  std::string translit_input;
  auto* translit_cmd = app.add_subcommand("transliterate", "Romanized text to native script");
  add_common(translit_cmd, translit_opts, false);
  translit_cmd->add_option("input", translit_input, "Text file (default stdin)");
  translit_cmd->add_option("--out", translit_opts.out, "Output file (default stdout)");

  // train-profile
  std::string profile_code, profile_corpus, profile_out;
  int profile_order = kDefaultNgramOrder;
  double profile_alpha = kDefaultSmoothingAlpha;
  auto* profile_cmd = app.add_subcommand("train-profile", "Build a language profile from text");
  profile_cmd->add_option("--code", profile_code, "Language code")->required();
  profile_cmd->add_option("--corpus", profile_corpus, "Text corpus, one sentence per line")
      ->required();
  profile_cmd->add_option("--order", profile_order, "Character n-gram order");
  profile_cmd->add_option("--alpha", profile_alpha, "Smoothing constant");
  profile_cmd->add_option("--out", profile_out, "Profile file")->required();

  // train
  Common train_opts;
  std::string train_file;
  auto* train_cmd = app.add_subcommand("train", "Train the hope classifier ensemble");
  add_common(train_cmd, train_opts, true);
  train_cmd->add_option("--train", train_file, "Labeled training TSV")->required();
  train_cmd->add_option("--embeddings", train_opts.embeddings, "Training embeddings file")
      ->expected(0, 1);
  train_cmd->add_option("--out", train_opts.out, "Model directory")->required();

  // predict
  Common predict_opts;
  std::string predict_model, predict_input;
  bool predict_trace = false;
  auto* predict_cmd = app.add_subcommand("predict", "Label comments with a trained model");
  predict_cmd->add_option("--model", predict_model, "Model directory")->required();
  predict_cmd->add_option("input", predict_input, "Comments TSV (labeled or not)")->required();
  predict_cmd->add_option("--embeddings", predict_opts.embeddings, "Embeddings for the input")
      ->expected(0, 1);
  predict_cmd->add_option("--out", predict_opts.out, "Prediction file (default stdout)");
  predict_cmd->add_flag("--trace", predict_trace, "Print the stages each comment went through");

  // ensemble-vote
  Common vote_opts;
  std::vector<std::string> vote_files;
  auto* vote_cmd = app.add_subcommand("ensemble-vote", "Majority vote over prediction files");
  vote_cmd->add_option("--predictions", vote_files, "Prediction files, one label per line")
      ->required();
  vote_cmd->add_option("--tie-break", vote_opts.tie_break, "class-order or prior");
  vote_cmd->add_option("--lang", vote_opts.lang, "Dataset language of the output labels");
  vote_cmd->add_option("--out", vote_opts.out, "Output file (default stdout)");

  // evaluate
  Common eval_opts;
  std::string eval_gold, eval_pred, eval_format = "text";
  bool eval_exclude_zero = false;
  auto* eval_cmd = app.add_subcommand("evaluate", "Precision, recall and F1 of predictions");
  eval_cmd->add_option("--lang", eval_opts.lang, "Dataset language")->required();
  eval_cmd->add_option("--gold", eval_gold, "Labeled TSV")->required();
  eval_cmd->add_option("--predictions", eval_pred, "Prediction file")->required();
  eval_cmd->add_option("--format", eval_format, "text, tsv or json")
      ->check(CLI::IsMember({"text", "tsv", "json"}));
  eval_cmd->add_flag("--exclude-zero-support", eval_exclude_zero,
                     "Leave classes without gold rows out of macro averages");

  // run
  Common run_opts;
  std::string run_train, run_dev, run_test, run_manifest;
  bool run_trace = false;
  auto* run_cmd = app.add_subcommand("run", "Full pipeline: train, predict and evaluate");
  add_common(run_cmd, run_opts, true);
  run_cmd->add_option("--train", run_train, "Labeled training TSV");
  run_cmd->add_option("--dev", run_dev, "Labeled dev TSV");
  run_cmd->add_option("--test", run_test, "Test TSV");
  run_cmd->add_option("--manifest", run_manifest, "Repeat the run recorded in a manifest");
  run_cmd->add_option("--out", run_opts.out, "Output directory")->required();
  run_cmd->add_flag("--trace", run_trace, "Print per-comment stage traces");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*stats) {
      const auto lang = parse_lang(stats_opts.lang);
      for (const auto& f : stats_files) print_stats(f, compute_stats(load_tsv(f, lang, true)));
    } else if (*detect_cmd) {
      const auto cfg = effective_config(detect_opts);
      const auto res = build_language_resources(cfg);
      std::ofstream file;
      auto& out = output(detect_opts.out, file);
      for (const auto& line : read_input_lines(detect_input)) {
        const auto text = normalize_text(line, cfg.normalization);
        if (text.empty()) {
          out << "-\tin-language\n";
          continue;
        }
        const auto det = detect(text, res.profiles, cfg.script_threshold);
        const bool in_lang = assign_language_class(det.best, cfg.lang) == LanguageClass::InLanguage;
        out << det.best << '\t' << (in_lang ? "in-language" : "NotLanguage")
            << (det.by_script ? "\tscript" : "") << '\n';
      }
    } else if (*translit_cmd) {
      auto cfg = effective_config(translit_opts);
      if (cfg.lang == DatasetLang::English) {
        throw Error(ErrorCode::Config, "transliteration applies to ta and ml only");
      }
      const auto table = SchemeTable::load(cfg.scheme_file, cfg.lang);
      std::ofstream file;
      auto& out = output(translit_opts.out, file);
      for (const auto& line : read_input_lines(translit_input)) {
        out << transliterate(line, table) << '\n';
      }
    } else if (*profile_cmd) {
      PipelineConfig defaults;
      auto lines = read_input_lines(profile_corpus);
      for (auto& l : lines) l = normalize_text(l, defaults.normalization);
      std::erase_if(lines, [](const std::string& s) { return s.empty(); });
      train_profile(lines, profile_code, profile_order, profile_alpha).save(profile_out);
    } else if (*train_cmd) {
      auto cfg = effective_config(train_opts);
      if (!train_opts.embeddings.empty()) {
        cfg.feature_mode = FeatureMode::Embeddings;
        cfg.embeddings_train = fs::absolute(train_opts.embeddings.front());
      }
      const auto res = build_language_resources(cfg);
      const auto train = load_tsv(train_file, cfg.lang, true);
      std::optional<std::vector<FeatureVector>> emb;
      if (cfg.feature_mode == FeatureMode::Embeddings) {
        emb = load_embeddings(cfg.embeddings_train, cfg.embedding_dim);
      }
      const auto model = train_hope_model(cfg, res, train, emb ? &*emb : nullptr);
      save_hope_model(train_opts.out, cfg, model);
      for (std::size_t i = 0; i < model.ensemble.members.size(); ++i) {
        const auto& m = model.ensemble.members[i];
        std::fprintf(stderr, "member %zu: split_seed=%llu validation weighted F1 %.3f\n", i,
                     static_cast<unsigned long long>(m.split_seed), m.validation_weighted_f1);
      }
    } else if (*predict_cmd) {
      const fs::path dir = predict_model;
      auto cfg = load_config(dir / "config.txt");
      const auto res = build_language_resources(cfg);
      const auto model = load_hope_model(dir);
      const auto comments =
          load_tsv(predict_input, cfg.lang, tsv_looks_labeled(predict_input));
      std::optional<std::vector<FeatureVector>> emb;
      if (cfg.feature_mode == FeatureMode::Embeddings) {
        if (predict_opts.embeddings.empty()) {
          throw Error(ErrorCode::Config, "this model needs --embeddings for its input");
        }
        emb = load_embeddings(predict_opts.embeddings.front(), cfg.embedding_dim);
      }
      const auto results =
          classify_comments(cfg, res, model, comments, emb ? &*emb : nullptr, predict_trace);
      std::ofstream file;
      auto& out = output(predict_opts.out, file);
      for (const auto& r : results) out << dataset_label_string(r.label, cfg.lang) << '\n';
      if (predict_trace) {
        for (std::size_t i = 0; i < results.size(); ++i) {
          std::cerr << i;
          for (Stage s : results[i].trace) std::cerr << '\t' << stage_name(s);
          std::cerr << '\n';
        }
      }
    } else if (*vote_cmd) {
      TieBreak tie = TieBreak::MajorityClassPrior;
      if (!vote_opts.tie_break.empty()) {
        auto t = tie_break_from_name(vote_opts.tie_break);
        if (!t) throw Error(ErrorCode::Config, "unknown tie-break '" + vote_opts.tie_break + "'");
        tie = *t;
      }
      const auto lang = vote_opts.lang.empty() ? DatasetLang::English : parse_lang(vote_opts.lang);
      std::vector<fs::path> paths(vote_files.begin(), vote_files.end());
      const auto n_rows = read_input_lines(vote_files.front()).size();
      const auto voted = vote_rows(load_external_predictions(paths, n_rows), tie);
      std::ofstream file;
      auto& out = output(vote_opts.out, file);
      for (Label l : voted) out << dataset_label_string(l, lang) << '\n';
    } else if (*eval_cmd) {
      const auto gold = load_tsv(eval_gold, parse_lang(eval_opts.lang), true);
      const std::vector<fs::path> pred_path = {eval_pred};
      const auto pred = load_external_predictions(pred_path, gold.size()).front();
      std::vector<Label> g;
      for (const auto& c : gold) g.push_back(*c.label);
      AggregateOptions options;
      options.macro_include_zero_support = !eval_exclude_zero;
      print_report(aggregate(confusion(g, pred), options), eval_format);
    } else if (*run_cmd) {
      PipelineConfig cfg;
      RunInputs inputs;
      if (!run_manifest.empty()) {
        std::tie(cfg, inputs) = read_manifest(run_manifest);
      } else {
        if (run_train.empty() || run_test.empty()) {
          throw Error(ErrorCode::Config, "run needs --train and --test, or --manifest");
        }
        cfg = effective_config(run_opts, false);
        inputs.train = fs::absolute(run_train);
        if (!run_dev.empty()) inputs.dev = fs::absolute(run_dev);
        inputs.test = fs::absolute(run_test);
      }
      const auto result = run_pipeline(cfg, inputs, run_opts.out, run_trace);
      for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
      if (result.dev_report) {
        std::cout << "dev\n" << render_report(*result.dev_report, ReportFormat::Text);
      }
      if (result.test_report) {
        std::cout << "test\n" << render_report(*result.test_report, ReportFormat::Text);
      }
      if (run_trace) {
        for (std::size_t i = 0; i < result.test.size(); ++i) {
          std::cerr << "test " << i;
          for (Stage s : result.test[i].trace) std::cerr << '\t' << stage_name(s);
          std::cerr << '\n';
        }
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.is_config_error() ? kExitConfig : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
