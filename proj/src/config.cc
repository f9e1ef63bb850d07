#include "hopeedi/config.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hopeedi/error.h"
#include "hopeedi/unicode.h"

namespace hopeedi {

namespace {

[[noreturn]] void config_error(const std::string& what, std::size_t line = 0) {
  throw Error(ErrorCode::Config, what, line);
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  config_error(std::string(key) + ": expected true/false, got '" + std::string(v) + "'");
}

template <typename T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    config_error(std::string(key) + ": bad number '" + std::string(v) + "'");
  }
  return out;
}

std::filesystem::path resolve(std::string_view v, const std::filesystem::path& base_dir) {
  std::filesystem::path p{std::string(v)};
  if (p.is_relative()) p = base_dir / p;
  return std::filesystem::absolute(p).lexically_normal();
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

void apply_config_setting(PipelineConfig& cfg, std::string_view key, std::string_view value,
                          const std::filesystem::path& base_dir) {
  const auto starts = [&](std::string_view prefix) { return key.substr(0, prefix.size()) == prefix; };

  if (key == "lang") {
    const auto lang = lang_from_code(value);
    if (!lang) config_error("lang: expected en, ta or ml, got '" + std::string(value) + "'");
    cfg.lang = *lang;
  } else if (key == "normalize.strip_specials") {
    cfg.normalization.strip_specials = parse_bool(key, value);
  } else if (key == "normalize.strip_emoji") {
    cfg.normalization.strip_emoji = parse_bool(key, value);
  } else if (key == "normalize.lowercase") {
    cfg.normalization.lowercase = parse_bool(key, value);
  } else if (key == "normalize.collapse_whitespace") {
    cfg.normalization.collapse_whitespace = parse_bool(key, value);
  } else if (key == "langid.order") {
    cfg.ngram_order = parse_number<int>(key, value);
  } else if (key == "langid.alpha") {
    cfg.smoothing_alpha = parse_number<double>(key, value);
  } else if (key == "langid.script_threshold") {
    cfg.script_threshold = parse_number<double>(key, value);
  } else if (starts("langid.profile.")) {
    cfg.profile_files[std::string(key.substr(15))] = resolve(value, base_dir);
  } else if (starts("langid.corpus.")) {
    cfg.profile_corpora[std::string(key.substr(14))] = resolve(value, base_dir);
  } else if (key == "translit.scheme") {
    cfg.scheme_file = value.empty() ? std::filesystem::path{} : resolve(value, base_dir);
  } else if (key == "features.mode") {
    if (value == "tfidf") {
      cfg.feature_mode = FeatureMode::Tfidf;
    } else if (value == "embeddings") {
      cfg.feature_mode = FeatureMode::Embeddings;
    } else {
      config_error("features.mode: expected tfidf or embeddings");
    }
  } else if (key == "features.min_df") {
    cfg.min_df = parse_number<std::size_t>(key, value);
  } else if (key == "features.embedding_dim") {
    cfg.embedding_dim = parse_number<std::size_t>(key, value);
  } else if (key == "features.token_limit") {
    cfg.token_limit = parse_number<std::size_t>(key, value);
  } else if (key == "features.embeddings.train") {
    cfg.embeddings_train = value.empty() ? std::filesystem::path{} : resolve(value, base_dir);
  } else if (key == "features.embeddings.dev") {
    cfg.embeddings_dev = value.empty() ? std::filesystem::path{} : resolve(value, base_dir);
  } else if (key == "features.embeddings.test") {
    cfg.embeddings_test = value.empty() ? std::filesystem::path{} : resolve(value, base_dir);
  } else if (key == "classifier") {
    const auto kind = model_kind_from_name(value);
    if (!kind) config_error("classifier: expected logreg, svm or rf");
    cfg.trainer.kind = *kind;
  } else if (key == "logreg.lr") {
    cfg.trainer.logreg.lr = parse_number<double>(key, value);
  } else if (key == "logreg.epochs") {
    cfg.trainer.logreg.epochs = parse_number<int>(key, value);
  } else if (key == "logreg.l2") {
    cfg.trainer.logreg.l2 = parse_number<double>(key, value);
  } else if (key == "svm.lr") {
    cfg.trainer.svm.lr = parse_number<double>(key, value);
  } else if (key == "svm.epochs") {
    cfg.trainer.svm.epochs = parse_number<int>(key, value);
  } else if (key == "svm.c") {
    cfg.trainer.svm.c = parse_number<double>(key, value);
  } else if (key == "rf.trees") {
    cfg.trainer.forest.n_trees = parse_number<std::size_t>(key, value);
  } else if (key == "rf.max_depth") {
    cfg.trainer.forest.max_depth = parse_number<std::size_t>(key, value);
  } else if (key == "rf.feature_frac") {
    if (value == "auto") {
      cfg.trainer.forest.feature_frac.reset();
    } else {
      cfg.trainer.forest.feature_frac = parse_number<double>(key, value);
    }
  } else if (key == "ensemble.k") {
    cfg.ensemble.k = parse_number<std::size_t>(key, value);
  } else if (key == "ensemble.base_seed") {
    cfg.ensemble.base_seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "ensemble.fraction_train") {
    cfg.ensemble.fraction_train = parse_number<double>(key, value);
  } else if (key == "ensemble.tie_break") {
    const auto tb = tie_break_from_name(value);
    if (!tb) config_error("ensemble.tie_break: expected prior or class-order");
    cfg.ensemble.tie_break = *tb;
  } else if (key == "metrics.macro_include_zero_support") {
    cfg.metrics.macro_include_zero_support = parse_bool(key, value);
  } else {
    config_error("unknown key '" + std::string(key) + "'");
  }
}

PipelineConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  PipelineConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto trimmed = trim_ascii(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string_view::npos) config_error("expected key=value", line_no);
    const auto key = trim_ascii(trimmed.substr(0, eq));
    const auto value = trim_ascii(trimmed.substr(eq + 1));
    try {
      apply_config_setting(cfg, key, value, base_dir);
    } catch (const Error& e) {
      throw Error(ErrorCode::Config, e.detail(), line_no);
    }
  }
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str(), std::filesystem::absolute(path).parent_path());
  } catch (const Error& e) {
    throw Error(ErrorCode::Config, path.string() + ": " + e.detail(), e.line());
  }
}

void PipelineConfig::validate() const {
  if (ngram_order < 1 || ngram_order > 3) config_error("langid.order must be in 1..3");
  if (!(smoothing_alpha > 0.0)) config_error("langid.alpha must be positive");
  if (!(script_threshold > 0.0 && script_threshold <= 1.0)) {
    config_error("langid.script_threshold must be in (0,1]");
  }
  if (profile_files.empty() && profile_corpora.empty()) {
    config_error("no language profiles: set langid.profile.<code> or langid.corpus.<code>");
  }
  if (lang != DatasetLang::English && scheme_file.empty()) {
    config_error("translit.scheme is required for Tamil and Malayalam");
  }
  if (feature_mode == FeatureMode::Embeddings && embeddings_train.empty()) {
    config_error("features.mode=embeddings requires features.embeddings.train");
  }
  if (min_df < 1) config_error("features.min_df must be >= 1");
  if (embedding_dim < 1) config_error("features.embedding_dim must be >= 1");
  if (token_limit < 1) config_error("features.token_limit must be >= 1");
  if (!(trainer.logreg.lr > 0.0) || trainer.logreg.epochs < 0 || trainer.logreg.l2 < 0.0) {
    config_error("logreg: lr must be positive, epochs and l2 non-negative");
  }
  if (!(trainer.svm.lr > 0.0) || trainer.svm.epochs < 0 || trainer.svm.c < 0.0) {
    config_error("svm: lr must be positive, epochs and c non-negative");
  }
  if (trainer.forest.n_trees < 1 || trainer.forest.max_depth < 1) {
    config_error("rf.trees and rf.max_depth must be >= 1");
  }
  if (trainer.forest.feature_frac &&
      !(*trainer.forest.feature_frac > 0.0 && *trainer.forest.feature_frac <= 1.0)) {
    config_error("rf.feature_frac must be in (0,1] or auto");
  }
  if (ensemble.k < 1) config_error("ensemble.k must be >= 1");
  if (!(ensemble.fraction_train > 0.0 && ensemble.fraction_train < 1.0)) {
    config_error("ensemble.fraction_train must be in (0,1)");
  }
}

std::string render_config(const PipelineConfig& cfg) {
  std::ostringstream out;
  const auto& n = cfg.normalization;
  const auto& t = cfg.trainer;
  out << "lang=" << lang_code(cfg.lang) << '\n'
      << "normalize.strip_specials=" << bool_str(n.strip_specials) << '\n'
      << "normalize.strip_emoji=" << bool_str(n.strip_emoji) << '\n'
      << "normalize.lowercase=" << bool_str(n.lowercase) << '\n'
      << "normalize.collapse_whitespace=" << bool_str(n.collapse_whitespace) << '\n'
      << "langid.order=" << cfg.ngram_order << '\n'
      << "langid.alpha=" << num(cfg.smoothing_alpha) << '\n'
      << "langid.script_threshold=" << num(cfg.script_threshold) << '\n';
  for (const auto& [code, path] : cfg.profile_files) {
    out << "langid.profile." << code << '=' << path.string() << '\n';
  }
  for (const auto& [code, path] : cfg.profile_corpora) {
    out << "langid.corpus." << code << '=' << path.string() << '\n';
  }
  out << "translit.scheme=" << cfg.scheme_file.string() << '\n'
      << "features.mode=" << (cfg.feature_mode == FeatureMode::Tfidf ? "tfidf" : "embeddings")
      << '\n'
      << "features.min_df=" << cfg.min_df << '\n'
      << "features.embedding_dim=" << cfg.embedding_dim << '\n'
      << "features.token_limit=" << cfg.token_limit << '\n'
      << "features.embeddings.train=" << cfg.embeddings_train.string() << '\n'
      << "features.embeddings.dev=" << cfg.embeddings_dev.string() << '\n'
      << "features.embeddings.test=" << cfg.embeddings_test.string() << '\n'
      << "classifier=" << model_kind_name(t.kind) << '\n'
      << "logreg.lr=" << num(t.logreg.lr) << '\n'
      << "logreg.epochs=" << t.logreg.epochs << '\n'
      << "logreg.l2=" << num(t.logreg.l2) << '\n'
      << "svm.lr=" << num(t.svm.lr) << '\n'
      << "svm.epochs=" << t.svm.epochs << '\n'
      << "svm.c=" << num(t.svm.c) << '\n'
      << "rf.trees=" << t.forest.n_trees << '\n'
      << "rf.max_depth=" << t.forest.max_depth << '\n'
      << "rf.feature_frac="
      << (t.forest.feature_frac ? num(*t.forest.feature_frac) : std::string("auto")) << '\n'
      << "ensemble.k=" << cfg.ensemble.k << '\n'
      << "ensemble.base_seed=" << cfg.ensemble.base_seed << '\n'
      << "ensemble.fraction_train=" << num(cfg.ensemble.fraction_train) << '\n'
      << "ensemble.tie_break=" << tie_break_name(cfg.ensemble.tie_break) << '\n'
      << "metrics.macro_include_zero_support="
      << bool_str(cfg.metrics.macro_include_zero_support) << '\n';
  return out.str();
}

}  // namespace hopeedi
