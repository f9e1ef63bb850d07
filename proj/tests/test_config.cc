#include "hopeedi/config.h"
#include "test_util.h"

using namespace hopeedi;

namespace {

PipelineConfig minimal() {
  return parse_config("lang=en\nlangid.corpus.en=en.txt\n", "/base");
}

}  // namespace

TEST_CASE("the bundled fixture config parses and resolves paths") {
  const auto cfg = load_config(testutil::kData / "fixtures" / "ta.conf");
  CHECK(cfg.lang == DatasetLang::Tamil);
  CHECK(cfg.ensemble.k == 3);
  CHECK(cfg.ensemble.base_seed == 11);
  CHECK(cfg.ensemble.tie_break == TieBreak::MajorityClassPrior);
  CHECK(cfg.trainer.kind == ModelKind::LogReg);
  CHECK(cfg.trainer.logreg.epochs == 200);
  CHECK(cfg.profile_corpora.size() == 4);
  CHECK(cfg.profile_corpora.at("ta").is_absolute());
  CHECK(std::filesystem::exists(cfg.profile_corpora.at("ta")));
  CHECK(std::filesystem::exists(cfg.scheme_file));
  cfg.validate();
}

TEST_CASE("render and parse are inverse") {
  auto cfg = load_config(testutil::kData / "fixtures" / "ml.conf");
  cfg.trainer.kind = ModelKind::RandomForest;
  cfg.trainer.forest.feature_frac = 0.25;
  cfg.trainer.svm.c = 0.125;
  cfg.normalization.strip_emoji = false;
  cfg.metrics.macro_include_zero_support = false;
  const auto text = render_config(cfg);
  const auto back = parse_config(text, "/elsewhere");
  CHECK(render_config(back) == text);
  CHECK(back.trainer.forest.feature_frac == 0.25);
  CHECK(back.profile_corpora == cfg.profile_corpora);
}

TEST_CASE("relative paths resolve against the base directory") {
  const auto cfg = minimal();
  CHECK(cfg.profile_corpora.at("en") == std::filesystem::path("/base/en.txt"));
  const auto abs = parse_config("langid.profile.en=/abs/en.profile\n", "/base");
  CHECK(abs.profile_files.at("en") == std::filesystem::path("/abs/en.profile"));
}

TEST_CASE("comments, blank lines and spacing") {
  const auto cfg = parse_config("# top\n\n  ensemble.k = 5  \n# ensemble.k=9\n", "/");
  CHECK(cfg.ensemble.k == 5);
}

TEST_CASE("unknown keys and bad values are config errors with a line") {
  try {
    parse_config("lang=en\n\nclassifer=svm\n", "/");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Config);
    CHECK(e.line() == 3);
    CHECK(e.is_config_error());
  }
  CHECK_ERROR_CODE(parse_config("lang=fr\n", "/"), ErrorCode::Config);
  CHECK_ERROR_CODE(parse_config("ensemble.k=seven\n", "/"), ErrorCode::Config);
  CHECK_ERROR_CODE(parse_config("ensemble.tie_break=coin\n", "/"), ErrorCode::Config);
  CHECK_ERROR_CODE(parse_config("features.mode=bert\n", "/"), ErrorCode::Config);
  CHECK_ERROR_CODE(parse_config("normalize.lowercase=maybe\n", "/"), ErrorCode::Config);
  CHECK_ERROR_CODE(parse_config("just a line\n", "/"), ErrorCode::Config);
  CHECK_ERROR_CODE(load_config("/nonexistent/x.conf"), ErrorCode::Config);
}

TEST_CASE("cross-field validation") {
  minimal().validate();

  PipelineConfig none;
  CHECK_ERROR_CODE(none.validate(), ErrorCode::Config);

  auto ta = minimal();
  ta.lang = DatasetLang::Tamil;
  CHECK_ERROR_CODE(ta.validate(), ErrorCode::Config);

  auto emb = minimal();
  emb.feature_mode = FeatureMode::Embeddings;
  CHECK_ERROR_CODE(emb.validate(), ErrorCode::Config);

  auto k0 = minimal();
  k0.ensemble.k = 0;
  CHECK_ERROR_CODE(k0.validate(), ErrorCode::Config);

  auto frac = minimal();
  frac.ensemble.fraction_train = 1.0;
  CHECK_ERROR_CODE(frac.validate(), ErrorCode::Config);

  auto order = minimal();
  order.ngram_order = 4;
  CHECK_ERROR_CODE(order.validate(), ErrorCode::Config);

  auto rf = minimal();
  rf.trainer.forest.feature_frac = 0.0;
  CHECK_ERROR_CODE(rf.validate(), ErrorCode::Config);
}

TEST_CASE("settings apply on top of a config") {
  auto cfg = minimal();
  apply_config_setting(cfg, "ensemble.k", "9", "/");
  apply_config_setting(cfg, "classifier", "svm", "/");
  CHECK(cfg.ensemble.k == 9);
  CHECK(cfg.trainer.kind == ModelKind::LinearSvm);
  CHECK_ERROR_CODE(apply_config_setting(cfg, "nope", "1", "/"), ErrorCode::Config);
}
