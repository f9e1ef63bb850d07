// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hopeedi/config.h"
#include "hopeedi/corpus.h"
#include "hopeedi/ensemble.h"
#include "hopeedi/error.h"
#include "hopeedi/langid.h"
#include "hopeedi/learn.h"
#include "hopeedi/metrics.h"
#include "hopeedi/rng.h"
#include "hopeedi/textprep.h"
#include "hopeedi/translit.h"
#include "hopeedi/unicode.h"
#include "oracles.h"

using namespace hopeedi;
namespace fs = std::filesystem;

namespace {

const fs::path kData = HOPEEDI_DATA_DIR;

// Pinned tolerances and limits.
constexpr double kMetricsTol = 1e-9;
constexpr double kBaselineTarget = 0.872;
constexpr double kBaselineTol = 0.001;
constexpr double kGradientTol = 1e-4;
constexpr double kLangIdMinAccuracy = 0.95;
constexpr double kMetricsSeconds = 5.0;
constexpr double kVoteSeconds = 1.0;
constexpr double kClassifierSeconds = 10.0;
constexpr double kLangIdSeconds = 30.0;
constexpr double kTranslitSeconds = 10.0;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// 1 -------------------------------------------------------------------------

Outcome metrics_oracle() {
  Outcome o;
  Rng rng(20210419);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto k = static_cast<std::size_t>(1 + rng.below(5));
    std::vector<std::vector<std::uint64_t>> counts(k, std::vector<std::uint64_t>(k));
    for (auto& row : counts) {
      for (auto& v : row) v = rng.below(101);
    }
    std::vector<std::string> names;
    for (std::size_t c = 0; c < k; ++c) names.push_back("c" + std::to_string(c));
    const bool include_zero = rng.below(2) == 0;
    const auto got = aggregate(ConfusionMatrix::from_counts(names, counts),
                               {.macro_include_zero_support = include_zero});
    const auto want = oracle::metrics(counts, include_zero);
    auto cmp = [&](double a, double b) { worst = std::max(worst, std::abs(a - b)); };
    for (std::size_t c = 0; c < k; ++c) {
      cmp(got.per_class[c].precision, want.per_class[c].p);
      cmp(got.per_class[c].recall, want.per_class[c].r);
      cmp(got.per_class[c].f1, want.per_class[c].f);
      if (got.per_class[c].support != want.per_class[c].support) o.fail("support differs");
    }
    cmp(got.macro.precision, want.macro_p);
    cmp(got.macro.recall, want.macro_r);
    cmp(got.macro.f1, want.macro_f);
    cmp(got.weighted.precision, want.weighted_p);
    cmp(got.weighted.recall, want.weighted_r);
    cmp(got.weighted.f1, want.weighted_f);
  }
  if (worst > kMetricsTol) o.fail("max deviation " + fmt("%.3g", worst));
  if (o.pass) o.detail = "1000 matrices, max deviation " + fmt("%.3g", worst);
  return o;
}

// 2 -------------------------------------------------------------------------

Outcome majority_baseline() {
  Outcome o;
  const auto cm = ConfusionMatrix::from_counts({"Hope", "NotHope", "NotLanguage"},
                                               {{0, 242, 0}, {0, 2569, 0}, {0, 2, 0}});
  const double got = aggregate(cm).weighted.f1;
  const double p = 2569.0 / 2813.0;
  const double hand = 2 * p / (1 + p) * p;
  if (std::abs(got - hand) > kMetricsTol) o.fail("differs from hand value " + fmt("%.6f", hand));
  if (std::abs(got - kBaselineTarget) > kBaselineTol) o.fail("weighted F1 " + fmt("%.6f", got));
  if (o.pass) o.detail = "weighted F1 " + fmt("%.6f", got);
  return o;
}

// 3 -------------------------------------------------------------------------

Outcome vote_enumeration() {
  Outcome o;
  std::size_t multisets = 0, tied = 0;
  for (int k = 1; k <= 5; ++k) {
    for (int h = 0; h <= k; ++h) {
      for (int nh = 0; nh + h <= k; ++nh) {
        const int nl = k - h - nh;
        std::vector<Label> v;
        std::vector<int> ints;
        for (auto [l, n] : {std::pair{Label::Hope, h}, {Label::NotHope, nh}, {Label::NotLanguage, nl}}) {
          for (int i = 0; i < n; ++i) {
            v.push_back(l);
            ints.push_back(static_cast<int>(l));
          }
        }
        const int top = std::max({h, nh, nl});
        tied += (h == top) + (nh == top) + (nl == top) > 1;
        for (TieBreak tb : {TieBreak::MajorityClassPrior, TieBreak::ClassOrder}) {
          if (static_cast<int>(majority_vote(v, tb)) != oracle::mode(ints, tb == TieBreak::MajorityClassPrior)) {
            o.fail("mismatch at k=" + std::to_string(k));
          }
        }
        ++multisets;
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(multisets) + " multisets, " + std::to_string(tied) + " tied";
  }
  return o;
}

// 4 -------------------------------------------------------------------------

Outcome classifier_sanity() {
  Outcome o;
  Rng rng(42);
  std::vector<FeatureVector> x;
  std::vector<Label> y;
  while (x.size() < 20) {
    const double a = rng.unit() * 2 - 0.5, b = rng.unit() * 2 - 0.5;
    const double side = a + b - 1.0;
    const bool hope = x.size() % 2 == 0;
    if (std::abs(side) < 0.3 || hope != (side > 0)) continue;
    x.push_back(FeatureVector::dense({a, b}));
    y.push_back(hope ? Label::Hope : Label::NotHope);
  }
  const auto lr = train_logreg(x, y, {.lr = 0.5, .epochs = 500, .l2 = 0.0});
  const auto svm = train_linear_svm(x, y, {.lr = 0.05, .epochs = 500, .c = 10.0});
  std::size_t lr_ok = 0, svm_ok = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lr_ok += predict(lr, x[i]).label == y[i];
    svm_ok += predict(svm, x[i]).label == y[i];
  }
  if (lr_ok != 20 || svm_ok != 20) {
    o.fail("training accuracy logreg " + std::to_string(lr_ok) + "/20, svm " + std::to_string(svm_ok) + "/20");
  }

  auto rel = [](double a, double n) { return std::abs(a - n) / std::max({std::abs(a), std::abs(n), 1e-3}); };
  const double h = 1e-5;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<FeatureVector> gx;
    std::vector<std::size_t> gy;
    std::vector<int> targets;
    for (int r = 0; r < 5; ++r) {
      std::vector<double> v(8);
      for (auto& e : v) e = rng.unit() * 2 - 1;
      gx.push_back(FeatureVector::dense(v));
      gy.push_back(static_cast<std::size_t>(rng.below(3)));
      targets.push_back(rng.below(2) ? 1 : -1);
    }
    LinearWeights p(3, 8);
    for (auto& w : p.w) w = rng.unit() - 0.5;
    for (auto& b : p.b) b = rng.unit() - 0.5;
    const auto g = logreg_gradient(p, gx, gy, 0.01);
    for (std::size_t i = 0; i < p.w.size() + p.b.size(); ++i) {
      auto plus = p, minus = p;
      double& up = i < p.w.size() ? plus.w[i] : plus.b[i - p.w.size()];
      double& down = i < p.w.size() ? minus.w[i] : minus.b[i - p.w.size()];
      up += h;
      down -= h;
      const double num = (logreg_objective(plus, gx, gy, 0.01) - logreg_objective(minus, gx, gy, 0.01)) / (2 * h);
      const double ana = i < p.w.size() ? g.w[i] : g.b[i - p.w.size()];
      worst = std::max(worst, rel(ana, num));
    }

    std::vector<double> w(8);
    for (auto& e : w) e = rng.unit() - 0.5;
    const double b = rng.unit() - 0.5;
    bool near_kink = false;
    for (std::size_t r = 0; r < gx.size(); ++r) near_kink |= std::abs(1 - targets[r] * (gx[r].dot(w) + b)) < 1e-3;
    if (near_kink) continue;
    const auto sg = svm_subgradient(w, b, gx, targets, 2.0);
    for (std::size_t i = 0; i <= 8; ++i) {
      auto plus = w, minus = w;
      double bp = b, bm = b;
      if (i < 8) {
        plus[i] += h;
        minus[i] -= h;
      } else {
        bp += h;
        bm -= h;
      }
      const double num = (svm_objective(plus, bp, gx, targets, 2.0) - svm_objective(minus, bm, gx, targets, 2.0)) / (2 * h);
      worst = std::max(worst, rel(sg[i], num));
    }
  }
  if (worst > kGradientTol) o.fail("gradient relative error " + fmt("%.3g", worst));
  if (o.pass) o.detail = "20/20 for logreg and svm, gradient error " + fmt("%.3g", worst);
  return o;
}

// 5 -------------------------------------------------------------------------

std::vector<std::string> corpus_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    line = normalize_text(line);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

Outcome language_id() {
  Outcome o;
  const std::vector<std::string> codes = {"en", "hi", "ml", "ta"};
  std::vector<LanguageProfile> profiles;
  std::set<std::string> train_lines;
  for (const auto& c : codes) {
    const auto lines = corpus_lines(kData / "langid" / (c + ".train.txt"));
    train_lines.insert(lines.begin(), lines.end());
    profiles.push_back(train_profile(lines, c));
  }
  std::size_t right = 0, total = 0, overlap = 0;
  for (const auto& c : codes) {
    const auto held = corpus_lines(kData / "langid" / (c + ".heldout.txt"));
    if (held.size() != 200) o.fail(c + " held-out set has " + std::to_string(held.size()) + " sentences");
    for (const auto& s : held) {
      overlap += train_lines.contains(s);
      right += detect(s, profiles).best == c;
      ++total;
    }
  }
  if (overlap) o.fail(std::to_string(overlap) + " held-out sentences also appear in training");
  const double acc = total ? static_cast<double>(right) / static_cast<double>(total) : 0.0;
  if (acc < kLangIdMinAccuracy) o.fail("accuracy " + fmt("%.4f", acc));

  // The gate over every (detected, dataset) pair.
  std::size_t pairs = 0;
  for (const std::string d : {"en", "hi", "ml", "ta", "other", ""}) {
    for (DatasetLang lang : {DatasetLang::English, DatasetLang::Tamil, DatasetLang::Malayalam}) {
      const bool expected_not =
          lang == DatasetLang::English ? d != "en" : (d == "en" || d == "hi");
      if ((assign_language_class(d, lang) == LanguageClass::NotLanguage) != expected_not) {
        o.fail("gate wrong for detected '" + d + "'");
      }
      ++pairs;
    }
  }
  if (o.pass) {
    o.detail = std::to_string(right) + "/" + std::to_string(total) + " = " + fmt("%.4f", acc) + ", " +
               std::to_string(pairs) + " gate pairs";
  }
  return o;
}

// 6 -------------------------------------------------------------------------

bool replay_ok(const std::u32string& text, const SchemeTable& table) {
  std::size_t pos = 0;
  std::u32string joined;
  for (const auto& seg : segment_greedy(text, table)) {
    if (seg.start != pos || seg.length == 0) return false;
    const auto piece = text.substr(seg.start, seg.length);
    if (seg.matched) {
      const auto it = table.entries().find(piece);
      if (it == table.entries().end() || it->second != seg.output) return false;
      for (std::size_t len = seg.length + 1; len <= table.max_key_len() && seg.start + len <= text.size(); ++len) {
        if (table.entries().contains(text.substr(seg.start, len))) return false;
      }
    } else {
      if (seg.output != piece) return false;
      for (std::size_t i = 0; i < piece.size(); ++i) {
        for (std::size_t len = 1; len <= table.max_key_len() && seg.start + i + len <= text.size(); ++len) {
          if (table.entries().contains(text.substr(seg.start + i, len))) return false;
        }
      }
    }
    joined += seg.output;
    pos += seg.length;
  }
  return pos == text.size() && utf8_encode(joined) == transliterate(utf8_encode(text), table);
}

Outcome transliteration() {
  Outcome o;
  const auto ta = SchemeTable::load(kData / "schemes" / "ta.tsv", DatasetLang::Tamil);
  const auto ml = SchemeTable::load(kData / "schemes" / "ml.tsv", DatasetLang::Malayalam);
  static const std::u32string pool =
      U"aaaeiouukgcjtdnpmyrlvszhKGTDNLREO"
      U"கஙசஞடணதநபமயரலவழளறனாிீுூெேைொோௌ்"
      U"കഖഗചജടഡതദനപബമയരലവശസഹാിീുൂെേൈൊോ്"
      U"कखग0123456789  .,!?é";
  Rng rng(777);
  std::size_t bad_idem = 0, bad_pass = 0, bad_replay = 0;
  for (int i = 0; i < 10000; ++i) {
    std::u32string s;
    const auto n = rng.below(31);
    for (std::uint64_t j = 0; j < n; ++j) s.push_back(pool[rng.below(pool.size())]);
    const auto& table = i % 2 ? ml : ta;
    const auto once = transliterate(utf8_encode(s), table);
    bad_idem += transliterate(once, table) != once;
    std::u32string native;
    for (CodePoint cp : s) {
      if (script_of(cp) != Script::Latin) native.push_back(cp);
    }
    bad_pass += transliterate(utf8_encode(native), table) != utf8_encode(native);
    bad_replay += !replay_ok(s, table);
  }
  if (bad_idem) o.fail(std::to_string(bad_idem) + " strings not idempotent");
  if (bad_pass) o.fail(std::to_string(bad_pass) + " native strings changed");
  if (bad_replay) o.fail(std::to_string(bad_replay) + " segmentations fail replay");
  if (o.pass) o.detail = "10000 strings";
  return o;
}

// 7 -------------------------------------------------------------------------

std::array<std::size_t, 3> count_directly(const fs::path& path) {
  std::array<std::size_t, 3> counts{};
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::string label = line.substr(line.find('\t') + 1);
    for (auto& ch : label) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (label == "hope_speech") ++counts[0];
    else if (label == "non_hope_speech") ++counts[1];
    else if (label.rfind("not-", 0) == 0) ++counts[2];
  }
  return counts;
}

Outcome loader_fidelity() {
  Outcome o;
  struct Fixture {
    const char* file;
    DatasetLang lang;
    std::array<std::size_t, 3> counts;
  };
  const Fixture fixtures[] = {
      {"en_train.tsv", DatasetLang::English, {14, 44, 2}}, {"en_dev.tsv", DatasetLang::English, {6, 23, 1}},
      {"en_test.tsv", DatasetLang::English, {7, 22, 1}},   {"ta_train.tsv", DatasetLang::Tamil, {12, 38, 10}},
      {"ta_dev.tsv", DatasetLang::Tamil, {5, 20, 5}},      {"ta_test.tsv", DatasetLang::Tamil, {6, 19, 5}},
      {"ml_train.tsv", DatasetLang::Malayalam, {13, 40, 7}}, {"ml_dev.tsv", DatasetLang::Malayalam, {6, 20, 4}},
      {"ml_test.tsv", DatasetLang::Malayalam, {6, 20, 4}},
  };
  for (const auto& f : fixtures) {
    const auto path = kData / "fixtures" / f.file;
    const auto s = compute_stats(load_tsv(path, f.lang, true));
    if (s.counts != f.counts || count_directly(path) != f.counts) o.fail(std::string(f.file) + " counts differ");
  }
  o.detail = "9 fixture files";

  // Optional check against the released data files.
  const char* real = std::getenv("HOPEEDI_REAL_DIR");
  if (real == nullptr || *real == '\0') {
    if (o.pass) o.detail += "; HOPEEDI_REAL_DIR not set, released-data check skipped";
    return o;
  }
  struct Split {
    const char* file;
    DatasetLang lang;
    std::optional<std::array<std::size_t, 3>> classes;  // published per-class counts
    std::size_t rows;                                    // published split size
  };
  // The English dev classes sum to 2813 while the published split size is 2843,
  // so only the row count is checked there.
  const Split splits[] = {
      {"en_train.tsv", DatasetLang::English, std::array<std::size_t, 3>{1962, 20778, 22}, 22762},
      {"en_dev.tsv", DatasetLang::English, std::nullopt, 2843},
      {"en_test.tsv", DatasetLang::English, std::nullopt, 2846},
      {"ta_train.tsv", DatasetLang::Tamil, std::array<std::size_t, 3>{6327, 7872, 1961}, 16160},
      {"ta_dev.tsv", DatasetLang::Tamil, std::array<std::size_t, 3>{757, 998, 263}, 2018},
      {"ta_test.tsv", DatasetLang::Tamil, std::nullopt, 2020},
      {"ml_train.tsv", DatasetLang::Malayalam, std::array<std::size_t, 3>{1668, 6205, 691}, 8564},
      {"ml_dev.tsv", DatasetLang::Malayalam, std::array<std::size_t, 3>{190, 784, 96}, 1070},
      {"ml_test.tsv", DatasetLang::Malayalam, std::nullopt, 1071},
  };
  std::size_t checked = 0;
  for (const auto& s : splits) {
    const fs::path path = fs::path(real) / s.file;
    if (!fs::exists(path)) continue;
    try {
      const auto rows = load_tsv(path, s.lang, tsv_looks_labeled(path));
      if (rows.size() != s.rows) {
        o.fail(std::string(s.file) + " has " + std::to_string(rows.size()) + " rows, expected " +
               std::to_string(s.rows));
      }
      if (s.classes && compute_stats(rows).counts != *s.classes) o.fail(std::string(s.file) + " class counts differ");
    } catch (const hopeedi::Error& e) {
      o.fail(std::string(s.file) + ": " + e.what());
    }
    ++checked;
  }
  if (o.pass) o.detail += "; " + std::to_string(checked) + " released files";
  return o;
}

// 8 -------------------------------------------------------------------------

int run_cli(const std::string& args) {
  const std::string cmd = std::string(HOPEEDI_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome determinism() {
  Outcome o;
  const auto dir = fs::temp_directory_path() / "hopeedi_acceptance_run";
  fs::remove_all(dir);
  const auto fx = kData / "fixtures";
  const std::string args = "run --config " + (fx / "ta.conf").string() + " --train " + (fx / "ta_train.tsv").string() +
                           " --dev " + (fx / "ta_dev.tsv").string() + " --test " + (fx / "ta_test.tsv").string();
  for (const char* sub : {"a", "b"}) {
    const int rc = run_cli(args + " --out " + (dir / sub).string());
    if (rc != 0) o.fail("run exited with " + std::to_string(rc));
  }
  for (const char* f : {"predictions.dev.tsv", "predictions.test.tsv", "manifest.txt"}) {
    const auto a = read_file(dir / "a" / f);
    if (a.empty() || a != read_file(dir / "b" / f)) o.fail(std::string(f) + " differs between runs");
  }
  if (o.pass) o.detail = "predictions and manifest identical";
  return o;
}

// 9 -------------------------------------------------------------------------

Outcome external_ensemble() {
  Outcome o;
  const auto dir = fs::temp_directory_path() / "hopeedi_acceptance_vote";
  fs::remove_all(dir);
  fs::create_directories(dir);
  constexpr std::size_t kFiles = 11, kRows = 100;
  Rng rng(6);
  std::vector<Label> planted(kRows);
  std::vector<std::vector<Label>> matrix(kFiles, std::vector<Label>(kRows));
  for (std::size_t r = 0; r < kRows; ++r) {
    planted[r] = kAllLabels[rng.below(3)];
    std::vector<std::size_t> files(kFiles);
    std::iota(files.begin(), files.end(), std::size_t{0});
    rng.shuffle(files.begin(), files.end());
    // Six files vote the planted label; the other five split between the rest.
    for (std::size_t i = 0; i < kFiles; ++i) {
      Label l = planted[r];
      if (i >= 6) {
        do l = kAllLabels[rng.below(3)];
        while (l == planted[r]);
      }
      matrix[files[i]][r] = l;
    }
  }
  std::vector<fs::path> paths;
  for (std::size_t f = 0; f < kFiles; ++f) {
    std::string text;
    for (Label l : matrix[f]) text += std::string(dataset_label_string(l, DatasetLang::Tamil)) + "\n";
    paths.push_back(dir / ("member" + std::to_string(f) + ".tsv"));
    std::ofstream(paths.back(), std::ios::binary) << text;
  }
  for (TieBreak tb : {TieBreak::MajorityClassPrior, TieBreak::ClassOrder}) {
    if (vote_rows(load_external_predictions(paths, kRows), tb) != planted) o.fail("vote differs from planted labels");
  }
  std::string args = "ensemble-vote --lang ta --out " + (dir / "voted.tsv").string();
  for (const auto& p : paths) args += " --predictions " + p.string();
  if (run_cli(args) != 0) {
    o.fail("ensemble-vote failed");
  } else {
    std::string expected;
    for (Label l : planted) expected += std::string(dataset_label_string(l, DatasetLang::Tamil)) + "\n";
    if (read_file(dir / "voted.tsv") != expected) o.fail("command-line vote differs from planted labels");
  }
  if (o.pass) o.detail = "11 files x 100 rows match";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
    double seconds;  // 0 means no time limit
  };
  const Criterion criteria[] = {
      {"metrics match the brute-force oracle", metrics_oracle, kMetricsSeconds},
      {"majority-class baseline weighted F1", majority_baseline, 0},
      {"exhaustive vote enumeration", vote_enumeration, kVoteSeconds},
      {"classifier sanity", classifier_sanity, kClassifierSeconds},
      {"language identification", language_id, kLangIdSeconds},
      {"transliteration properties", transliteration, kTranslitSeconds},
      {"loader fidelity", loader_fidelity, 0},
      {"end-to-end determinism", determinism, 0},
      {"external-prediction ensembling", external_ensemble, 0},
  };
  int failures = 0;
  int n = 0;
  for (const auto& c : criteria) {
    ++n;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.check();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.seconds > 0 && secs >= c.seconds) out.fail("took " + fmt("%.2f", secs) + " s, limit " + fmt("%.0f", c.seconds));
    std::printf("%s criterion %d: %s (%s; %.2f s)\n", out.pass ? "PASS" : "FAIL", n, c.name, out.detail.c_str(), secs);
    failures += !out.pass;
  }
  return failures == 0 ? 0 : 1;
}
