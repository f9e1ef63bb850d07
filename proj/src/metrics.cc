#include "hopeedi/metrics.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "hopeedi/error.h"

namespace hopeedi {

namespace {

double safe_div(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

std::string three_decimals(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> classes)
    : classes_(std::move(classes)),
      counts_(classes_.size(), std::vector<std::uint64_t>(classes_.size(), 0)) {}

ConfusionMatrix ConfusionMatrix::from_counts(std::vector<std::string> classes,
                                             std::vector<std::vector<std::uint64_t>> counts) {
  if (counts.size() != classes.size() ||
      std::any_of(counts.begin(), counts.end(),
                  [&](const auto& row) { return row.size() != classes.size(); })) {
    throw Error(ErrorCode::BadArgument, "confusion counts must be square over the classes");
  }
  ConfusionMatrix cm(std::move(classes));
  cm.counts_ = std::move(counts);
  return cm;
}

std::ptrdiff_t ConfusionMatrix::index_of(std::string_view label) const {
  const auto it = std::find(classes_.begin(), classes_.end(), label);
  return it == classes_.end() ? -1 : it - classes_.begin();
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t sum = 0;
  for (const auto& row : counts_) {
    for (auto v : row) sum += v;
  }
  return sum;
}

std::uint64_t ConfusionMatrix::gold_count(std::size_t c) const {
  std::uint64_t sum = 0;
  for (auto v : counts_[c]) sum += v;
  return sum;
}

std::uint64_t ConfusionMatrix::predicted_count(std::size_t c) const {
  std::uint64_t sum = 0;
  for (const auto& row : counts_) sum += row[c];
  return sum;
}

ConfusionMatrix confusion(std::span<const std::string> gold, std::span<const std::string> pred,
                          std::span<const std::string> classes) {
  if (gold.size() != pred.size() || gold.empty()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(gold.size()) + " gold vs " +
                                               std::to_string(pred.size()) + " predicted labels");
  }
  ConfusionMatrix cm({classes.begin(), classes.end()});
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto g = cm.index_of(gold[i]);
    const auto p = cm.index_of(pred[i]);
    if (g < 0) throw Error(ErrorCode::UnknownLabel, "gold label '" + gold[i] + "'", i + 1);
    if (p < 0) throw Error(ErrorCode::UnknownLabel, "predicted label '" + pred[i] + "'", i + 1);
    cm.add(static_cast<std::size_t>(g), static_cast<std::size_t>(p));
  }
  return cm;
}

ConfusionMatrix confusion(std::span<const Label> gold, std::span<const Label> pred) {
  if (gold.size() != pred.size() || gold.empty()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(gold.size()) + " gold vs " +
                                               std::to_string(pred.size()) + " predicted labels");
  }
  std::vector<std::string> names;
  for (Label l : kAllLabels) names.emplace_back(label_name(l));
  ConfusionMatrix cm(std::move(names));
  for (std::size_t i = 0; i < gold.size(); ++i) {
    cm.add(static_cast<std::size_t>(gold[i]), static_cast<std::size_t>(pred[i]));
  }
  return cm;
}

ClassScores class_prf(const ConfusionMatrix& cm, std::string_view label) {
  const auto idx = cm.index_of(label);
  if (idx < 0) throw Error(ErrorCode::UnknownLabel, "'" + std::string(label) + "'");
  const auto c = static_cast<std::size_t>(idx);

  ClassScores s;
  s.label = std::string(label);
  const auto tp = static_cast<double>(cm.at(c, c));
  s.support = cm.gold_count(c);
  s.precision = safe_div(tp, static_cast<double>(cm.predicted_count(c)));
  s.recall = safe_div(tp, static_cast<double>(s.support));
  s.f1 = safe_div(2.0 * s.precision * s.recall, s.precision + s.recall);
  return s;
}

EvalReport aggregate(const ConfusionMatrix& cm, const AggregateOptions& options) {
  EvalReport report;
  double support_sum = 0.0;
  std::size_t macro_n = 0;
  for (const auto& name : cm.classes()) {
    auto s = class_prf(cm, name);
    const auto y = static_cast<double>(s.support);
    if (s.support > 0 || options.macro_include_zero_support) {
      report.macro.precision += s.precision;
      report.macro.recall += s.recall;
      report.macro.f1 += s.f1;
      ++macro_n;
    }
    report.weighted.precision += s.precision * y;
    report.weighted.recall += s.recall * y;
    report.weighted.f1 += s.f1 * y;
    support_sum += y;
    report.per_class.push_back(std::move(s));
  }
  const auto n = static_cast<double>(macro_n);
  report.macro = {safe_div(report.macro.precision, n), safe_div(report.macro.recall, n),
                  safe_div(report.macro.f1, n)};
  report.weighted = {safe_div(report.weighted.precision, support_sum),
                     safe_div(report.weighted.recall, support_sum),
                     safe_div(report.weighted.f1, support_sum)};
  return report;
}

std::string render_report(const EvalReport& report, ReportFormat format) {
  std::ostringstream out;
  const auto& m = report.macro;
  const auto& w = report.weighted;
  switch (format) {
    case ReportFormat::Text: {
      char line[160];
      std::snprintf(line, sizeof line, "%-12s %9s %9s %9s %9s\n", "class", "precision", "recall",
                    "f1", "support");
      out << line;
      for (const auto& s : report.per_class) {
        std::snprintf(line, sizeof line, "%-12s %9s %9s %9s %9llu\n", s.label.c_str(),
                      three_decimals(s.precision).c_str(), three_decimals(s.recall).c_str(),
                      three_decimals(s.f1).c_str(), static_cast<unsigned long long>(s.support));
        out << line;
      }
      if (report.per_class.empty()) break;
      for (const auto& [name, avg] : {std::pair{"macro", m}, std::pair{"weighted", w}}) {
        std::snprintf(line, sizeof line, "%-12s %9s %9s %9s\n", name,
                      three_decimals(avg.precision).c_str(), three_decimals(avg.recall).c_str(),
                      three_decimals(avg.f1).c_str());
        out << line;
      }
      break;
    }
    case ReportFormat::Tsv:
      out << "macro_precision\tweighted_precision\tmacro_recall\tweighted_recall\t"
             "macro_f1\tweighted_f1\n";
      if (report.per_class.empty()) break;
      out << three_decimals(m.precision) << '\t' << three_decimals(w.precision) << '\t'
          << three_decimals(m.recall) << '\t' << three_decimals(w.recall) << '\t'
          << three_decimals(m.f1) << '\t' << three_decimals(w.f1) << '\n';
      break;
    case ReportFormat::Json: {
      // Rounded values go through their decimal text so the JSON shows the
      // same digits as the other formats.
      auto r = [](double v) { return nlohmann::ordered_json::parse(three_decimals(v)); };
      nlohmann::ordered_json j;
      j["per_class"] = nlohmann::ordered_json::array();
      for (const auto& s : report.per_class) {
        j["per_class"].push_back({{"label", s.label},
                                  {"precision", r(s.precision)},
                                  {"recall", r(s.recall)},
                                  {"f1", r(s.f1)},
                                  {"support", s.support}});
      }
      j["macro"] = {{"precision", r(m.precision)}, {"recall", r(m.recall)}, {"f1", r(m.f1)}};
      j["weighted"] = {{"precision", r(w.precision)}, {"recall", r(w.recall)}, {"f1", r(w.f1)}};
      out << j.dump(2) << '\n';
      break;
    }
  }
  return out.str();
}

}  // namespace hopeedi
