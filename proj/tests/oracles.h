// Reference implementations used as test oracles. They are written from the
// defining formulas, share no code with the library, and favour clarity over
// speed.
#pragma once

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// ---------------------------------------------------------------------------
// Metrics: expands the matrix into explicit (gold, pred) rows and counts.

struct PRF {
  double p = 0, r = 0, f = 0;
  std::uint64_t support = 0;
};

struct Report {
  std::vector<PRF> per_class;
  double macro_p = 0, macro_r = 0, macro_f = 0;
  double weighted_p = 0, weighted_r = 0, weighted_f = 0;
};

inline double safe_div(double a, double b) { return b == 0 ? 0.0 : a / b; }

inline Report metrics(const std::vector<std::vector<std::uint64_t>>& counts,
                      bool macro_include_zero_support = true) {
  const std::size_t k = counts.size();
  std::vector<std::pair<std::size_t, std::size_t>> rows;
  for (std::size_t g = 0; g < k; ++g) {
    for (std::size_t p = 0; p < k; ++p) {
      for (std::uint64_t n = 0; n < counts[g][p]; ++n) rows.emplace_back(g, p);
    }
  }
  Report rep;
  for (std::size_t c = 0; c < k; ++c) {
    std::uint64_t tp = 0, fp = 0, fn = 0;
    for (auto [g, p] : rows) {
      if (g == c && p == c) ++tp;
      if (g != c && p == c) ++fp;
      if (g == c && p != c) ++fn;
    }
    PRF s;
    s.p = safe_div(tp, tp + fp);
    s.r = safe_div(tp, tp + fn);
    s.f = safe_div(2 * s.p * s.r, s.p + s.r);
    s.support = tp + fn;
    rep.per_class.push_back(s);
  }
  double n_macro = 0, total_support = 0;
  for (const auto& s : rep.per_class) {
    if (macro_include_zero_support || s.support > 0) {
      rep.macro_p += s.p;
      rep.macro_r += s.r;
      rep.macro_f += s.f;
      n_macro += 1;
    }
    rep.weighted_p += s.p * s.support;
    rep.weighted_r += s.r * s.support;
    rep.weighted_f += s.f * s.support;
    total_support += s.support;
  }
  rep.macro_p = safe_div(rep.macro_p, n_macro);
  rep.macro_r = safe_div(rep.macro_r, n_macro);
  rep.macro_f = safe_div(rep.macro_f, n_macro);
  rep.weighted_p = safe_div(rep.weighted_p, total_support);
  rep.weighted_r = safe_div(rep.weighted_r, total_support);
  rep.weighted_f = safe_div(rep.weighted_f, total_support);
  return rep;
}

// ---------------------------------------------------------------------------
// Voting: labels are 0 (Hope), 1 (NotHope), 2 (NotLanguage).

inline int mode(const std::vector<int>& votes, bool prior_not_hope) {
  int count[3] = {0, 0, 0};
  for (int v : votes) ++count[v];
  const int top = std::max({count[0], count[1], count[2]});
  std::vector<int> tied;
  for (int l = 0; l < 3; ++l) {
    if (count[l] == top) tied.push_back(l);
  }
  if (prior_not_hope && std::find(tied.begin(), tied.end(), 1) != tied.end()) return 1;
  return tied.front();
}

// ---------------------------------------------------------------------------
// Decision tree with exact rational Gini comparisons.

struct Frac {
  std::int64_t num, den;  // den > 0
  bool operator<(const Frac& o) const { return num * o.den < o.num * den; }
};

struct RefTree {
  struct Node {
    int feature = -1;
    double threshold = 0;
    int left = -1, right = -1;
    int label = 0;
  };
  std::vector<Node> nodes;

  int predict(const std::vector<double>& x) const {
    int id = 0;
    while (nodes[id].feature >= 0) {
      id = x[nodes[id].feature] <= nodes[id].threshold ? nodes[id].left : nodes[id].right;
    }
    return nodes[id].label;
  }
};

// Sum over children of n_child * gini(child), as an exact fraction.
inline Frac split_impurity(const std::vector<int>& left_counts, const std::vector<int>& right_counts) {
  auto part = [](const std::vector<int>& c) {
    std::int64_t n = 0, sq = 0;
    for (int v : c) {
      n += v;
      sq += static_cast<std::int64_t>(v) * v;
    }
    return std::pair<std::int64_t, std::int64_t>(n * n - sq, n);  // (n^2 - sum c^2) / n
  };
  auto [a, an] = part(left_counts);
  auto [b, bn] = part(right_counts);
  if (an == 0) return {b, bn};
  if (bn == 0) return {a, an};
  return {a * bn + b * an, an * bn};
}

inline int build_ref(RefTree& t, const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                     const std::vector<int>& rows, int n_classes, int depth, int max_depth) {
  const int id = static_cast<int>(t.nodes.size());
  t.nodes.emplace_back();
  std::vector<int> counts(n_classes, 0);
  for (int r : rows) ++counts[y[r]];
  int label = 0;
  for (int c = 1; c < n_classes; ++c) {
    if (counts[c] > counts[label]) label = c;
  }
  t.nodes[id].label = label;
  int present = 0;
  for (int c : counts) present += c > 0;
  if (present <= 1 || depth >= max_depth || rows.size() < 2) return id;

  const std::vector<int> none(n_classes, 0);
  Frac best = split_impurity(counts, none);
  int best_f = -1;
  double best_thr = 0;
  const int dim = static_cast<int>(x[0].size());
  for (int f = 0; f < dim; ++f) {
    std::vector<double> values;
    for (int r : rows) values.push_back(x[r][f]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t v = 0; v + 1 < values.size(); ++v) {
      const double thr = (values[v] + values[v + 1]) / 2;
      std::vector<int> lc(n_classes, 0), rc(n_classes, 0);
      for (int r : rows) ++(x[r][f] <= thr ? lc : rc)[y[r]];
      const Frac s = split_impurity(lc, rc);
      if (s < best) {
        best = s;
        best_f = f;
        best_thr = thr;
      }
    }
  }
  if (best_f < 0) return id;
  std::vector<int> lr, rr;
  for (int r : rows) (x[r][best_f] <= best_thr ? lr : rr).push_back(r);
  const int l = build_ref(t, x, y, lr, n_classes, depth + 1, max_depth);
  const int r = build_ref(t, x, y, rr, n_classes, depth + 1, max_depth);
  t.nodes[id].feature = best_f;
  t.nodes[id].threshold = best_thr;
  t.nodes[id].left = l;
  t.nodes[id].right = r;
  return id;
}

inline RefTree train_ref_tree(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                              int n_classes, int max_depth) {
  RefTree t;
  std::vector<int> rows(x.size());
  std::iota(rows.begin(), rows.end(), 0);
  build_ref(t, x, y, rows, n_classes, 0, max_depth);
  return t;
}

// ---------------------------------------------------------------------------
// Text normalization, applied rule by rule on code point arrays.

inline std::vector<UChar32> decode(const std::string& s) {
  std::vector<UChar32> out;
  int32_t i = 0;
  const auto len = static_cast<int32_t>(s.size());
  while (i < len) {
    UChar32 c;
    U8_NEXT(reinterpret_cast<const uint8_t*>(s.data()), i, len, c);
    out.push_back(c < 0 ? 0xFFFD : c);
  }
  return out;
}

inline std::string encode(const std::vector<UChar32>& cps) {
  std::string out;
  for (UChar32 c : cps) {
    char buf[4];
    int32_t n = 0;
    UBool err = false;
    U8_APPEND(reinterpret_cast<uint8_t*>(buf), n, 4, c, err);
    if (err) continue;
    out.append(buf, static_cast<std::size_t>(n));
  }
  return out;
}

inline bool in_indic_block(UChar32 c) {
  return (c >= 0x0900 && c <= 0x097F) || (c >= 0x0B80 && c <= 0x0BFF) ||
         (c >= 0x0D00 && c <= 0x0D7F);
}

inline bool emoji(UChar32 c) {
  static const std::pair<UChar32, UChar32> ranges[] = {
      {0x1F600, 0x1F64F}, {0x1F300, 0x1F5FF}, {0x1F680, 0x1F6FF}, {0x1F900, 0x1F9FF},
      {0x2700, 0x27BF},   {0xFE00, 0xFE0F},   {0xE0100, 0xE01EF}, {0x200D, 0x200D}};
  for (auto [lo, hi] : ranges) {
    if (c >= lo && c <= hi) return true;
  }
  return false;
}

inline std::string normalize(const std::string& raw) {
  auto cps = decode(raw);
  std::vector<UChar32> a;
  for (UChar32 c : cps) {
    const auto cat = U_GET_GC_MASK(c);
    const bool keep = (cat & (U_GC_L_MASK | U_GC_M_MASK | U_GC_ND_MASK)) != 0 ||
                      u_hasBinaryProperty(c, UCHAR_WHITE_SPACE) || in_indic_block(c);
    if (keep) a.push_back(c);
  }
  std::vector<UChar32> b;
  for (UChar32 c : a) {
    if (!emoji(c)) b.push_back(c);
  }
  for (auto& c : b) c = u_tolower(c);
  std::vector<UChar32> out;
  bool pending_space = false;
  for (UChar32 c : b) {
    if (u_hasBinaryProperty(c, UCHAR_WHITE_SPACE)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(c);
  }
  return encode(out);
}

// ---------------------------------------------------------------------------
// Add-alpha character n-gram scoring, straight from the definition.

struct RefProfile {
  std::map<std::u32string, double> counts;
  double total = 0;
  double alpha = 0.5;
  int n = 3;

  double logprob(const std::u32string& g) const {
    const double v = static_cast<double>(counts.size());
    auto it = counts.find(g);
    const double c = it == counts.end() ? 0.0 : it->second;
    return std::log((c + alpha) / (total + alpha * v));
  }
};

inline std::vector<std::u32string> ngrams(const std::u32string& text, int n) {
  std::u32string padded = n > 1 ? U" " + text + U" " : text;
  std::vector<std::u32string> out;
  for (std::size_t i = 0; i + n <= padded.size(); ++i) out.push_back(padded.substr(i, n));
  return out;
}

// Word-by-word grams: the text is split on spaces and each word padded.
inline std::vector<std::u32string> word_ngrams(const std::u32string& text, int n) {
  std::vector<std::u32string> out;
  std::u32string word;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == U' ') {
      if (!word.empty()) {
        for (auto& g : ngrams(word, n)) out.push_back(g);
      }
      word.clear();
    } else {
      word.push_back(text[i]);
    }
  }
  return out;
}

inline std::u32string to_u32(const std::string& s) {
  std::u32string out;
  for (UChar32 c : decode(s)) out.push_back(static_cast<char32_t>(c));
  return out;
}

inline RefProfile ref_train(const std::vector<std::string>& corpus, int n, double alpha) {
  RefProfile p;
  p.n = n;
  p.alpha = alpha;
  for (const auto& line : corpus) {
    for (const auto& g : word_ngrams(to_u32(line), n)) {
      p.counts[g] += 1;
      p.total += 1;
    }
  }
  return p;
}

inline double ref_score(const RefProfile& p, const std::string& text) {
  const auto grams = word_ngrams(to_u32(text), p.n);
  double sum = 0;
  for (const auto& g : grams) sum += p.logprob(g);
  return grams.empty() ? 0.0 : sum / static_cast<double>(grams.size());
}

}  // namespace oracle
