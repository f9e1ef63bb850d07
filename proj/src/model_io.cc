#include "hopeedi/model_io.h"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hopeedi/error.h"
#include "hopeedi/rng.h"

namespace hopeedi {

namespace {

constexpr std::string_view kModelMagic = "hopeedi-model v1";
constexpr std::string_view kEnsembleMagic = "hopeedi-ensemble v1";

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

// Reads "key<TAB>values..." records and reports errors with line numbers.
class RecordReader {
 public:
  explicit RecordReader(std::istream& in) : in_(in) {}

  std::vector<std::string> next(std::string_view key, std::size_t min_fields = 1) {
    std::string line;
    if (!std::getline(in_, line)) fail("unexpected end of file, expected '" + std::string(key) + "'");
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = split_tabs(line);
    if (fields[0] != key || fields.size() < min_fields + 1) {
      fail("expected '" + std::string(key) + "' record");
    }
    fields.erase(fields.begin());
    return fields;
  }

  std::string raw_line() {
    std::string line;
    if (!std::getline(in_, line)) fail("unexpected end of file");
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::BadFormat, "model file: " + what, line_no_);
  }

  double to_double(const std::string& s) const {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) fail("bad number '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("bad number '" + s + "'");
    }
  }

  std::uint64_t to_u64(const std::string& s) const {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(s, &used);
      if (used != s.size()) fail("bad integer '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("bad integer '" + s + "'");
    }
  }

  std::int64_t to_i64(const std::string& s) const {
    try {
      std::size_t used = 0;
      const auto v = std::stoll(s, &used);
      if (used != s.size()) fail("bad integer '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      fail("bad integer '" + s + "'");
    }
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

void write_row(std::ostream& out, std::string_view key, std::span<const double> values) {
  out << key;
  for (double v : values) out << '\t' << num(v);
  out << '\n';
}

TrainedModel read_model_body(RecordReader& r) {
  if (r.raw_line() != kModelMagic) r.fail("bad model header");
  TrainedModel m;
  const auto kind = model_kind_from_name(r.next("kind")[0]);
  if (!kind) r.fail("unknown model kind");
  m.kind = *kind;
  m.dim = r.to_u64(r.next("dim")[0]);
  for (const auto& name : r.next("classes")) {
    const auto l = label_from_name(name);
    if (!l) r.fail("unknown class '" + name + "'");
    m.classes.push_back(*l);
  }
  m.train_seed = r.to_u64(r.next("train_seed")[0]);
  const auto n_hyper = r.to_u64(r.next("hyperparameters")[0]);
  for (std::size_t i = 0; i < n_hyper; ++i) {
    const auto f = r.next("hyper", 2);
    m.hyperparameters.emplace_back(f[0], f[1]);
  }

  const std::size_t n_classes = m.classes.size();
  if (m.kind == ModelKind::RandomForest) {
    const auto n_trees = r.to_u64(r.next("trees")[0]);
    for (std::size_t t = 0; t < n_trees; ++t) {
      const auto header = r.next("tree", 2);
      DecisionTree tree;
      const auto n_nodes = r.to_u64(header[0]);
      tree.max_depth = r.to_u64(header[1]);
      for (std::size_t k = 0; k < n_nodes; ++k) {
        const auto f = r.next("node", 5);
        TreeNode node;
        node.feature = static_cast<std::int32_t>(r.to_i64(f[0]));
        node.threshold = r.to_double(f[1]);
        node.left = static_cast<std::int32_t>(r.to_i64(f[2]));
        node.right = static_cast<std::int32_t>(r.to_i64(f[3]));
        node.label = static_cast<std::uint32_t>(r.to_u64(f[4]));
        const auto in_range = [&](std::int32_t id) {
          return id > static_cast<std::int32_t>(k) && id < static_cast<std::int32_t>(n_nodes);
        };
        if (node.label >= n_classes ||
            (node.feature >= 0 && (static_cast<std::size_t>(node.feature) >= m.dim ||
                                   !in_range(node.left) || !in_range(node.right)))) {
          r.fail("invalid tree node");
        }
        tree.nodes.push_back(node);
      }
      if (tree.nodes.empty()) r.fail("empty tree");
      m.trees.push_back(std::move(tree));
    }
  } else {
    m.linear = LinearWeights(n_classes, m.dim);
    const auto bias = r.next("bias", n_classes);
    if (bias.size() != n_classes) r.fail("bias length");
    for (std::size_t c = 0; c < n_classes; ++c) m.linear.b[c] = r.to_double(bias[c]);
    for (std::size_t c = 0; c < n_classes; ++c) {
      const auto row = r.next("w", 0);
      if (row.size() != m.dim) r.fail("weight row length");
      for (std::size_t j = 0; j < m.dim; ++j) m.linear.row(c)[j] = r.to_double(row[j]);
    }
  }
  r.next("end", 0);
  return m;
}

}  // namespace

void write_model(std::ostream& out, const TrainedModel& m) {
  out << kModelMagic << '\n'
      << "kind\t" << model_kind_name(m.kind) << '\n'
      << "dim\t" << m.dim << '\n'
      << "classes";
  for (Label l : m.classes) out << '\t' << label_name(l);
  out << '\n' << "train_seed\t" << m.train_seed << '\n';
  out << "hyperparameters\t" << m.hyperparameters.size() << '\n';
  for (const auto& [k, v] : m.hyperparameters) out << "hyper\t" << k << '\t' << v << '\n';

  if (m.kind == ModelKind::RandomForest) {
    out << "trees\t" << m.trees.size() << '\n';
    for (const auto& tree : m.trees) {
      out << "tree\t" << tree.nodes.size() << '\t' << tree.max_depth << '\n';
      for (const auto& n : tree.nodes) {
        out << "node\t" << n.feature << '\t' << num(n.threshold) << '\t' << n.left << '\t'
            << n.right << '\t' << n.label << '\n';
      }
    }
  } else {
    write_row(out, "bias", m.linear.b);
    for (std::size_t c = 0; c < m.linear.n_classes; ++c) write_row(out, "w", m.linear.row(c));
  }
  out << "end\n";
}

TrainedModel read_model(std::istream& in) {
  RecordReader r(in);
  return read_model_body(r);
}

void write_ensemble(std::ostream& out, const Ensemble& e) {
  out << kEnsembleMagic << '\n'
      << "rng\t" << Rng::kName << '\n'
      << "k\t" << e.members.size() << '\n'
      << "base_seed\t" << e.config.base_seed << '\n'
      << "fraction_train\t" << num(e.config.fraction_train) << '\n'
      << "tie_break\t" << tie_break_name(e.config.tie_break) << '\n';
  for (std::size_t i = 0; i < e.members.size(); ++i) {
    const auto& m = e.members[i];
    out << "member\t" << i << '\t' << m.split_seed << '\t' << m.train_rows << '\t'
        << m.validation_rows << '\t' << num(m.validation_weighted_f1) << '\n';
    write_model(out, m.model);
  }
}

Ensemble read_ensemble(std::istream& in) {
  RecordReader r(in);
  if (r.raw_line() != kEnsembleMagic) r.fail("bad ensemble header");
  if (r.next("rng")[0] != Rng::kName) r.fail("unsupported generator");
  Ensemble e;
  e.config.k = r.to_u64(r.next("k")[0]);
  e.config.base_seed = r.to_u64(r.next("base_seed")[0]);
  e.config.fraction_train = r.to_double(r.next("fraction_train")[0]);
  const auto tb = tie_break_from_name(r.next("tie_break")[0]);
  if (!tb) r.fail("unknown tie-break rule");
  e.config.tie_break = *tb;
  for (std::size_t i = 0; i < e.config.k; ++i) {
    const auto f = r.next("member", 5);
    EnsembleMember m;
    m.split_seed = r.to_u64(f[1]);
    m.train_rows = r.to_u64(f[2]);
    m.validation_rows = r.to_u64(f[3]);
    m.validation_weighted_f1 = r.to_double(f[4]);
    m.model = read_model_body(r);
    e.members.push_back(std::move(m));
  }
  if (e.members.empty()) r.fail("ensemble has no members");
  return e;
}

void save_ensemble(const std::filesystem::path& path, const Ensemble& ensemble) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  write_ensemble(out, ensemble);
}

Ensemble load_ensemble(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  try {
    return read_ensemble(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail(), e.line());
  }
}

}  // namespace hopeedi
