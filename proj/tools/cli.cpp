#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "hetnet/centrality.hpp"
#include "hetnet/community.hpp"
#include "hetnet/datasets_io.hpp"
#include "hetnet/errors.hpp"
#include "hetnet/evaluation.hpp"
#include "hetnet/graph_model.hpp"
#include "hetnet/ranking.hpp"

namespace hetnet::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { tsv, json, csv };

struct RunConfig {
  // input
  std::string builtin;
  std::string graph_path;
  std::string gml_path;
  bool no_conferences = false;
  std::string projection = "none";
  std::string target;
  std::string via;
  std::vector<std::string> layer_weights;

  // parameters
  double alpha = 0.0;
  std::string grid;
  std::vector<double> alphas;
  double beta = 1.0;
  std::string method = "exact";
  std::size_t terms = 3;
  std::string scores = "community";
  std::string truth;
  std::string partition;
  std::string rank_layer;
  double bridge_threshold = 1.0;
  std::vector<std::string> partitions;  // nmi positionals

  // output
  std::string output;
  std::string out_file;
};

struct Input {
  LayeredGraph graph{false};
  NModeMatrix matrix;
  std::string name;
};

double parse_double(const std::string& text, const std::string& what) {
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) {
    throw UsageError("malformed " + what + " '" + text + "'");
  }
  return value;
}

Format parse_format(const std::string& text) {
  if (text == "tsv") return Format::tsv;
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  throw UsageError("unknown output format '" + text + "' (tsv, json, csv)");
}

MethodSpec method_of(const RunConfig& cfg) {
  MethodSpec spec;
  spec.method = cfg.method == "series" ? CentralityMethod::series : CentralityMethod::exact;
  spec.terms = cfg.terms;
  if (spec.terms == 0) throw UsageError("--terms must be at least 1");
  return spec;
}

std::size_t layer_by_name(const LayeredGraph& graph, const std::string& name, std::size_t fallback) {
  if (name.empty()) {
    if (fallback >= graph.layers().size()) {
      throw DataError("projection needs at least two layers; the input has " +
                      std::to_string(graph.layers().size()));
    }
    return fallback;
  }
  const auto k = graph.find_layer(name);
  if (!k) throw DataError("no layer named '" + name + "'");
  return *k;
}

LayerWeights parse_layer_weights(const NModeMatrix& matrix, const std::vector<std::string>& specs) {
  LayerWeights weights(matrix.layers().size());
  auto find = [&](const std::string& name) {
    for (std::size_t k = 0; k < matrix.layers().size(); ++k) {
      if (matrix.layers()[k].name == name) return k;
    }
    throw DataError("--layer-weight: no layer named '" + name + "'");
  };
  for (const auto& spec : specs) {
    const auto eq = spec.rfind('=');
    if (eq == std::string::npos) throw UsageError("--layer-weight expects LAYER=W or FROM:TO=W");
    const std::string lhs = spec.substr(0, eq);
    const double w = parse_double(spec.substr(eq + 1), "layer weight");
    const auto colon = lhs.find(':');
    if (colon == std::string::npos) {
      weights.set_intra(find(lhs), w);
    } else {
      const auto from = find(lhs.substr(0, colon));
      const auto to = find(lhs.substr(colon + 1));
      if (from == to) {
        weights.set_intra(from, w);
      } else {
        weights.set_inter(from, to, w);
      }
    }
  }
  return weights;
}

Input load_input(const RunConfig& cfg) {
  const int sources = !cfg.builtin.empty() + !cfg.graph_path.empty() + !cfg.gml_path.empty();
  if (sources != 1) throw UsageError("give exactly one of --builtin, --graph, --gml");
  Input input;
  if (!cfg.builtin.empty()) {
    input.graph = load_builtin(cfg.builtin);
    input.name = cfg.builtin;
  } else if (!cfg.graph_path.empty()) {
    input.graph = load_graph(cfg.graph_path);
    input.name = cfg.graph_path;
  } else {
    GmlOptions options;
    options.synthesize_conferences = !cfg.no_conferences;
    input.graph = load_gml_subset(cfg.gml_path, options);
    input.name = cfg.gml_path;
  }

  if (cfg.projection == "none") {
    input.matrix = build_nmode(input.graph);
  } else {
    const std::size_t target = layer_by_name(input.graph, cfg.target, 0);
    const std::size_t via = layer_by_name(input.graph, cfg.via, 1);
    input.matrix = cfg.projection == "binary"
                       ? project_unipartite_binary(input.graph, target, via)
                       : project_unipartite_weighted(input.graph, target, via);
  }
  if (!cfg.layer_weights.empty()) {
    input.matrix = apply_layer_weights(input.matrix, parse_layer_weights(input.matrix, cfg.layer_weights));
  }
  return input;
}

bool has_suffix(const std::string& text, std::string_view suffix) {
  return text.size() >= suffix.size() && text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// A builtin partition name, a .gml file (teams grouped by value) or a partition TSV.
Partition load_partition_source(const std::string& source) {
  const auto names = builtin_partition_names();
  if (std::find(names.begin(), names.end(), source) != names.end()) return load_builtin_partition(source);
  if (has_suffix(source, ".gml")) return load_gml_partition(source);
  return read_partition(source);
}

bool covers(const Partition& a, const Partition& b) {
  return std::all_of(b.labels().begin(), b.labels().end(),
                     [&](const auto& label) { return a.index_of(label).has_value(); });
}

// Compares on the smaller label set when one partition covers the other, so
// projected or conference-augmented graphs can be scored against node truth.
struct Scored {
  double nmi = 0.0;
  std::size_t nodes = 0;
};

Scored score_against(const Partition& found, const Partition& truth) {
  if (covers(truth, found)) return {nmi(found, truth.restricted(found.labels())), found.size()};
  if (covers(found, truth)) return {nmi(found.restricted(truth.labels()), truth), truth.size()};
  throw PartitionMismatchError("partitions share neither label set");
}

std::vector<double> grid_of(const RunConfig& cfg) {
  std::vector<double> grid = cfg.alphas;
  if (!cfg.grid.empty()) {
    try {
      const auto g = parse_grid(cfg.grid);
      grid.insert(grid.end(), g.begin(), g.end());
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (grid.empty()) throw UsageError("give --grid start:end:step or at least one --alpha");
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

// Reports every inadmissible value at once rather than clipping the grid.
void check_grid(const std::vector<double>& grid, const SpectralInfo& spectrum) {
  std::vector<double> bad;
  for (double a : grid) {
    if (a < 0.0 || !is_admissible(a, spectrum)) bad.push_back(a);
  }
  if (bad.empty()) return;
  std::string list;
  for (double a : bad) list += (list.empty() ? "" : ", ") + format_number(a);
  const auto bound = max_alpha(spectrum);
  throw DivergenceError("alpha values " + list + " are not admissible (need 0 <= alpha < 1/lambda = " +
                            (bound ? format_number(*bound) : std::string("inf")) + ")",
                        bad.front(), bound.value_or(INFINITY));
}

Json partition_json(const Partition& partition) {
  Json communities = Json::array();
  for (const auto& members : partition.members()) {
    std::vector<std::string> labels;
    for (auto i : members) labels.push_back(partition.labels()[i]);
    std::sort(labels.begin(), labels.end());
    communities.push_back(labels);
  }
  return communities;
}

std::string method_name(const MethodSpec& spec) {
  return spec.method == CentralityMethod::series ? "series" : "exact";
}

void emit_json(std::ostream& out, Json doc) {
  out << doc.dump(2) << '\n';
}

Json header(const std::string& command) {
  Json doc;
  doc["version"] = json_schema_version;
  doc["command"] = command;
  return doc;
}

// ---- commands -------------------------------------------------------------

int cmd_communities(const RunConfig& cfg, Format format, std::ostream& out) {
  const Input input = load_input(cfg);
  const SpectralInfo spectrum = spectral_radius(input.matrix);
  CommunityOptions options;
  options.method = method_of(cfg);
  const CommunityResult result = detect_communities(input.matrix, cfg.alpha, cfg.beta, spectrum, options);

  std::optional<Scored> scored;
  if (!cfg.truth.empty()) scored = score_against(result.partition, load_partition_source(cfg.truth));

  switch (format) {
    case Format::json: {
      Json doc = header("communities");
      doc["input"] = input.name;
      doc["alpha"] = result.alpha;
      doc["beta"] = result.beta;
      doc["method"] = method_name(options.method);
      doc["terms"] = options.method.terms;
      doc["lambda_max"] = spectrum.lambda_max;
      doc["total_paths"] = result.total_paths;
      doc["q"] = result.q;
      doc["q_raw"] = result.q_raw;
      doc["community_count"] = result.partition.community_count();
      doc["communities"] = partition_json(result.partition);
      Json splits = Json::array();
      for (const auto& s : result.splits) {
        splits.push_back({{"group_size", s.group_size},
                          {"eigenvalue", s.eigenvalue},
                          {"delta_q", s.delta_q},
                          {"delta_q_raw", s.delta_q_raw}});
      }
      doc["splits"] = splits;
      if (scored) doc["nmi"] = scored->nmi;
      emit_json(out, doc);
      break;
    }
    case Format::tsv: {
      out << "# alpha\t" << format_number(result.alpha) << '\n'
          << "# beta\t" << format_number(result.beta) << '\n'
          << "# method\t" << method_name(options.method) << '\n'
          << "# lambda_max\t" << format_number(spectrum.lambda_max) << '\n'
          << "# total_paths\t" << result.total_paths << '\n'
          << "# q\t" << format_number(result.q) << '\n'
          << "# q_raw\t" << format_number(result.q_raw) << '\n'
          << "# communities\t" << result.partition.community_count() << '\n';
      for (std::size_t k = 0; k < result.splits.size(); ++k) {
        const auto& s = result.splits[k];
        out << "# split\t" << k + 1 << "\tsize=" << s.group_size
            << "\teigenvalue=" << format_number(s.eigenvalue)
            << "\tdelta_q=" << format_number(s.delta_q) << '\n';
      }
      if (scored) out << "# nmi\t" << format_number(scored->nmi) << '\n';
      write_partition(result.partition, out);
      break;
    }
    case Format::csv: {
      std::ostringstream tsv;
      write_partition(result.partition, tsv);
      std::string text = tsv.str();
      std::replace(text.begin(), text.end(), '\t', ',');
      out << text;
      break;
    }
  }
  return exit_ok;
}

struct RankRun {
  Input input;
  RankTable table;
  std::vector<RoleLabel> roles;
  std::string partition_source;
};

RankRun rank_run(const RunConfig& cfg) {
  RankRun run;
  run.input = load_input(cfg);
  const auto grid = grid_of(cfg);
  const SpectralInfo spectrum = spectral_radius(run.input.matrix);
  check_grid(grid, spectrum);

  Partition partition;
  if (!cfg.partition.empty()) {
    const Partition given = load_partition_source(cfg.partition);
    for (const auto& label : run.input.matrix.labels()) {
      if (!given.index_of(label)) {
        throw PartitionMismatchError("partition '" + cfg.partition + "' has no community for '" + label + "'");
      }
    }
    partition = given.restricted(run.input.matrix.labels());
    run.partition_source = cfg.partition;
  } else {
    CommunityOptions options;
    options.method = method_of(cfg);
    partition = detect_communities(run.input.matrix, grid.back(), cfg.beta, spectrum, options).partition;
    run.partition_source = "detected at alpha=" + format_number(grid.back());
  }

  const ScoreTable scores = cfg.scores == "total"
                                ? alpha_sweep(run.input.matrix, grid, cfg.beta)
                                : alpha_sweep_within(run.input.matrix, grid, cfg.beta, partition);
  if (cfg.rank_layer.empty()) {
    run.table = rank_within_groups(scores, partition);
  } else {
    const auto& layers = run.input.matrix.layers();
    auto layer = std::find_if(layers.begin(), layers.end(), [&](const Layer& l) { return l.name == cfg.rank_layer; });
    if (layer == layers.end()) throw DataError("no layer named '" + cfg.rank_layer + "'");
    const auto& labels = run.input.matrix.labels();
    const std::vector<std::string> keep(labels.begin() + static_cast<std::ptrdiff_t>(layer->offset),
                                        labels.begin() + static_cast<std::ptrdiff_t>(layer->offset + layer->size));
    run.table = rank_within_groups(select_rows(scores, keep), partition);
  }
  if (grid.size() >= 2) run.roles = classify_roles(run.table, cfg.bridge_threshold);
  return run;
}

// Community, then final rank, then label.
std::vector<std::size_t> display_order(const RankTable& table) {
  std::vector<std::size_t> order(table.labels.size());
  std::iota(order.begin(), order.end(), 0);
  const auto last = static_cast<Eigen::Index>(table.grid.size() - 1);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto ca = table.partition.community_of(a), cb = table.partition.community_of(b);
    if (ca != cb) return ca < cb;
    const double ra = table.ranks(static_cast<Eigen::Index>(a), last);
    const double rb = table.ranks(static_cast<Eigen::Index>(b), last);
    if (ra != rb) return ra < rb;
    return table.labels[a] < table.labels[b];
  });
  return order;
}

Json rank_json(const RankRun& run, const std::string& command, const RunConfig& cfg) {
  Json doc = header(command);
  doc["input"] = run.input.name;
  doc["beta"] = cfg.beta;
  doc["scores"] = cfg.scores;
  doc["partition"] = run.partition_source;
  doc["grid"] = run.table.grid;
  Json nodes = Json::array();
  std::map<std::string, const RoleLabel*> roles;
  for (const auto& r : run.roles) roles[r.label] = &r;
  for (std::size_t i : display_order(run.table)) {
    const auto row = static_cast<Eigen::Index>(i);
    Json node;
    node["label"] = run.table.labels[i];
    node["community"] = run.table.partition.community_of(i);
    if (auto it = roles.find(run.table.labels[i]); it != roles.end()) {
      node["role"] = std::string(to_string(it->second->role));
      node["delta_rank"] = it->second->delta_rank;
    }
    std::vector<double> ranks, scores;
    for (Eigen::Index k = 0; k < run.table.ranks.cols(); ++k) {
      ranks.push_back(run.table.ranks(row, k));
      scores.push_back(run.table.scores(row, k));
    }
    node["ranks"] = ranks;
    node["scores"] = scores;
    nodes.push_back(node);
  }
  doc["nodes"] = nodes;
  return doc;
}

void write_wide_ranks(const RankRun& run, char sep, bool with_roles, std::ostream& out) {
  std::map<std::string, const RoleLabel*> roles;
  for (const auto& r : run.roles) roles[r.label] = &r;
  out << "label" << sep << "community";
  if (with_roles) out << sep << "role";
  for (double a : run.table.grid) out << sep << format_number(a);
  out << '\n';
  for (std::size_t i : display_order(run.table)) {
    out << run.table.labels[i] << sep << run.table.partition.community_of(i);
    if (with_roles) {
      auto it = roles.find(run.table.labels[i]);
      out << sep << (it == roles.end() ? "-" : std::string(to_string(it->second->role)));
    }
    for (Eigen::Index k = 0; k < run.table.ranks.cols(); ++k) {
      out << sep << format_number(run.table.ranks(static_cast<Eigen::Index>(i), k));
    }
    out << '\n';
  }
}

int cmd_rank(const RunConfig& cfg, Format format, std::ostream& out) {
  const RankRun run = rank_run(cfg);
  switch (format) {
    case Format::json:
      emit_json(out, rank_json(run, "rank", cfg));
      break;
    case Format::tsv:
      out << "# partition\t" << run.partition_source << '\n'
          << "# scores\t" << cfg.scores << '\n';
      write_wide_ranks(run, '\t', true, out);
      break;
    case Format::csv:
      write_ranks_csv(run.table, out);
      break;
  }
  return exit_ok;
}

int cmd_sweep(const RunConfig& cfg, Format format, std::ostream& out) {
  const RankRun run = rank_run(cfg);
  switch (format) {
    case Format::json:
      emit_json(out, rank_json(run, "sweep", cfg));
      break;
    case Format::tsv:
      write_wide_ranks(run, '\t', false, out);
      break;
    case Format::csv:
      write_wide_ranks(run, ',', false, out);
      break;
  }
  return exit_ok;
}

int cmd_nmi(const RunConfig& cfg, Format format, std::ostream& out) {
  if (cfg.partitions.size() != 2) throw UsageError("nmi needs exactly two partitions");
  const Partition a = load_partition_source(cfg.partitions[0]);
  const Partition b = load_partition_source(cfg.partitions[1]);
  const ConfusionCounts counts = confusion(a, b);
  const double value = nmi(a, b);
  switch (format) {
    case Format::json: {
      Json doc = header("nmi");
      doc["nmi"] = value;
      doc["mutual_information"] = mutual_information(counts);
      doc["entropy_a"] = row_entropy(counts);
      doc["entropy_b"] = column_entropy(counts);
      doc["nodes"] = counts.n;
      emit_json(out, doc);
      break;
    }
    case Format::tsv:
      out << "nmi\t" << format_number(value) << '\n'
          << "mutual_information\t" << format_number(mutual_information(counts)) << '\n'
          << "entropy_a\t" << format_number(row_entropy(counts)) << '\n'
          << "entropy_b\t" << format_number(column_entropy(counts)) << '\n'
          << "nodes\t" << counts.n << '\n';
      break;
    case Format::csv:
      out << "nmi,mutual_information,entropy_a,entropy_b,nodes\n"
          << format_number(value) << ',' << format_number(mutual_information(counts)) << ','
          << format_number(row_entropy(counts)) << ',' << format_number(column_entropy(counts))
          << ',' << counts.n << '\n';
      break;
  }
  return exit_ok;
}

int cmd_centrality(const RunConfig& cfg, Format format, std::ostream& out) {
  const Input input = load_input(cfg);
  const SpectralInfo spectrum = spectral_radius(input.matrix);
  const MethodSpec method = method_of(cfg);
  require_admissible(cfg.alpha, spectrum);
  const CentralityMatrix c =
      compute_centrality(input.matrix, {cfg.alpha, cfg.beta}, method, spectrum);
  const Eigen::VectorXd scores = node_scores(c);
  const auto& labels = input.matrix.labels();
  const auto n = static_cast<Eigen::Index>(labels.size());

  if (format == Format::json) {
    Json doc = header("centrality");
    doc["input"] = input.name;
    doc["alpha"] = cfg.alpha;
    doc["beta"] = cfg.beta;
    doc["method"] = method_name(method);
    doc["terms"] = method.terms;
    doc["lambda_max"] = spectrum.lambda_max;
    doc["labels"] = labels;
    doc["scores"] = std::vector<double>(scores.data(), scores.data() + scores.size());
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < n; ++i) {
      std::vector<double> row(static_cast<std::size_t>(n));
      for (Eigen::Index j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = c.values(i, j);
      rows.push_back(row);
    }
    doc["values"] = rows;
    emit_json(out, doc);
    return exit_ok;
  }

  const char sep = format == Format::csv ? ',' : '\t';
  out << "label" << sep << "score";
  for (const auto& l : labels) out << sep << l;
  out << '\n';
  for (Eigen::Index i = 0; i < n; ++i) {
    out << labels[static_cast<std::size_t>(i)] << sep << format_number(scores[i]);
    for (Eigen::Index j = 0; j < n; ++j) out << sep << format_number(c.values(i, j));
    out << '\n';
  }
  return exit_ok;
}

int cmd_spectral_radius(const RunConfig& cfg, Format format, std::ostream& out) {
  const Input input = load_input(cfg);
  const SpectralInfo spectrum = spectral_radius(input.matrix);
  const auto bound = max_alpha(spectrum);
  const std::string bound_text = bound ? format_number(*bound) : "inf";
  switch (format) {
    case Format::json: {
      Json doc = header("spectral-radius");
      doc["input"] = input.name;
      doc["lambda_max"] = spectrum.lambda_max;
      doc["max_alpha"] = bound ? Json(*bound) : Json(nullptr);
      doc["iterations"] = spectrum.iterations;
      doc["residual"] = spectrum.residual;
      emit_json(out, doc);
      break;
    }
    case Format::tsv:
      out << "lambda_max\t" << format_number(spectrum.lambda_max) << '\n'
          << "max_alpha\t" << bound_text << '\n'
          << "iterations\t" << spectrum.iterations << '\n'
          << "residual\t" << format_number(spectrum.residual) << '\n';
      break;
    case Format::csv:
      out << "lambda_max,max_alpha,iterations,residual\n"
          << format_number(spectrum.lambda_max) << ',' << bound_text << ',' << spectrum.iterations
          << ',' << format_number(spectrum.residual) << '\n';
      break;
  }
  return exit_ok;
}

int cmd_project(RunConfig cfg, Format format, std::ostream& out) {
  if (cfg.projection == "none") cfg.projection = "binary";
  const Input input = load_input(cfg);
  const LayeredGraph projected = to_layered_graph(input.matrix);
  switch (format) {
    case Format::tsv:
      write_graph(projected, out);
      break;
    case Format::csv:
      out << "source,target,weight\n";
      for (const auto& e : projected.edges()) {
        out << e.source.label << ',' << e.target.label << ',' << format_number(e.weight) << '\n';
      }
      break;
    case Format::json: {
      Json doc = header("project");
      doc["input"] = input.name;
      doc["projection"] = cfg.projection;
      doc["labels"] = input.matrix.labels();
      Json edges = Json::array();
      for (const auto& e : projected.edges()) {
        edges.push_back({{"source", e.source.label}, {"target", e.target.label}, {"weight", e.weight}});
      }
      doc["edges"] = edges;
      emit_json(out, doc);
      break;
    }
  }
  return exit_ok;
}

void add_input_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--builtin", cfg.builtin, "Bundled dataset name");
  cmd->add_option("--graph", cfg.graph_path, "Layered graph file");
  cmd->add_option("--gml", cfg.gml_path, "GML file (teams, with conferences from node values)");
  cmd->add_flag("--no-conferences", cfg.no_conferences, "Do not add the GML conference layer");
  cmd->add_option("--projection", cfg.projection, "none, binary or weighted")
      ->check(CLI::IsMember({"none", "binary", "weighted"}));
  cmd->add_option("--target", cfg.target, "Projection target layer (default: first)");
  cmd->add_option("--via", cfg.via, "Projection via layer (default: second)");
  cmd->add_option("--layer-weight", cfg.layer_weights, "LAYER=W or FROM:TO=W block weight");
}

void add_method_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--beta", cfg.beta, "Direct-link weight")->check(CLI::PositiveNumber);
  cmd->add_option("--method", cfg.method, "exact or series")->check(CLI::IsMember({"exact", "series"}));
  cmd->add_option("--terms", cfg.terms, "Series terms");
}

void add_output_options(CLI::App* cmd, RunConfig& cfg, const std::string& default_format) {
  cmd->add_option("--output", cfg.output, "tsv, json or csv (default " + default_format + ")");
  cmd->add_option("--out-file", cfg.out_file, "Write data here instead of stdout");
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
    throw std::invalid_argument("grid must look like start:end:step, got '" + text + "'");
  }
  double start = 0, end = 0, step = 0;
  try {
    start = parse_double(text.substr(0, first), "grid start");
    end = parse_double(text.substr(first + 1, second - first - 1), "grid end");
    step = parse_double(text.substr(second + 1), "grid step");
  } catch (const UsageError& e) {
    throw std::invalid_argument(e.what());
  }
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (end < start) throw std::invalid_argument("grid end is below its start");
  // Snap to 12 significant decimals so 0.02 * 3 prints as 0.06.
  const auto count = static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
  if (count > 100000) throw std::invalid_argument("grid has too many points");
  std::vector<double> grid;
  for (std::size_t k = 0; k < count; ++k) {
    const double raw = start + static_cast<double>(k) * step;
    const double scale = std::pow(10.0, 12 - static_cast<int>(std::ceil(std::log10(std::max(std::abs(raw), 1e-300)))));
    grid.push_back(raw == 0.0 ? 0.0 : std::round(raw * scale) / scale);
  }
  return grid;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Heterogeneous network centrality, communities and rankings", "hetnet"};
  app.require_subcommand(1);

  auto* communities = app.add_subcommand("communities", "Detect communities at one alpha");
  add_input_options(communities, cfg);
  communities->add_option("--alpha", cfg.alpha, "Indirect-link attenuation");
  add_method_options(communities, cfg);
  communities->add_option("--truth", cfg.truth, "Reference partition (file, builtin or .gml)");
  add_output_options(communities, cfg, "tsv");

  auto* rank = app.add_subcommand("rank", "Within-community ranks, leaders and bridges over an alpha grid");
  auto* sweep = app.add_subcommand("sweep", "Rank table over an alpha grid, one column per alpha");
  for (auto* cmd : {rank, sweep}) {
    add_input_options(cmd, cfg);
    cmd->add_option("--grid", cfg.grid, "start:end:step, inclusive");
    cmd->add_option("--alpha", cfg.alphas, "Extra grid values");
    add_method_options(cmd, cfg);
    cmd->add_option("--scores", cfg.scores, "community or total")
        ->check(CLI::IsMember({"community", "total"}));
    cmd->add_option("--partition", cfg.partition,
                    "Communities to rank within (default: detected at the largest alpha)");
    cmd->add_option("--rank-layer", cfg.rank_layer,
                    "Rank only this layer's nodes (scores still count every node)");
    cmd->add_option("--bridge-threshold", cfg.bridge_threshold, "Rank gain that marks a bridge");
  }
  add_output_options(rank, cfg, "tsv");
  add_output_options(sweep, cfg, "csv");

  auto* nmi_cmd = app.add_subcommand("nmi", "Normalized mutual information of two partitions");
  nmi_cmd->add_option("partitions", cfg.partitions, "Two partitions (file, builtin or .gml)")
      ->required()
      ->expected(2);
  add_output_options(nmi_cmd, cfg, "tsv");

  auto* centrality = app.add_subcommand("centrality", "Bonacich centrality matrix and node scores");
  add_input_options(centrality, cfg);
  centrality->add_option("--alpha", cfg.alpha, "Indirect-link attenuation");
  add_method_options(centrality, cfg);
  add_output_options(centrality, cfg, "tsv");

  auto* radius = app.add_subcommand("spectral-radius", "Largest eigenvalue and the alpha bound");
  add_input_options(radius, cfg);
  add_output_options(radius, cfg, "tsv");

  auto* project = app.add_subcommand("project", "Unipartite projection of one layer");
  add_input_options(project, cfg);
  add_output_options(project, cfg, "tsv");

  std::vector<std::string> argv_store{"hetnet"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return exit_ok;
    }
    err << "hetnet: usage error: " << e.what() << "\nRun with --help for usage.\n";
    return exit_usage;
  }

  try {
    if (cfg.output.empty()) cfg.output = sweep->parsed() ? "csv" : "tsv";
    const Format format = parse_format(cfg.output);
    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.out_file.empty()) {
      file.open(cfg.out_file, std::ios::binary);
      if (!file) throw DataError("cannot open '" + cfg.out_file + "' for writing");
      sink = &file;
    }
    int code = exit_ok;
    if (communities->parsed()) code = cmd_communities(cfg, format, *sink);
    else if (rank->parsed()) code = cmd_rank(cfg, format, *sink);
    else if (sweep->parsed()) code = cmd_sweep(cfg, format, *sink);
    else if (nmi_cmd->parsed()) code = cmd_nmi(cfg, format, *sink);
    else if (centrality->parsed()) code = cmd_centrality(cfg, format, *sink);
    else if (radius->parsed()) code = cmd_spectral_radius(cfg, format, *sink);
    else if (project->parsed()) code = cmd_project(cfg, format, *sink);
    sink->flush();
    if (!*sink) throw DataError("write failed");
    return code;
  } catch (const UsageError& e) {
    err << "hetnet: usage error: " << e.what() << '\n';
    return exit_usage;
  } catch (const NumericalError& e) {
    err << "hetnet: numerical error: " << e.what() << '\n';
    return exit_numerical;
  } catch (const DataError& e) {
    err << "hetnet: data error: " << e.what() << '\n';
    return exit_data;
  } catch (const std::exception& e) {
    err << "hetnet: data error: " << e.what() << '\n';
    return exit_data;
  }
}

}  // namespace hetnet::cli
