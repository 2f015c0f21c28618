#include "hetnet/datasets_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "builtin_data.hpp"
#include "hetnet/errors.hpp"
#include "text_util.hpp"

namespace hetnet {

using detail::fail_at;
using detail::split_fields;
using detail::trim;

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw DataError("cannot format number");
  return std::string(buf, end);
}

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw DataError("write to '" + path.string() + "' failed");
}

double parse_weight(std::string_view text, std::string_view source, std::size_t line) {
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) {
    fail_at<DataError>(source, line, "malformed weight '" + std::string(text) + "'");
  }
  if (value < 0.0) {
    fail_at<InvalidWeightError>(source, line, "negative weight " + std::string(text));
  }
  return value;
}

void check_field(const std::string& text, std::string_view what) {
  if (text.empty() || text.find_first_of("\t\n\r") != std::string::npos || text.front() == '#' ||
      text != trim(text)) {
    throw DataError("cannot write " + std::string(what) + " '" + text + "' in the graph format");
  }
}

}  // namespace

// ---- graph files ----------------------------------------------------------

LayeredGraph parse_graph(std::istream& in, std::string_view source) {
  enum class Section { header, nodes, edges };
  Section section = Section::header;
  bool directed = false;
  bool have_directed = false;
  std::vector<std::string> layer_names;
  bool have_layers = false;
  std::optional<LayeredGraph> graph;
  std::unordered_map<std::string, NodeRef> nodes;

  auto ensure_graph = [&](std::size_t line) -> LayeredGraph& {
    if (!graph) {
      if (!have_layers) fail_at<DataError>(source, line, "missing 'layers:' header");
      graph.emplace(directed);
      for (const auto& name : layer_names) graph->add_layer(name);
    }
    return *graph;
  };

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty() || text.front() == '#') continue;

    if (text == "[nodes]" || text == "[edges]") {
      const Section next = text == "[nodes]" ? Section::nodes : Section::edges;
      if (next <= section) fail_at<DataError>(source, line, "section out of order: " + std::string(text));
      section = next;
      ensure_graph(line);
      continue;
    }

    if (section == Section::header) {
      const auto colon = text.find(':');
      if (colon == std::string_view::npos) fail_at<DataError>(source, line, "malformed header line");
      const std::string_view key = trim(text.substr(0, colon));
      const std::string_view value = trim(text.substr(colon + 1));
      if (key == "directed") {
        if (value != "true" && value != "false") {
          fail_at<DataError>(source, line, "directed must be true or false");
        }
        if (have_directed) fail_at<DataError>(source, line, "repeated 'directed:' header");
        directed = value == "true";
        have_directed = true;
      } else if (key == "layers") {
        if (have_layers) fail_at<DataError>(source, line, "repeated 'layers:' header");
        for (auto& field : split_fields(value)) {
          if (std::find(layer_names.begin(), layer_names.end(), field) != layer_names.end()) {
            fail_at<DataError>(source, line, "duplicate layer '" + field + "'");
          }
          layer_names.push_back(std::move(field));
        }
        if (layer_names.empty()) fail_at<DataError>(source, line, "no layers declared");
        have_layers = true;
      } else {
        fail_at<DataError>(source, line, "unknown header key '" + std::string(key) + "'");
      }
      continue;
    }

    LayeredGraph& g = *graph;
    auto fields = split_fields(text);
    if (section == Section::nodes) {
      if (fields.size() != 2) fail_at<DataError>(source, line, "node line needs 'label layer'");
      const auto layer = g.find_layer(fields[1]);
      if (!layer) fail_at<DataError>(source, line, "node '" + fields[0] + "' in undeclared layer '" + fields[1] + "'");
      if (nodes.contains(fields[0])) fail_at<DataError>(source, line, "duplicate node label '" + fields[0] + "'");
      NodeRef ref = g.add_node(*layer, fields[0]);
      nodes.emplace(std::move(fields[0]), std::move(ref));
    } else {
      if (fields.size() != 2 && fields.size() != 3) {
        fail_at<DataError>(source, line, "edge line needs 'source target [weight]'");
      }
      auto src = nodes.find(fields[0]);
      auto dst = nodes.find(fields[1]);
      if (src == nodes.end()) fail_at<DataError>(source, line, "unknown node label '" + fields[0] + "'");
      if (dst == nodes.end()) fail_at<DataError>(source, line, "unknown node label '" + fields[1] + "'");
      const double weight = fields.size() == 3 ? parse_weight(fields[2], source, line) : 1.0;
      g.add_edge(src->second, dst->second, weight);
    }
  }
  if (!graph) fail_at<DataError>(source, line, "missing [nodes] section");
  return std::move(*graph);
}

LayeredGraph load_graph(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_graph(in, path.string());
}

void write_graph(const LayeredGraph& graph, std::ostream& out) {
  std::unordered_map<std::string, std::size_t> seen;
  for (const auto& label : graph.labels()) {
    check_field(label, "label");
    if (!seen.emplace(label, 0).second) {
      throw DataError("label '" + label + "' is not unique across layers");
    }
  }
  out << "# hetnet layered graph\n";
  out << "directed: " << (graph.directed() ? "true" : "false") << '\n';
  out << "layers:";
  for (const Layer& layer : graph.layers()) {
    check_field(layer.name, "layer name");
    out << '\t' << layer.name;
  }
  out << "\n[nodes]\n";
  for (std::size_t k = 0; k < graph.layers().size(); ++k) {
    for (const auto& label : graph.layer_labels(k)) out << label << '\t' << graph.layers()[k].name << '\n';
  }
  out << "[edges]\n";
  for (const Edge& edge : graph.edges()) {
    out << edge.source.label << '\t' << edge.target.label << '\t' << format_number(edge.weight)
        << '\n';
  }
}

void save_graph(const LayeredGraph& graph, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_graph(graph, out);
  finish_output(out, path);
}

// ---- partitions -----------------------------------------------------------

void write_partition(const Partition& partition, std::ostream& out) {
  std::vector<std::size_t> order(partition.size());
  std::iota(order.begin(), order.end(), 0);
  const auto& labels = partition.labels();
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return labels[a] < labels[b]; });
  out << "label\tcommunity\n";
  for (std::size_t i : order) out << labels[i] << '\t' << partition.community_of(i) << '\n';
}

void write_partition(const Partition& partition, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_partition(partition, out);
  finish_output(out, path);
}

Partition parse_partition(std::istream& in, std::string_view source) {
  std::vector<std::string> labels;
  std::vector<std::size_t> assignment;
  std::set<std::string> seen;
  bool header = false;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    auto fields = split_fields(text);
    if (!header) {
      if (fields.size() != 2 || fields[0] != "label" || fields[1] != "community") {
        fail_at<DataError>(source, line, "expected header 'label<TAB>community'");
      }
      header = true;
      continue;
    }
    if (fields.size() != 2) fail_at<DataError>(source, line, "partition line needs 'label community'");
    std::size_t community = 0;
    const auto& c = fields[1];
    auto [end, ec] = std::from_chars(c.data(), c.data() + c.size(), community);
    if (ec != std::errc() || end != c.data() + c.size()) {
      fail_at<DataError>(source, line, "malformed community id '" + c + "'");
    }
    if (!seen.insert(fields[0]).second) {
      fail_at<DataError>(source, line, "duplicate label '" + fields[0] + "'");
    }
    labels.push_back(std::move(fields[0]));
    assignment.push_back(community);
  }
  if (!header) fail_at<DataError>(source, line, "empty partition file (no header)");
  return Partition(std::move(labels), assignment);
}

Partition read_partition(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_partition(in, path.string());
}

// ---- rank tables ----------------------------------------------------------

namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

}  // namespace

void write_ranks_csv(const RankTable& table, std::ostream& out) {
  std::vector<std::size_t> order(table.labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](auto a, auto b) { return table.labels[a] < table.labels[b]; });
  out << "label,alpha,score,rank,community\n";
  for (std::size_t i : order) {
    const auto row = static_cast<Eigen::Index>(i);
    for (std::size_t k = 0; k < table.grid.size(); ++k) {
      const auto col = static_cast<Eigen::Index>(k);
      out << csv_field(table.labels[i]) << ',' << format_number(table.grid[k]) << ','
          << format_number(table.scores(row, col)) << ',' << format_number(table.ranks(row, col))
          << ',' << table.partition.community_of(i) << '\n';
    }
  }
}

void write_ranks_csv(const RankTable& table, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_ranks_csv(table, out);
  finish_output(out, path);
}

// ---- builtins -------------------------------------------------------------

std::string_view southern_women_fixture() { return detail::southern_women_tsv; }

namespace {

LayeredGraph southern_women() {
  std::istringstream in{std::string(detail::southern_women_tsv)};
  LayeredGraph graph(false);
  const std::size_t women = graph.add_layer("women");
  const std::size_t events = graph.add_layer("events");
  std::vector<NodeRef> event_nodes;
  std::vector<std::pair<std::string, std::vector<std::string>>> rows;

  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    auto fields = split_fields(text);
    if (event_nodes.empty()) {
      for (std::size_t j = 2; j < fields.size(); ++j) event_nodes.push_back(graph.add_node(events, fields[j]));
      continue;
    }
    if (fields.size() != event_nodes.size() + 2) {
      fail_at<DataError>("southern_women.tsv", line, "row width mismatch");
    }
    rows.emplace_back(fields[0], std::vector<std::string>(fields.begin() + 2, fields.end()));
  }
  std::vector<NodeRef> woman_nodes;
  for (const auto& row : rows) woman_nodes.push_back(graph.add_node(women, row.first));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < event_nodes.size(); ++j) {
      if (rows[i].second[j] == "1") {
        graph.add_edge(woman_nodes[i], event_nodes[j]);
      }
    }
  }
  return graph;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"southern_women", "southern_women_binary_projection",
          "southern_women_weighted_projection"};
}

LayeredGraph load_builtin(std::string_view name) {
  if (name == "southern_women") return southern_women();
  if (name == "southern_women_binary_projection") {
    const LayeredGraph g = southern_women();
    return to_layered_graph(project_unipartite_binary(g, 0, 1));
  }
  if (name == "southern_women_weighted_projection") {
    const LayeredGraph g = southern_women();
    return to_layered_graph(project_unipartite_weighted(g, 0, 1));
  }
  std::string msg = "unknown builtin '" + std::string(name) + "'; available:";
  for (const auto& n : builtin_names()) msg += " " + n;
  throw DataError(msg);
}

std::vector<std::string> builtin_partition_names() { return {"southern_women_groups"}; }

Partition load_builtin_partition(std::string_view name) {
  if (name == "southern_women_groups") {
    std::istringstream in{std::string(detail::southern_women_groups_tsv)};
    return parse_partition(in, "southern_women_groups.tsv");
  }
  std::string msg = "unknown builtin partition '" + std::string(name) + "'; available:";
  for (const auto& n : builtin_partition_names()) msg += " " + n;
  throw DataError(msg);
}

}  // namespace hetnet
