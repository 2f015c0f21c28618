#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

#include "hetnet/datasets_io.hpp"
#include "hetnet/errors.hpp"

namespace hetnet {

namespace {

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

// One `key value` pair. Lists keep their children; scalars keep raw text.
struct GmlItem {
  enum class Kind { number, string, list };
  std::string key;
  Kind kind = Kind::number;
  std::string text;
  std::vector<GmlItem> children;
  Position where;
};

class GmlReader {
 public:
  GmlReader(std::string text, std::string_view source) : text_(std::move(text)), source_(source) {}

  std::vector<GmlItem> parse_document() {
    auto items = parse_list(false);
    return items;
  }

 private:
  [[noreturn]] void fail(const Position& at, const std::string& message) const {
    throw DataError(std::string(source_) + ":" + std::to_string(at.line) + ":" +
                    std::to_string(at.column) + ": " + message);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++here_.line;
      here_.column = 1;
    } else {
      ++here_.column;
    }
    ++pos_;
  }

  void skip_space() {
    while (!at_end()) {
      const char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string read_key() {
    const Position start = here_;
    std::string key;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
      key += peek();
      advance();
    }
    if (key.empty() || std::isdigit(static_cast<unsigned char>(key.front()))) {
      fail(start, "expected a key");
    }
    return key;
  }

  std::vector<GmlItem> parse_list(bool nested) {
    std::vector<GmlItem> items;
    while (true) {
      skip_space();
      if (at_end()) {
        if (nested) fail(here_, "unterminated list, expected ']'");
        return items;
      }
      if (peek() == ']') {
        if (!nested) fail(here_, "unexpected ']'");
        advance();
        return items;
      }
      GmlItem item;
      item.where = here_;
      item.key = read_key();
      skip_space();
      if (at_end()) fail(here_, "missing value for key '" + item.key + "'");
      const Position value_at = here_;
      const char c = peek();
      if (c == '[') {
        advance();
        item.kind = GmlItem::Kind::list;
        item.children = parse_list(true);
      } else if (c == '"') {
        advance();
        item.kind = GmlItem::Kind::string;
        while (!at_end() && peek() != '"') {
          item.text += peek();
          advance();
        }
        if (at_end()) fail(value_at, "unterminated string");
        advance();
      } else {
        item.kind = GmlItem::Kind::number;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '.' ||
                             peek() == '-' || peek() == '+')) {
          item.text += peek();
          advance();
        }
        double value = 0.0;
        auto [end, ec] = std::from_chars(item.text.data(), item.text.data() + item.text.size(), value);
        if (item.text.empty() || ec != std::errc() || end != item.text.data() + item.text.size()) {
          fail(value_at, "malformed value for key '" + item.key + "'");
        }
      }
      items.push_back(std::move(item));
    }
  }

  std::string text_;
  std::string_view source_;
  std::size_t pos_ = 0;
  Position here_;
};

struct GmlNodeRecord {
  long long id = 0;
  std::string label;
  std::optional<std::string> value;
  Position where;
};

struct GmlEdgeRecord {
  long long source = 0;
  long long target = 0;
  double weight = 1.0;
  Position where;
};

struct GmlGraph {
  bool directed = false;
  std::vector<GmlNodeRecord> nodes;
  std::vector<GmlEdgeRecord> edges;
};

std::string position_prefix(std::string_view source, const Position& at) {
  return std::string(source) + ":" + std::to_string(at.line) + ":" + std::to_string(at.column) + ": ";
}

long long integer_of(const GmlItem& item, std::string_view source) {
  if (item.kind != GmlItem::Kind::number) {
    throw DataError(position_prefix(source, item.where) + "'" + item.key + "' must be an integer");
  }
  long long value = 0;
  auto [end, ec] = std::from_chars(item.text.data(), item.text.data() + item.text.size(), value);
  if (ec != std::errc() || end != item.text.data() + item.text.size()) {
    throw DataError(position_prefix(source, item.where) + "'" + item.key + "' must be an integer");
  }
  return value;
}

// Integral numbers print without a fraction so "5" and "5.0" agree.
std::string value_text(const GmlItem& item) {
  if (item.kind == GmlItem::Kind::number) {
    double v = 0.0;
    std::from_chars(item.text.data(), item.text.data() + item.text.size(), v);
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15) {
      return std::to_string(static_cast<long long>(v));
    }
  }
  return item.text;
}

GmlGraph read_gml(std::istream& in, std::string_view source) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  GmlReader reader(std::move(text), source);
  const auto document = reader.parse_document();

  const GmlItem* graph_item = nullptr;
  for (const auto& item : document) {
    if (item.key == "graph" && item.kind == GmlItem::Kind::list) {
      graph_item = &item;
      break;
    }
  }
  if (!graph_item) throw DataError(std::string(source) + ": no 'graph [ ... ]' record");

  GmlGraph graph;
  std::set<long long> ids;
  for (const auto& item : graph_item->children) {
    if (item.key == "directed") {
      graph.directed = integer_of(item, source) != 0;
    } else if (item.key == "node" && item.kind == GmlItem::Kind::list) {
      GmlNodeRecord node;
      node.where = item.where;
      bool have_id = false;
      for (const auto& field : item.children) {
        if (field.key == "id") {
          node.id = integer_of(field, source);
          have_id = true;
        } else if (field.key == "label") {
          node.label = value_text(field);
        } else if (field.key == "value") {
          node.value = value_text(field);
        }
      }
      if (!have_id) throw DataError(position_prefix(source, item.where) + "node without id");
      if (!ids.insert(node.id).second) {
        throw DataError(position_prefix(source, item.where) + "duplicate node id " + std::to_string(node.id));
      }
      if (node.label.empty()) node.label = std::to_string(node.id);
      graph.nodes.push_back(std::move(node));
    } else if (item.key == "edge" && item.kind == GmlItem::Kind::list) {
      GmlEdgeRecord edge;
      edge.where = item.where;
      bool have_source = false, have_target = false;
      for (const auto& field : item.children) {
        if (field.key == "source") {
          edge.source = integer_of(field, source);
          have_source = true;
        } else if (field.key == "target") {
          edge.target = integer_of(field, source);
          have_target = true;
        } else if ((field.key == "weight" || field.key == "value") &&
                   field.kind == GmlItem::Kind::number) {
          std::from_chars(field.text.data(), field.text.data() + field.text.size(), edge.weight);
          if (!(edge.weight >= 0.0)) {
            throw InvalidWeightError(position_prefix(source, field.where) + "negative edge weight");
          }
        }
      }
      if (!have_source || !have_target) {
        throw DataError(position_prefix(source, item.where) + "edge needs source and target");
      }
      graph.edges.push_back(edge);
    }
  }
  return graph;
}

constexpr std::string_view independents = "Independents";

}  // namespace

LayeredGraph parse_gml(std::istream& in, const GmlOptions& options, std::string_view source) {
  const GmlGraph gml = read_gml(in, source);

  LayeredGraph graph(gml.directed);
  const std::size_t teams = graph.add_layer(options.team_layer);
  std::unordered_map<long long, NodeRef> by_id;
  std::set<std::string> labels;
  for (const auto& node : gml.nodes) {
    if (!labels.insert(node.label).second) {
      throw DataError(position_prefix(source, node.where) + "duplicate label '" + node.label + "'");
    }
    by_id.emplace(node.id, graph.add_node(teams, node.label));
  }

  std::set<std::pair<long long, long long>> seen;
  for (const auto& edge : gml.edges) {
    auto src = by_id.find(edge.source);
    auto dst = by_id.find(edge.target);
    if (src == by_id.end() || dst == by_id.end()) {
      throw DataError(position_prefix(source, edge.where) + "edge references unknown node id");
    }
    auto key = gml.directed ? std::pair{edge.source, edge.target}
                            : std::pair{std::min(edge.source, edge.target),
                                        std::max(edge.source, edge.target)};
    if (!seen.insert(key).second) {
      throw DuplicateEdgeError(position_prefix(source, edge.where) + "duplicate edge " +
                               src->second.label + " -- " + dst->second.label);
    }
    graph.add_edge(src->second, dst->second, edge.weight);
  }

  if (!options.synthesize_conferences) return graph;

  const bool any_value = std::any_of(gml.nodes.begin(), gml.nodes.end(),
                                     [](const auto& node) { return node.value.has_value(); });
  if (!any_value) {
    throw DataError(std::string(source) +
                    ": conference synthesis needs node 'value' fields; rerun without it for a "
                    "unipartite graph");
  }
  const std::size_t conferences = graph.add_layer(options.conference_layer);
  std::map<std::string, NodeRef> conference_nodes;
  for (const auto& node : gml.nodes) {
    const std::string name = "conference_" + node.value.value_or(std::string(independents));
    auto it = conference_nodes.find(name);
    if (it == conference_nodes.end()) {
      if (labels.contains(name)) throw DataError("team label '" + name + "' clashes with a conference");
      it = conference_nodes.emplace(name, graph.add_node(conferences, name)).first;
    }
    graph.add_edge(by_id.at(node.id), it->second);
  }
  return graph;
}

LayeredGraph load_gml_subset(const std::filesystem::path& path, const GmlOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "' for reading");
  return parse_gml(in, options, path.string());
}

Partition parse_gml_partition(std::istream& in, std::string_view source) {
  const GmlGraph gml = read_gml(in, source);
  std::vector<std::string> labels;
  std::vector<std::size_t> assignment;
  std::map<std::string, std::size_t> ids;
  for (const auto& node : gml.nodes) {
    const std::string value = node.value.value_or(std::string(independents));
    auto it = ids.emplace(value, ids.size()).first;
    labels.push_back(node.label);
    assignment.push_back(it->second);
  }
  return Partition(std::move(labels), assignment);
}

Partition load_gml_partition(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "' for reading");
  return parse_gml_partition(in, path.string());
}

}  // namespace hetnet
