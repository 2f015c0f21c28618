#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hetnet/graph_model.hpp"
#include "hetnet/partition.hpp"
#include "hetnet/ranking.hpp"

namespace hetnet {

// Graph file format (UTF-8 text, one record per line, fields separated by
// TABs, or by runs of spaces on lines without a TAB; `#` starts a comment
// line):
//
//   directed: false
//   layers: women	events
//   [nodes]
//   w1	women
//   [edges]
//   w1	e1	1
//
// `layers:` is required and fixes layer order. Node labels must be unique
// across the whole file. The edge weight is optional (default 1).

LayeredGraph parse_graph(std::istream& in, std::string_view source = "<input>");
LayeredGraph load_graph(const std::filesystem::path& path);
void write_graph(const LayeredGraph& graph, std::ostream& out);
void save_graph(const LayeredGraph& graph, const std::filesystem::path& path);

std::vector<std::string> builtin_names();
LayeredGraph load_builtin(std::string_view name);
std::vector<std::string> builtin_partition_names();
Partition load_builtin_partition(std::string_view name);

/// Raw text of the bundled Southern Women incidence table.
std::string_view southern_women_fixture();

struct GmlOptions {
  // Add a conference layer from node `value` fields, one membership edge per team.
  bool synthesize_conferences = true;
  std::string team_layer = "teams";
  std::string conference_layer = "conferences";
};

/// Reads `graph [ node [ id N label "s" value V ] edge [ source N target M ] ]`.
/// Teams without a value join a shared "Independents" conference.
LayeredGraph parse_gml(std::istream& in, const GmlOptions& options = {},
                       std::string_view source = "<input>");
LayeredGraph load_gml_subset(const std::filesystem::path& path, const GmlOptions& options = {});

/// Team labels grouped by their `value` field (missing values: "Independents").
Partition parse_gml_partition(std::istream& in, std::string_view source = "<input>");
Partition load_gml_partition(const std::filesystem::path& path);

/// `label<TAB>community` after a header line, rows sorted by label.
void write_partition(const Partition& partition, std::ostream& out);
void write_partition(const Partition& partition, const std::filesystem::path& path);
Partition parse_partition(std::istream& in, std::string_view source = "<input>");
Partition read_partition(const std::filesystem::path& path);

/// `label,alpha,score,rank,community`, rows sorted by label then alpha.
void write_ranks_csv(const RankTable& table, std::ostream& out);
void write_ranks_csv(const RankTable& table, const std::filesystem::path& path);

/// Shortest decimal form that reads back to the same double.
std::string format_number(double value);

}  // namespace hetnet
