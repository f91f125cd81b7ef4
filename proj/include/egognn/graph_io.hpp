#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "egognn/graph.hpp"

namespace egognn {

enum class GraphFormat { json, tsv };

// Picks tsv for .tsv/.txt/.edges, json otherwise.
GraphFormat format_from_path(const std::filesystem::path& path);
GraphFormat parse_graph_format(std::string_view name);

// JSON: {"n": int, "edges": [[u,v],...], "features": [[...],...], "labels": [...]}
// with u < v and every pair listed once.
//
// TSV: a "# n=<int>" header line, then "u<TAB>v" per edge. Features and
// labels live next to the edge file as <stem>.features.csv and
// <stem>.labels.csv (row i = node i).
Graph load_graph(const std::filesystem::path& path, GraphFormat format);
Graph load_graph(const std::filesystem::path& path);
void save_graph(const Graph& g, const std::filesystem::path& path, GraphFormat format);

Graph parse_graph_json(std::string_view text);
std::string dump_graph_json(const Graph& g);

std::filesystem::path features_sidecar(const std::filesystem::path& edge_file);
std::filesystem::path labels_sidecar(const std::filesystem::path& edge_file);

} // namespace egognn
