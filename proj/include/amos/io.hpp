#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "amos/graph.hpp"

namespace amos {

enum class GraphFormat { edge_list, matrix_market };
enum class Indexing { zero_based, one_based };

/// Parses an edge list ("u v" or "u v w" per line, '#' comments) or a
/// MatrixMarket coordinate/symmetric file. MatrixMarket indices are
/// one-based by definition and the indexing argument is ignored for it.
/// Throws DataError with a line number on malformed input.
Graph load_graph(std::istream& in, GraphFormat format,
                 Indexing indexing = Indexing::zero_based);

Graph load_graph_file(const std::string& path, GraphFormat format,
                      Indexing indexing = Indexing::zero_based);

/// Writes one "u v w" line per edge in canonical order ("u v" when all
/// weights are 1).
void write_edge_list(std::ostream& out, const Graph& g);

/// One integer label per line.
std::vector<int> load_labels(std::istream& in);
std::vector<int> load_labels_file(const std::string& path);
void write_labels(std::ostream& out, const std::vector<int>& labels);

/// Copy of g with every edge weight set to 1.
Graph binarize(const Graph& g);

} // namespace amos
