#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <utility>
#include <vector>

#include "amos/common.hpp"

namespace amos {

/// One undirected edge. Canonical form after graph construction: u < v.
struct Edge {
    int u = 0;
    int v = 0;
    double w = 1.0;
};

/// Ordered list of distinct node indices, used to address clusters.
using NodeSet = std::vector<int>;

/// Undirected weighted graph, immutable after construction. Weights are
/// strictly positive, there are no self-loops, and symmetry is structural:
/// each edge is stored once as (u < v) and mirrored in both adjacency rows.
class Graph {
public:
    Graph() = default;

    /// Validates and canonicalizes the edge set. Throws DataError on
    /// self-loops, non-positive weights, out-of-range endpoints or
    /// duplicate edges.
    static Graph from_edges(int node_count, std::vector<Edge> edges);

    int node_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    /// Edges in canonical (u, v) lexicographic order.
    const std::vector<Edge>& edges() const { return edges_; }

    /// Neighbors of u as (node, weight) pairs, sorted by node.
    const std::vector<std::pair<int, double>>& neighbors(int u) const { return adj_[u]; }

    /// Weight of edge (u, v); 0 when the edge is absent.
    double weight(int u, int v) const;

    /// Weighted degree of u.
    double degree(int u) const { return degree_[u]; }

    const std::vector<double>& degrees() const { return degree_; }

    double max_degree() const;

    /// Sum of all edge weights (each undirected edge counted once).
    double total_weight() const { return total_weight_; }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<int, double>>> adj_;
    std::vector<double> degree_;
    double total_weight_ = 0.0;
};

/// Symmetric degree normalization: w'(u,v) = w(u,v) / sqrt(d_u d_v) where
/// d is the weighted degree. Topology is unchanged. Throws DataError if
/// any node is isolated.
Graph degree_normalize(const Graph& g);

/// Unnormalized graph Laplacian L = diag(degrees) - W as a sparse
/// symmetric matrix. Row sums are exactly zero.
Eigen::SparseMatrix<double> laplacian(const Graph& g);

struct Components {
    int count = 0;
    std::vector<int> labels;
};

Components connected_components(const Graph& g);

/// Induced subgraph on `nodes`, reindexed to 0..|nodes|-1 in the given
/// order. Throws DataError on out-of-range or duplicate indices.
Graph subgraph(const Graph& g, const NodeSet& nodes);

struct Interconnection {
    Eigen::MatrixXd binary; ///< 1 iff an edge joins row node and column node
    Eigen::MatrixXd weight; ///< corresponding edge weights (0 when absent)
};

/// |a| x |b| interconnection matrices between two disjoint node sets.
/// Rows follow the order of `a`, columns the order of `b`.
Interconnection interconnection_matrix(const Graph& g, const NodeSet& a, const NodeSet& b);

} // namespace amos
