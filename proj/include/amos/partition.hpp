#pragma once

#include <vector>

#include "amos/graph.hpp"

namespace amos {

/// A hard clustering of the nodes of a graph together with the per-cluster
/// counts the reliability tests consume. Every cluster is nonempty and ids
/// are contiguous in [0, k).
struct Partition {
    std::vector<int> labels;
    int k = 0;
    std::vector<int> sizes;
    std::vector<long long> within_edges;  ///< edge count inside each cluster
    std::vector<double> within_weight;    ///< total edge weight inside each cluster
    std::vector<NodeSet> members;         ///< node ids per cluster, ascending

    static Partition from_labels(const Graph& g, std::vector<int> labels);

    int max_size() const;
    int min_size() const;
    long long total_within_edges() const;
};

} // namespace amos
