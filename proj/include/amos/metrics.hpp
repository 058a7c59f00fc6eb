#pragma once

#include <vector>

#include "amos/graph.hpp"

namespace amos {

/// Co-occurrence counts between two labelings plus marginals.
struct ContingencyTable {
    int k_a = 0;
    int k_b = 0;
    std::vector<std::vector<long long>> counts; ///< k_a x k_b
    std::vector<long long> row_sums;
    std::vector<long long> col_sums;
    long long n = 0;

    static ContingencyTable build(const std::vector<int>& a, const std::vector<int>& b);
};

/// Mutual information normalized by the arithmetic mean of the two
/// entropies; 1 when both labelings are the same single cluster.
double nmi(const std::vector<int>& a, const std::vector<int>& b);

/// Fraction of node pairs on which two labelings agree (together-together
/// or apart-apart).
double rand_index(const std::vector<int>& a, const std::vector<int>& b);

/// Pairwise F1 of the same-cluster pair sets of `a` against `truth`.
/// When `a` has no same-cluster pairs precision is undefined and F is 0,
/// except that two identical all-singleton labelings score 1.
double f_measure(const std::vector<int>& a, const std::vector<int>& truth);

struct ClusterQuality {
    double average = 0.0;
    double max = 0.0;
    std::vector<double> per_cluster;
};

/// Per-cluster cut / min(volume inside, volume outside), averaged over
/// clusters. Throws DataError when some cluster has zero volume on either
/// side (e.g. a single cluster covering a whole connected graph).
ClusterQuality conductance(const Graph& g, const std::vector<int>& labels);

/// Per-cluster cut / volume, averaged over clusters.
ClusterQuality normalized_cut(const Graph& g, const std::vector<int>& labels);

} // namespace amos
