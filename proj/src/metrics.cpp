#include "amos/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace amos {

namespace {

void check_lengths(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size())
        throw DataError("label vectors have different lengths: " +
                        std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    if (a.empty()) throw DataError("empty label vectors");
    for (int l : a)
        if (l < 0) throw DataError("negative cluster label");
    for (int l : b)
        if (l < 0) throw DataError("negative cluster label");
}

long long pairs_of(long long c) { return c * (c - 1) / 2; }

} // namespace

ContingencyTable ContingencyTable::build(const std::vector<int>& a,
                                         const std::vector<int>& b) {
    check_lengths(a, b);
    ContingencyTable t;
    t.n = static_cast<long long>(a.size());
    t.k_a = *std::max_element(a.begin(), a.end()) + 1;
    t.k_b = *std::max_element(b.begin(), b.end()) + 1;
    t.counts.assign(t.k_a, std::vector<long long>(t.k_b, 0));
    t.row_sums.assign(t.k_a, 0);
    t.col_sums.assign(t.k_b, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++t.counts[a[i]][b[i]];
        ++t.row_sums[a[i]];
        ++t.col_sums[b[i]];
    }
    return t;
}

double nmi(const std::vector<int>& a, const std::vector<int>& b) {
    const ContingencyTable t = ContingencyTable::build(a, b);
    const double n = static_cast<double>(t.n);
    double h_a = 0.0, h_b = 0.0, mi = 0.0;
    for (long long r : t.row_sums)
        if (r > 0) h_a -= (r / n) * std::log(r / n);
    for (long long c : t.col_sums)
        if (c > 0) h_b -= (c / n) * std::log(c / n);
    for (int i = 0; i < t.k_a; ++i) {
        for (int j = 0; j < t.k_b; ++j) {
            const long long c = t.counts[i][j];
            if (c > 0)
                mi += (c / n) * std::log(c * n / (static_cast<double>(t.row_sums[i]) *
                                                  static_cast<double>(t.col_sums[j])));
        }
    }
    if (h_a + h_b == 0.0) return 1.0; // both are one single cluster
    return std::clamp(2.0 * mi / (h_a + h_b), 0.0, 1.0);
}

double rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    const ContingencyTable t = ContingencyTable::build(a, b);
    if (t.n < 2) throw DataError("rand_index needs at least two nodes");
    long long together = 0, pairs_a = 0, pairs_b = 0;
    for (const auto& row : t.counts)
        for (long long c : row) together += pairs_of(c);
    for (long long r : t.row_sums) pairs_a += pairs_of(r);
    for (long long c : t.col_sums) pairs_b += pairs_of(c);
    const long long total = pairs_of(t.n);
    const long long agree = total + 2 * together - pairs_a - pairs_b;
    return static_cast<double>(agree) / static_cast<double>(total);
}

double f_measure(const std::vector<int>& a, const std::vector<int>& truth) {
    const ContingencyTable t = ContingencyTable::build(a, truth);
    long long tp = 0, pairs_a = 0, pairs_truth = 0;
    for (const auto& row : t.counts)
        for (long long c : row) tp += pairs_of(c);
    for (long long r : t.row_sums) pairs_a += pairs_of(r);
    for (long long c : t.col_sums) pairs_truth += pairs_of(c);
    if (pairs_a == 0 && pairs_truth == 0) return 1.0; // both all-singleton
    if (pairs_a == 0 || pairs_truth == 0) return 0.0;
    const double precision = static_cast<double>(tp) / static_cast<double>(pairs_a);
    const double recall = static_cast<double>(tp) / static_cast<double>(pairs_truth);
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

namespace {

struct CutVolume {
    std::vector<double> cut;
    std::vector<double> volume;
    double total_volume = 0.0;
    int k = 0;
};

CutVolume cut_volume(const Graph& g, const std::vector<int>& labels) {
    if (static_cast<int>(labels.size()) != g.node_count())
        throw DataError("label vector length does not match node count");
    CutVolume cv;
    for (int l : labels) {
        if (l < 0) throw DataError("negative cluster label");
        cv.k = std::max(cv.k, l + 1);
    }
    cv.cut.assign(cv.k, 0.0);
    cv.volume.assign(cv.k, 0.0);
    for (int u = 0; u < g.node_count(); ++u) cv.volume[labels[u]] += g.degree(u);
    for (const auto& e : g.edges()) {
        if (labels[e.u] != labels[e.v]) {
            cv.cut[labels[e.u]] += e.w;
            cv.cut[labels[e.v]] += e.w;
        }
    }
    cv.total_volume = 2.0 * g.total_weight();
    return cv;
}

} // namespace

ClusterQuality conductance(const Graph& g, const std::vector<int>& labels) {
    const CutVolume cv = cut_volume(g, labels);
    ClusterQuality q;
    q.per_cluster.resize(cv.k);
    for (int c = 0; c < cv.k; ++c) {
        const double denom = std::min(cv.volume[c], cv.total_volume - cv.volume[c]);
        if (denom <= 0.0)
            throw DataError("conductance undefined: cluster " + std::to_string(c) +
                            " has zero volume on one side of the cut");
        q.per_cluster[c] = cv.cut[c] / denom;
    }
    q.max = *std::max_element(q.per_cluster.begin(), q.per_cluster.end());
    double sum = 0.0;
    for (double v : q.per_cluster) sum += v;
    q.average = sum / cv.k;
    return q;
}

ClusterQuality normalized_cut(const Graph& g, const std::vector<int>& labels) {
    const CutVolume cv = cut_volume(g, labels);
    ClusterQuality q;
    q.per_cluster.resize(cv.k);
    for (int c = 0; c < cv.k; ++c) {
        if (cv.volume[c] <= 0.0)
            throw DataError("normalized cut undefined: cluster " + std::to_string(c) +
                            " has zero volume");
        q.per_cluster[c] = cv.cut[c] / cv.volume[c];
    }
    q.max = *std::max_element(q.per_cluster.begin(), q.per_cluster.end());
    double sum = 0.0;
    for (double v : q.per_cluster) sum += v;
    q.average = sum / cv.k;
    return q;
}

} // namespace amos
