#include "amos/partition.hpp"

#include <algorithm>
#include <string>

namespace amos {

Partition Partition::from_labels(const Graph& g, std::vector<int> labels) {
    const int n = g.node_count();
    if (static_cast<int>(labels.size()) != n)
        throw DataError("partition has " + std::to_string(labels.size()) +
                        " labels for " + std::to_string(n) + " nodes");
    int k = 0;
    for (int l : labels) {
        if (l < 0) throw DataError("negative cluster label");
        k = std::max(k, l + 1);
    }
    if (k == 0) throw DataError("empty partition");

    Partition p;
    p.k = k;
    p.sizes.assign(k, 0);
    p.within_edges.assign(k, 0);
    p.within_weight.assign(k, 0.0);
    p.members.assign(k, {});
    for (int u = 0; u < n; ++u) {
        ++p.sizes[labels[u]];
        p.members[labels[u]].push_back(u);
    }
    for (int c = 0; c < k; ++c)
        if (p.sizes[c] == 0)
            throw DataError("cluster " + std::to_string(c) + " is empty");
    for (const auto& e : g.edges()) {
        if (labels[e.u] == labels[e.v]) {
            ++p.within_edges[labels[e.u]];
            p.within_weight[labels[e.u]] += e.w;
        }
    }
    p.labels = std::move(labels);
    return p;
}

int Partition::max_size() const { return *std::max_element(sizes.begin(), sizes.end()); }

int Partition::min_size() const { return *std::min_element(sizes.begin(), sizes.end()); }

long long Partition::total_within_edges() const {
    long long total = 0;
    for (long long m : within_edges) total += m;
    return total;
}

} // namespace amos
