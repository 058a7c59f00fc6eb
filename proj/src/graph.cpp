#include "amos/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace amos {

Graph Graph::from_edges(int node_count, std::vector<Edge> edges) {
    if (node_count < 0) throw DataError("negative node count");
    for (auto& e : edges) {
        if (e.u == e.v)
            throw DataError("self-loop on node " + std::to_string(e.u));
        if (e.u < 0 || e.v < 0 || e.u >= node_count || e.v >= node_count)
            throw DataError("edge endpoint out of range: (" + std::to_string(e.u) +
                            ", " + std::to_string(e.v) + ")");
        if (!(e.w > 0.0))
            throw DataError("non-positive weight on edge (" + std::to_string(e.u) +
                            ", " + std::to_string(e.v) + ")");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.u < b.u || (a.u == b.u && a.v < b.v);
    });
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v)
            throw DataError("duplicate edge (" + std::to_string(edges[i].u) + ", " +
                            std::to_string(edges[i].v) + ")");
    }

    Graph g;
    g.n_ = node_count;
    g.edges_ = std::move(edges);
    g.adj_.assign(node_count, {});
    g.degree_.assign(node_count, 0.0);
    for (const auto& e : g.edges_) {
        g.adj_[e.u].emplace_back(e.v, e.w);
        g.adj_[e.v].emplace_back(e.u, e.w);
        g.degree_[e.u] += e.w;
        g.degree_[e.v] += e.w;
        g.total_weight_ += e.w;
    }
    for (auto& row : g.adj_) std::sort(row.begin(), row.end());
    return g;
}

double Graph::weight(int u, int v) const {
    if (u == v) return 0.0;
    const auto& row = adj_[u];
    auto it = std::lower_bound(row.begin(), row.end(), v,
                               [](const std::pair<int, double>& p, int key) {
                                   return p.first < key;
                               });
    if (it != row.end() && it->first == v) return it->second;
    return 0.0;
}

double Graph::max_degree() const {
    double m = 0.0;
    for (double d : degree_) m = std::max(m, d);
    return m;
}

Graph degree_normalize(const Graph& g) {
    const int n = g.node_count();
    for (int u = 0; u < n; ++u) {
        if (g.degree(u) <= 0.0)
            throw DataError("degree normalization requires positive degrees; node " +
                            std::to_string(u) + " is isolated");
    }
    std::vector<Edge> edges = g.edges();
    for (auto& e : edges) e.w /= std::sqrt(g.degree(e.u) * g.degree(e.v));
    return Graph::from_edges(n, std::move(edges));
}

Eigen::SparseMatrix<double> laplacian(const Graph& g) {
    const int n = g.node_count();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(2 * g.edge_count() + n);
    for (const auto& e : g.edges()) {
        trip.emplace_back(e.u, e.v, -e.w);
        trip.emplace_back(e.v, e.u, -e.w);
    }
    for (int u = 0; u < n; ++u) trip.emplace_back(u, u, g.degree(u));
    Eigen::SparseMatrix<double> l(n, n);
    l.setFromTriplets(trip.begin(), trip.end());
    return l;
}

Components connected_components(const Graph& g) {
    const int n = g.node_count();
    Components out;
    out.labels.assign(n, -1);
    std::vector<int> stack;
    for (int start = 0; start < n; ++start) {
        if (out.labels[start] >= 0) continue;
        const int comp = out.count++;
        stack.push_back(start);
        out.labels[start] = comp;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (const auto& [v, w] : g.neighbors(u)) {
                (void)w;
                if (out.labels[v] < 0) {
                    out.labels[v] = comp;
                    stack.push_back(v);
                }
            }
        }
    }
    return out;
}

namespace {

std::vector<int> inverse_index(const Graph& g, const NodeSet& nodes, const char* what) {
    std::vector<int> inv(g.node_count(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const int u = nodes[i];
        if (u < 0 || u >= g.node_count())
            throw DataError(std::string(what) + ": node index " + std::to_string(u) +
                            " out of range");
        if (inv[u] >= 0)
            throw DataError(std::string(what) + ": duplicate node index " +
                            std::to_string(u));
        inv[u] = static_cast<int>(i);
    }
    return inv;
}

} // namespace

Graph subgraph(const Graph& g, const NodeSet& nodes) {
    const std::vector<int> inv = inverse_index(g, nodes, "subgraph");
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
        const int iu = inv[e.u], iv = inv[e.v];
        if (iu >= 0 && iv >= 0) edges.push_back({iu, iv, e.w});
    }
    return Graph::from_edges(static_cast<int>(nodes.size()), std::move(edges));
}

Interconnection interconnection_matrix(const Graph& g, const NodeSet& a, const NodeSet& b) {
    const std::vector<int> inv_a = inverse_index(g, a, "interconnection_matrix");
    std::vector<int> inv_b(g.node_count(), -1);
    for (std::size_t j = 0; j < b.size(); ++j) {
        const int u = b[j];
        if (u < 0 || u >= g.node_count())
            throw DataError("interconnection_matrix: node index out of range");
        if (inv_b[u] >= 0) throw DataError("interconnection_matrix: duplicate node index");
        if (inv_a[u] >= 0)
            throw DataError("interconnection_matrix: node sets overlap at node " +
                            std::to_string(u));
        inv_b[u] = static_cast<int>(j);
    }
    Interconnection out;
    out.binary = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(a.size()),
                                       static_cast<Eigen::Index>(b.size()));
    out.weight = Eigen::MatrixXd::Zero(out.binary.rows(), out.binary.cols());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (const auto& [v, w] : g.neighbors(a[i])) {
            const int jb = inv_b[v];
            if (jb >= 0) {
                out.binary(static_cast<Eigen::Index>(i), jb) = 1.0;
                out.weight(static_cast<Eigen::Index>(i), jb) = w;
            }
        }
    }
    return out;
}

} // namespace amos
