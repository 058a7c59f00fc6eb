#include "amos/rim_gen.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace amos {

namespace {

constexpr int kConnectivityRetries = 100;

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
    int components() {
        int c = 0;
        for (int i = 0; i < static_cast<int>(parent.size()); ++i)
            if (find(i) == i) ++c;
        return c;
    }
};

bool edges_connected(int n, const std::vector<Edge>& edges) {
    if (n <= 1) return true;
    UnionFind uf(n);
    for (const auto& e : edges) uf.unite(e.u, e.v);
    return uf.components() == 1;
}

std::vector<Edge> sample_internal(const InternalRecipe& recipe, int size,
                                  rng::Stream& stream) {
    std::vector<Edge> edges;
    switch (recipe.kind) {
    case InternalRecipe::Kind::complete:
        for (int u = 0; u < size; ++u)
            for (int v = u + 1; v < size; ++v) edges.push_back({u, v, 1.0});
        break;
    case InternalRecipe::Kind::path:
        for (int u = 0; u + 1 < size; ++u) edges.push_back({u, u + 1, 1.0});
        break;
    case InternalRecipe::Kind::erdos_renyi:
        for (int u = 0; u < size; ++u)
            for (int v = u + 1; v < size; ++v)
                if (stream.bernoulli(recipe.p_in)) edges.push_back({u, v, 1.0});
        break;
    case InternalRecipe::Kind::custom:
        edges = recipe.edges;
        break;
    }
    return edges;
}

} // namespace

RimSpec RimSpec::homogeneous(std::vector<int> sizes, InternalRecipe recipe, double cross_p,
                             double weight_mean, WeightDistribution dist,
                             std::uint64_t seed) {
    RimSpec spec;
    const int k = static_cast<int>(sizes.size());
    spec.sizes = std::move(sizes);
    spec.internal.assign(k, recipe);
    spec.cross_p = Eigen::MatrixXd::Constant(k, k, cross_p);
    spec.weight_mean = Eigen::MatrixXd::Constant(k, k, weight_mean);
    spec.weight_dist = dist;
    spec.seed = seed;
    return spec;
}

int RimSpec::node_count() const {
    int n = 0;
    for (int s : sizes) n += s;
    return n;
}

bool RimSpec::is_homogeneous() const {
    const int k = cluster_count();
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (cross_p(i, j) != cross_p(0, 1) || weight_mean(i, j) != weight_mean(0, 1))
                return false;
    return true;
}

void RimSpec::validate() const {
    const int k = cluster_count();
    if (k < 1) throw DataError("rim spec: needs at least one cluster");
    for (int s : sizes)
        if (s < 1) throw DataError("rim spec: cluster sizes must be >= 1");
    if (static_cast<int>(internal.size()) != k)
        throw DataError("rim spec: internal recipe count does not match cluster count");
    if (cross_p.rows() != k || cross_p.cols() != k)
        throw DataError("rim spec: cross_p must be K x K");
    if (weight_mean.rows() != k || weight_mean.cols() != k)
        throw DataError("rim spec: weight_mean must be K x K");
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            const double p = cross_p(i, j);
            if (p != cross_p(j, i)) throw DataError("rim spec: cross_p must be symmetric");
            if (p < 0.0 || p > 1.0)
                throw DataError("rim spec: cross_p entries must lie in [0, 1]");
            const double w = weight_mean(i, j);
            if (w < 0.0) throw DataError("rim spec: weight means must be nonnegative");
            if (p > 0.0 && w <= 0.0)
                throw DataError("rim spec: pair (" + std::to_string(i) + ", " +
                                std::to_string(j) +
                                ") has positive probability but zero mean weight");
        }
    }
    for (int c = 0; c < k; ++c) {
        const auto& r = internal[c];
        if (r.kind == InternalRecipe::Kind::erdos_renyi &&
            (r.p_in <= 0.0 || r.p_in > 1.0))
            throw DataError("rim spec: erdos_renyi p_in must lie in (0, 1]");
        if (r.kind == InternalRecipe::Kind::custom) {
            for (const auto& e : r.edges)
                if (e.u < 0 || e.v < 0 || e.u >= sizes[c] || e.v >= sizes[c])
                    throw DataError("rim spec: custom edge out of range in cluster " +
                                    std::to_string(c));
            if (!edges_connected(sizes[c], r.edges))
                throw DataError("rim spec: custom internal graph of cluster " +
                                std::to_string(c) + " is not connected");
        }
    }
}

RimSample generate_rim(const RimSpec& spec) {
    spec.validate();
    const int k = spec.cluster_count();
    std::vector<int> offsets(k + 1, 0);
    for (int c = 0; c < k; ++c) offsets[c + 1] = offsets[c] + spec.sizes[c];
    const int n = offsets[k];

    std::vector<Edge> edges;
    for (int c = 0; c < k; ++c) {
        rng::Stream stream(rng::mix(spec.seed, {0x1e7e24a1u, static_cast<std::uint64_t>(c)}));
        std::vector<Edge> internal;
        bool ok = false;
        for (int attempt = 0; attempt < kConnectivityRetries; ++attempt) {
            internal = sample_internal(spec.internal[c], spec.sizes[c], stream);
            if (edges_connected(spec.sizes[c], internal)) {
                ok = true;
                break;
            }
            if (spec.internal[c].kind != InternalRecipe::Kind::erdos_renyi) break;
        }
        if (!ok)
            throw DataError("generate_rim: cluster " + std::to_string(c) +
                            " did not come out connected after " +
                            std::to_string(kConnectivityRetries) + " attempts");
        for (const auto& e : internal)
            edges.push_back({e.u + offsets[c], e.v + offsets[c], e.w});
    }

    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            const double p = spec.cross_p(i, j);
            if (p <= 0.0) continue;
            const double mean = spec.weight_mean(i, j);
            rng::Stream stream(rng::mix(
                spec.seed, {0xc2055u, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)}));
            for (int u = 0; u < spec.sizes[i]; ++u) {
                for (int v = 0; v < spec.sizes[j]; ++v) {
                    if (!stream.bernoulli(p)) continue;
                    const double w = spec.weight_dist == WeightDistribution::constant
                                         ? mean
                                         : stream.exponential(mean);
                    edges.push_back({u + offsets[i], v + offsets[j], w});
                }
            }
        }
    }

    RimSample sample;
    sample.graph = Graph::from_edges(n, std::move(edges));
    sample.labels.resize(n);
    for (int c = 0; c < k; ++c)
        for (int u = offsets[c]; u < offsets[c + 1]; ++u) sample.labels[u] = c;
    return sample;
}

double empirical_t(const Graph& g, const std::vector<int>& labels) {
    if (static_cast<int>(labels.size()) != g.node_count())
        throw DataError("empirical_t: label count does not match node count");
    int k = 0;
    std::vector<long long> sizes;
    for (int l : labels) {
        if (l < 0) throw DataError("empirical_t: negative label");
        k = std::max(k, l + 1);
    }
    sizes.assign(k, 0);
    for (int l : labels) ++sizes[l];

    long long cross_slots = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) cross_slots += sizes[i] * sizes[j];
    if (cross_slots == 0) return 0.0;

    long long cross_edges = 0;
    double cross_weight = 0.0;
    for (const auto& e : g.edges()) {
        if (labels[e.u] != labels[e.v]) {
            ++cross_edges;
            cross_weight += e.w;
        }
    }
    if (cross_edges == 0) return 0.0;
    const double density = static_cast<double>(cross_edges) / static_cast<double>(cross_slots);
    const double mean_weight = cross_weight / static_cast<double>(cross_edges);
    return density * mean_weight;
}

namespace {

InternalRecipe recipe_from_json(const nlohmann::json& j) {
    InternalRecipe r;
    if (j.is_string()) {
        const std::string kind = j.get<std::string>();
        if (kind == "complete")
            r.kind = InternalRecipe::Kind::complete;
        else if (kind == "path")
            r.kind = InternalRecipe::Kind::path;
        else
            throw DataError("rim spec: unknown internal recipe '" + kind + "'");
        return r;
    }
    const std::string kind = j.at("type").get<std::string>();
    if (kind == "complete") {
        r.kind = InternalRecipe::Kind::complete;
    } else if (kind == "path") {
        r.kind = InternalRecipe::Kind::path;
    } else if (kind == "erdos_renyi") {
        r.kind = InternalRecipe::Kind::erdos_renyi;
        r.p_in = j.at("p_in").get<double>();
    } else if (kind == "custom") {
        r.kind = InternalRecipe::Kind::custom;
        for (const auto& e : j.at("edges")) {
            Edge edge;
            edge.u = e.at(0).get<int>();
            edge.v = e.at(1).get<int>();
            edge.w = e.size() > 2 ? e.at(2).get<double>() : 1.0;
            r.edges.push_back(edge);
        }
    } else {
        throw DataError("rim spec: unknown internal recipe '" + kind + "'");
    }
    return r;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, int k, const char* what) {
    if (j.is_number())
        return Eigen::MatrixXd::Constant(k, k, j.get<double>());
    if (!j.is_array() || static_cast<int>(j.size()) != k)
        throw DataError(std::string("rim spec: ") + what + " must be a scalar or K x K array");
    Eigen::MatrixXd m(k, k);
    for (int i = 0; i < k; ++i) {
        if (static_cast<int>(j.at(i).size()) != k)
            throw DataError(std::string("rim spec: ") + what + " row " + std::to_string(i) +
                            " has wrong length");
        for (int c = 0; c < k; ++c) m(i, c) = j.at(i).at(c).get<double>();
    }
    return m;
}

} // namespace

RimSpec rim_spec_from_json(const nlohmann::json& j) {
    RimSpec spec;
    try {
        spec.sizes = j.at("sizes").get<std::vector<int>>();
        const int k = spec.cluster_count();
        if (k < 1) throw DataError("rim spec: sizes must be nonempty");

        if (j.contains("internal")) {
            const auto& internal = j.at("internal");
            if (internal.is_array() && !internal.empty() &&
                (internal.at(0).is_object() || internal.at(0).is_string())) {
                for (const auto& r : internal) spec.internal.push_back(recipe_from_json(r));
                if (static_cast<int>(spec.internal.size()) != k)
                    throw DataError("rim spec: internal recipe list length must equal K");
            } else {
                spec.internal.assign(k, recipe_from_json(internal));
            }
        } else {
            spec.internal.assign(k, InternalRecipe{});
        }

        spec.cross_p = j.contains("cross_p") ? matrix_from_json(j.at("cross_p"), k, "cross_p")
                                             : Eigen::MatrixXd::Zero(k, k);
        if (j.contains("weight")) {
            const auto& w = j.at("weight");
            spec.weight_mean = matrix_from_json(w.at("mean"), k, "weight mean");
            const std::string dist =
                w.contains("distribution") ? w.at("distribution").get<std::string>() : "constant";
            if (dist == "constant")
                spec.weight_dist = WeightDistribution::constant;
            else if (dist == "exponential")
                spec.weight_dist = WeightDistribution::exponential;
            else
                throw DataError("rim spec: unknown weight distribution '" + dist + "'");
        } else {
            spec.weight_mean = Eigen::MatrixXd::Constant(k, k, 1.0);
        }
        spec.seed = j.value("seed", 0ULL);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("rim spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

} // namespace amos
