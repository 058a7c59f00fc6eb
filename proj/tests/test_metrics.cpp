#include <doctest.h>

#include <cmath>

#include "amos/metrics.hpp"
#include "oracles.hpp"

using namespace amos;

namespace {

Graph bridge_cliques() {
    // two triangles joined by one unit edge
    std::vector<Edge> edges;
    for (int u = 0; u < 3; ++u)
        for (int v = u + 1; v < 3; ++v) {
            edges.push_back({u, v, 1.0});
            edges.push_back({u + 3, v + 3, 1.0});
        }
    edges.push_back({0, 3, 1.0});
    return Graph::from_edges(6, std::move(edges));
}

Graph complete(int n) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
    return Graph::from_edges(n, std::move(edges));
}

} // namespace

TEST_CASE("nmi") {
    CHECK(nmi({0, 0, 1, 1}, {1, 1, 0, 0}) == doctest::Approx(1.0));
    CHECK(nmi({0, 1, 2, 3}, {0, 0, 0, 0}) == doctest::Approx(0.0));
    SUBCASE("hand-computed 6-point contingency value") {
        const std::vector<int> a = {0, 0, 0, 1, 1, 1};
        const std::vector<int> b = {0, 0, 1, 1, 2, 2};
        // I = (2/3) ln 2, H_a = ln 2, H_b = ln 3
        const double expected =
            2.0 * (2.0 / 3.0) * std::log(2.0) / (std::log(2.0) + std::log(3.0));
        CHECK(nmi(a, b) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(nmi(a, b) == doctest::Approx(0.51580374).epsilon(1e-6));
    }
    SUBCASE("both single-cluster labelings score 1") {
        CHECK(nmi({0, 0, 0}, {0, 0, 0}) == 1.0);
    }
    SUBCASE("matches the entropy oracle on random labelings") {
        std::mt19937_64 eng(4);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<int> a(12), b(12);
            for (auto& x : a) x = static_cast<int>(eng() % 3);
            for (auto& x : b) x = static_cast<int>(eng() % 4);
            CHECK(nmi(a, b) ==
                  doctest::Approx(std::clamp(oracle::nmi(a, b), 0.0, 1.0)).epsilon(1e-10));
        }
    }
    CHECK_THROWS_AS(nmi({0, 1}, {0, 1, 2}), DataError);
}

TEST_CASE("rand index") {
    CHECK(rand_index({0, 1, 0, 1}, {1, 0, 1, 0}) == 1.0);
    CHECK(rand_index({0, 0, 0, 0}, {0, 1, 2, 3}) == 0.0);
    CHECK(rand_index({0, 0, 1, 1}, {0, 1, 0, 1}) == doctest::Approx(2.0 / 6.0));
}

TEST_CASE("f-measure") {
    CHECK(f_measure({0, 0, 1, 1}, {1, 1, 0, 0}) == 1.0);
    SUBCASE("disjoint pair sets score 0") {
        CHECK(f_measure({0, 0, 1, 1}, {0, 1, 0, 1}) == 0.0);
    }
    SUBCASE("hand-enumerated precision 1/2, recall 1/3") {
        CHECK(f_measure({0, 0, 1, 1}, {0, 0, 0, 1}) == doctest::Approx(0.4));
    }
    SUBCASE("all-singleton prediction scores 0 against grouped truth") {
        CHECK(f_measure({0, 1, 2, 3}, {0, 0, 1, 1}) == 0.0);
    }
    SUBCASE("identical all-singleton labelings score 1") {
        CHECK(f_measure({0, 1, 2}, {2, 1, 0}) == 1.0);
    }
}

TEST_CASE("pair metrics agree with brute-force enumeration on all small partitions") {
    const auto partitions = oracle::all_partitions(6, 3);
    for (const auto& a : partitions) {
        for (std::size_t step = 0; step < partitions.size(); step += 17) {
            const auto& b = partitions[step];
            CHECK(rand_index(a, b) == doctest::Approx(oracle::rand_index(a, b)).epsilon(1e-12));
            CHECK(f_measure(a, b) == doctest::Approx(oracle::f_measure(a, b)).epsilon(1e-12));
        }
    }
}

TEST_CASE("conductance") {
    SUBCASE("two disjoint cliques as two clusters have conductance 0") {
        std::vector<Edge> edges;
        for (int u = 0; u < 3; ++u)
            for (int v = u + 1; v < 3; ++v) {
                edges.push_back({u, v, 1.0});
                edges.push_back({u + 3, v + 3, 1.0});
            }
        const Graph g = Graph::from_edges(6, std::move(edges));
        const ClusterQuality q = conductance(g, {0, 0, 0, 1, 1, 1});
        CHECK(q.average == 0.0);
        CHECK(q.max == 0.0);
    }
    SUBCASE("single whole-graph cluster is undefined") {
        CHECK_THROWS_AS(conductance(bridge_cliques(), {0, 0, 0, 0, 0, 0}), DataError);
    }
    SUBCASE("bridged triangles split at the bridge: 1/7") {
        const ClusterQuality q = conductance(bridge_cliques(), {0, 0, 0, 1, 1, 1});
        CHECK(q.average == doctest::Approx(1.0 / 7.0));
        CHECK(q.per_cluster[0] == doctest::Approx(1.0 / 7.0));
        CHECK(q.per_cluster[1] == doctest::Approx(1.0 / 7.0));
    }
}

TEST_CASE("normalized cut") {
    SUBCASE("two disjoint cliques score 0") {
        std::vector<Edge> edges;
        for (int u = 0; u < 4; ++u)
            for (int v = u + 1; v < 4; ++v) {
                edges.push_back({u, v, 1.0});
                edges.push_back({u + 4, v + 4, 1.0});
            }
        const Graph g = Graph::from_edges(8, std::move(edges));
        CHECK(normalized_cut(g, {0, 0, 0, 0, 1, 1, 1, 1}).average == 0.0);
    }
    SUBCASE("K4 split in half: per-cluster 4/6, average 2/3") {
        // each side: 1 internal edge, 4 cut edges, volume 2*3 = 6
        const auto [cut, vol] = oracle::cut_and_volume(complete(4), {0, 0, 1, 1});
        CHECK(cut[0] == 4.0);
        CHECK(vol[0] == 6.0);
        const ClusterQuality q = normalized_cut(complete(4), {0, 0, 1, 1});
        CHECK(q.average == doctest::Approx(2.0 / 3.0));
    }
    SUBCASE("all-singleton clusters on an unweighted graph score 1") {
        const Graph g = complete(5);
        const ClusterQuality q = normalized_cut(g, {0, 1, 2, 3, 4});
        CHECK(q.average == doctest::Approx(1.0));
        for (double v : q.per_cluster) CHECK(v == doctest::Approx(1.0));
    }
}

TEST_CASE("cut metrics agree with brute-force counting on random graphs") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const Graph g = oracle::random_graph(20, 0.3, 600 + seed);
        std::mt19937_64 eng(seed);
        std::vector<int> labels(20);
        for (auto& l : labels) l = static_cast<int>(eng() % 3);
        // make sure all three clusters are nonempty
        labels[0] = 0;
        labels[1] = 1;
        labels[2] = 2;
        const auto [cut, vol] = oracle::cut_and_volume(g, labels);
        double total_vol = 0.0;
        for (double v : vol) total_vol += v;
        bool defined = true;
        for (std::size_t c = 0; c < cut.size(); ++c)
            if (vol[c] <= 0.0 || total_vol - vol[c] <= 0.0) defined = false;
        if (!defined) continue;

        const ClusterQuality cond = conductance(g, labels);
        const ClusterQuality nc = normalized_cut(g, labels);
        for (std::size_t c = 0; c < cut.size(); ++c) {
            CHECK(cond.per_cluster[c] ==
                  doctest::Approx(cut[c] / std::min(vol[c], total_vol - vol[c])));
            CHECK(nc.per_cluster[c] == doctest::Approx(cut[c] / vol[c]));
        }
    }
}

TEST_CASE("external metrics are invariant to label permutation") {
    const std::vector<int> a = {0, 0, 1, 1, 2, 2};
    const std::vector<int> a_perm = {2, 2, 0, 0, 1, 1};
    const std::vector<int> b = {0, 1, 1, 2, 2, 0};
    CHECK(nmi(a, b) == doctest::Approx(nmi(a_perm, b)));
    CHECK(rand_index(a, b) == doctest::Approx(rand_index(a_perm, b)));
    CHECK(f_measure(a, b) == doctest::Approx(f_measure(a_perm, b)));
}
