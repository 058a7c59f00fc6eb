#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "amos/rim_gen.hpp"
#include "amos/special_functions.hpp"
#include "amos/stats.hpp"
#include "oracles.hpp"

using namespace amos;

namespace {

Eigen::MatrixXd from_rows(const std::vector<std::vector<int>>& rows) {
    Eigen::MatrixXd m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[0].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

Graph two_cliques(int size, const std::vector<std::pair<int, int>>& cross) {
    std::vector<Edge> edges;
    for (int u = 0; u < size; ++u)
        for (int v = u + 1; v < size; ++v) {
            edges.push_back({u, v, 1.0});
            edges.push_back({u + size, v + size, 1.0});
        }
    for (const auto& [u, v] : cross) edges.push_back({u, v + size, 1.0});
    return Graph::from_edges(2 * size, std::move(edges));
}

std::vector<int> block_labels(const std::vector<int>& sizes) {
    std::vector<int> labels;
    for (std::size_t c = 0; c < sizes.size(); ++c)
        labels.insert(labels.end(), sizes[c], static_cast<int>(c));
    return labels;
}

} // namespace

TEST_CASE("v-test on constant matrices gives p = 1 exactly") {
    CHECK(v_test_pvalue(Eigen::MatrixXd::Zero(4, 5)) == 1.0);
    CHECK(v_test_pvalue(Eigen::MatrixXd::Ones(4, 5)) == 1.0);
}

TEST_CASE("v-test hand-traced 2x3 example") {
    const Eigen::MatrixXd c = from_rows({{1, 1, 0}, {0, 0, 0}});
    const double p = v_test_pvalue(c);
    CHECK(p == doctest::Approx(0.550).epsilon(2e-3));
    CHECK(p == doctest::Approx(oracle::v_test_pvalue({{1, 1, 0}, {0, 0, 0}})).epsilon(1e-14));
}

TEST_CASE("v-test input validation") {
    CHECK_THROWS_AS(v_test_pvalue(Eigen::MatrixXd::Zero(3, 1)), std::invalid_argument);
    Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 3);
    bad(0, 0) = 0.5;
    CHECK_THROWS_AS(v_test_pvalue(bad), std::invalid_argument);
}

TEST_CASE("v-test matches the scalar re-derivation on random matrices") {
    std::mt19937_64 eng(2024);
    auto unit = [&]() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 500; ++trial) {
        const int n_i = 1 + static_cast<int>(eng() % 12);
        const int n_j = 2 + static_cast<int>(eng() % 11);
        const double density = 0.1 + 0.8 * unit();
        std::vector<std::vector<int>> rows(n_i, std::vector<int>(n_j, 0));
        for (auto& r : rows)
            for (auto& x : r) x = unit() < density ? 1 : 0;
        const double lib = v_test_pvalue(from_rows(rows));
        const double ref = oracle::v_test_pvalue(rows);
        CHECK(lib == doctest::Approx(ref).epsilon(1e-12));
        CHECK(lib >= 0.0);
        CHECK(lib <= 1.0);
    }
}

TEST_CASE("v-test is invariant under row permutation") {
    std::mt19937_64 eng(55);
    Eigen::MatrixXd c(6, 7);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 7; ++j) c(i, j) = (eng() % 3) == 0 ? 1.0 : 0.0;
    Eigen::MatrixXd shuffled = c;
    shuffled.row(0).swap(shuffled.row(5));
    shuffled.row(1).swap(shuffled.row(3));
    CHECK(v_test_pvalue(c) == v_test_pvalue(shuffled));
}

TEST_CASE("v-test p-values are approximately uniform under the null") {
    std::mt19937_64 eng(808);
    auto unit = [&]() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; };
    std::vector<double> pvals;
    for (int trial = 0; trial < 500; ++trial) {
        Eigen::MatrixXd c(100, 100);
        for (int i = 0; i < 100; ++i)
            for (int j = 0; j < 100; ++j) c(i, j) = unit() < 0.2 ? 1.0 : 0.0;
        pvals.push_back(v_test_pvalue(c));
    }
    CHECK(oracle::ks_uniform(pvals) <= 0.1);
}

TEST_CASE("pair estimates") {
    SUBCASE("no cross edges") {
        const Graph g = two_cliques(4, {});
        const Partition part = Partition::from_labels(g, block_labels({4, 4}));
        const auto pairs = pair_estimates(g, part);
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0].p_hat == 0.0);
        CHECK(pairs[0].t_hat == 0.0);
        CHECK(pairs[0].p_value == 1.0);
        CHECK_FALSE(pairs[0].has_cross_edges);
        CHECK(pairs[0].w_bar == 1.0);
    }
    SUBCASE("complete bipartite cross connections give p_hat = 1") {
        std::vector<std::pair<int, int>> cross;
        for (int u = 0; u < 3; ++u)
            for (int v = 0; v < 3; ++v) cross.emplace_back(u, v);
        const Graph g = two_cliques(3, cross);
        const Partition part = Partition::from_labels(g, block_labels({3, 3}));
        const auto pairs = pair_estimates(g, part);
        CHECK(pairs[0].p_hat == 1.0);
        CHECK(pairs[0].m_ij == 9);
    }
    SUBCASE("planted density lands within 3 binomial standard deviations") {
        const RimSpec spec = RimSpec::homogeneous({100, 100}, InternalRecipe{}, 0.1, 1.0,
                                                  WeightDistribution::constant, 17);
        const RimSample sample = generate_rim(spec);
        const Partition part =
            Partition::from_labels(sample.graph, sample.labels);
        const auto pairs = pair_estimates(sample.graph, part);
        const double sd = std::sqrt(0.1 * 0.9 / 10000.0);
        CHECK(std::abs(pairs[0].p_hat - 0.1) <= 3.0 * sd);
    }
    SUBCASE("singleton column cluster auto-passes with a flag") {
        const Graph g = Graph::from_edges(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
        const Partition part = Partition::from_labels(g, {0, 0, 0, 1});
        const auto pairs = pair_estimates(g, part);
        CHECK(pairs[0].degenerate_vtest);
        CHECK(pairs[0].p_value == 1.0);
    }
    SUBCASE("both-orientations mode records the reversed p-value") {
        const Graph g = two_cliques(3, {{0, 0}, {1, 2}});
        const Partition part = Partition::from_labels(g, block_labels({3, 3}));
        const auto pairs = pair_estimates(g, part, true);
        CHECK(pairs[0].p_value_reversed.has_value());
    }
}

TEST_CASE("homogeneous estimates") {
    SUBCASE("two clusters of 2 nodes with one cross edge: p_hat = 0.25") {
        const Graph g =
            Graph::from_edges(4, {{0, 1, 1.0}, {2, 3, 1.0}, {0, 2, 1.0}});
        const Partition part = Partition::from_labels(g, {0, 0, 1, 1});
        const auto pairs = pair_estimates(g, part);
        const auto hom = homogeneous_estimates(g, part, pairs);
        CHECK(hom.p_hat == doctest::Approx(0.25));
        CHECK(hom.t_hat == doctest::Approx(0.25));
    }
    SUBCASE("no cross edges: p_hat = 0") {
        const Graph g = two_cliques(3, {});
        const Partition part = Partition::from_labels(g, block_labels({3, 3}));
        const auto hom = homogeneous_estimates(g, part, pair_estimates(g, part));
        CHECK(hom.p_hat == 0.0);
        CHECK_FALSE(hom.has_cross_edges);
    }
    SUBCASE("complete graph split arbitrarily: p_hat = 1") {
        std::vector<Edge> edges;
        for (int u = 0; u < 6; ++u)
            for (int v = u + 1; v < 6; ++v) edges.push_back({u, v, 1.0});
        const Graph g = Graph::from_edges(6, std::move(edges));
        const Partition part = Partition::from_labels(g, {0, 1, 0, 1, 2, 2});
        const auto hom = homogeneous_estimates(g, part, pair_estimates(g, part));
        CHECK(hom.p_hat == doctest::Approx(1.0));
    }
    SUBCASE("pooled estimate equals cross edges over cross slots") {
        const RimSpec spec = RimSpec::homogeneous({30, 20, 25}, InternalRecipe{}, 0.15, 1.0,
                                                  WeightDistribution::constant, 5);
        const RimSample s = generate_rim(spec);
        const Partition part = Partition::from_labels(s.graph, s.labels);
        const auto pairs = pair_estimates(s.graph, part);
        const auto hom = homogeneous_estimates(s.graph, part, pairs);
        long long cross = 0, slots = 0;
        for (const auto& p : pairs) {
            cross += p.m_ij;
            slots += static_cast<long long>(p.n_i) * p.n_j;
        }
        CHECK(hom.p_hat ==
              doctest::Approx(static_cast<double>(cross) / slots).epsilon(1e-12));
    }
}

TEST_CASE("edge count conservation across a partition") {
    const RimSpec spec = RimSpec::homogeneous(
        {20, 30, 15}, InternalRecipe{InternalRecipe::Kind::erdos_renyi, 0.4, {}}, 0.2, 1.0,
        WeightDistribution::constant, 33);
    const RimSample s = generate_rim(spec);
    const Partition part = Partition::from_labels(s.graph, s.labels);
    const auto pairs = pair_estimates(s.graph, part);
    long long cross = 0;
    for (const auto& p : pairs) cross += p.m_ij;
    CHECK(part.total_within_edges() + cross == s.graph.edge_count());
}

TEST_CASE("t_lb estimates") {
    SUBCASE("equal complete clusters give exactly 1") {
        std::vector<Edge> edges;
        const int m = 6, k = 3;
        for (int c = 0; c < k; ++c)
            for (int u = 0; u < m; ++u)
                for (int v = u + 1; v < m; ++v)
                    edges.push_back({c * m + u, c * m + v, 1.0});
        edges.push_back({0, m, 1.0}); // sprinkle of cross edges
        edges.push_back({m, 2 * m, 1.0});
        const Graph g = Graph::from_edges(k * m, std::move(edges));
        const Partition part = Partition::from_labels(g, block_labels({m, m, m}));
        CHECK(t_lb_estimate(g, part) == doctest::Approx(1.0));
    }
    SUBCASE("two path clusters of 3 nodes give 1/3") {
        const Graph g = Graph::from_edges(
            6, {{0, 1, 1.0}, {1, 2, 1.0}, {3, 4, 1.0}, {4, 5, 1.0}, {0, 3, 1.0}});
        const Partition part = Partition::from_labels(g, block_labels({3, 3}));
        CHECK(t_lb_estimate(g, part) == doctest::Approx(1.0 / 3.0));
    }
    SUBCASE("a disconnected cluster contributes a zero eigenvalue") {
        // cluster 0 is two separate edges (disconnected), cluster 1 a triangle
        const Graph g = Graph::from_edges(7, {{0, 1, 1.0},
                                              {2, 3, 1.0},
                                              {4, 5, 1.0},
                                              {5, 6, 1.0},
                                              {4, 6, 1.0},
                                              {0, 4, 1.0}});
        const Partition part = Partition::from_labels(g, {0, 0, 0, 0, 1, 1, 1});
        // S_{2:2} of the disconnected cluster is 0, so the bound collapses
        CHECK(t_lb_estimate(g, part) == doctest::Approx(0.0));
    }
    SUBCASE("cluster smaller than k is a distinct error") {
        const Graph g = two_cliques(3, {{0, 0}});
        const Partition part = Partition::from_labels(g, {0, 0, 0, 1, 1, 2});
        CHECK_THROWS_AS(t_lb_estimate(g, part), DataError);
    }
}

TEST_CASE("glrt homogeneity test") {
    SUBCASE("statistic is nonnegative when the pooled estimate is the MLE") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const RimSpec spec = RimSpec::homogeneous({40, 30, 35}, InternalRecipe{},
                                                      0.05 + 0.02 * seed, 1.0,
                                                      WeightDistribution::constant, seed);
            const RimSample s = generate_rim(spec);
            const Partition part = Partition::from_labels(s.graph, s.labels);
            const auto pairs = pair_estimates(s.graph, part);
            const auto hom = homogeneous_estimates(s.graph, part, pairs);
            const auto res = glrt_homogeneity_test(pairs, hom, 0.05);
            CHECK(res.statistic >= -1e-9);
        }
    }
    SUBCASE("degenerate pairwise estimates leave only pooled terms") {
        // all p_ij in {0,1}: indicator silences every per-pair term
        std::vector<PairStats> pairs(3);
        pairs[0] = {0, 1, 2, 2, 0, 0.0, 1.0, 0.0, 1.0, false, false, {}};
        pairs[1] = {0, 2, 2, 2, 4, 1.0, 1.0, 1.0, 1.0, true, false, {}};
        pairs[2] = {1, 2, 2, 2, 0, 0.0, 1.0, 0.0, 1.0, false, false, {}};
        HomogeneousStats hom;
        hom.p_hat = 4.0 / 12.0;
        hom.w_bar = 1.0;
        hom.t_hat = hom.p_hat;
        const auto res = glrt_homogeneity_test(pairs, hom, 0.05);
        const double expected =
            -2.0 * (4.0 * std::log(hom.p_hat) + 8.0 * std::log(1.0 - hom.p_hat));
        CHECK(res.statistic == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("homogeneous data passes at roughly the nominal rate") {
        int passes = 0;
        const int trials = 100;
        for (int trial = 0; trial < trials; ++trial) {
            const RimSpec spec =
                RimSpec::homogeneous({80, 80, 80}, InternalRecipe{}, 0.1, 1.0,
                                     WeightDistribution::constant, 1000 + trial);
            const RimSample s = generate_rim(spec);
            const Partition part = Partition::from_labels(s.graph, s.labels);
            const auto pairs = pair_estimates(s.graph, part);
            const auto hom = homogeneous_estimates(s.graph, part, pairs);
            if (glrt_homogeneity_test(pairs, hom, 0.05).pass) ++passes;
        }
        CHECK(passes >= 85); // nominal 95, generous slack at 100 trials
    }
    SUBCASE("strongly inhomogeneous data is rejected") {
        int rejects = 0;
        const int trials = 60;
        for (int trial = 0; trial < trials; ++trial) {
            RimSpec spec = RimSpec::homogeneous({80, 80, 80}, InternalRecipe{}, 0.01, 1.0,
                                                WeightDistribution::constant, 2000 + trial);
            spec.cross_p(0, 1) = spec.cross_p(1, 0) = 0.3;
            const RimSample s = generate_rim(spec);
            const Partition part = Partition::from_labels(s.graph, s.labels);
            const auto pairs = pair_estimates(s.graph, part);
            const auto hom = homogeneous_estimates(s.graph, part, pairs);
            const auto res = glrt_homogeneity_test(pairs, hom, 0.05);
            if (!res.pass) ++rejects;
        }
        CHECK(rejects >= 57); // >= 95%
    }
    SUBCASE("needs at least three pairs") {
        std::vector<PairStats> one(1);
        CHECK_THROWS_AS(glrt_homogeneity_test(one, HomogeneousStats{}, 0.05),
                        std::invalid_argument);
    }
}

TEST_CASE("anscombe transform") {
    SUBCASE("x = 1 stays strictly below pi/2") {
        CHECK(anscombe(1.0, 10, 10) < M_PI / 2.0);
        CHECK(anscombe(1.0, 3, 2) < M_PI / 2.0);
    }
    SUBCASE("x = 0 tends to 0 as the block grows") {
        CHECK(anscombe(0.0, 4000, 4000) == doctest::Approx(0.0).epsilon(1e-3));
        CHECK(anscombe(0.0, 10, 10) > 0.0);
    }
    SUBCASE("strictly increasing in x") {
        CHECK(anscombe(0.2, 10, 10) < anscombe(0.3, 10, 10));
        double prev = -1.0;
        for (double x = 0.0; x <= 1.0; x += 0.05) {
            const double a = anscombe(x, 8, 9);
            CHECK(a > prev);
            prev = a;
        }
    }
    CHECK_THROWS_AS(anscombe(1.5, 4, 4), std::invalid_argument);
    CHECK_THROWS_AS(anscombe(-0.5, 4, 4), std::invalid_argument);
}

TEST_CASE("phase-transition factor f_ij") {
    PairStats interior;
    interior.n_i = 10;
    interior.n_j = 12;
    interior.p_hat = 0.3;

    SUBCASE("x equal to the estimate gives exactly one half") {
        CHECK(f_ij(0.3, interior) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("indicator branch at degenerate estimates") {
        PairStats zero = interior;
        zero.p_hat = 0.0;
        CHECK(f_ij(0.01, zero) == 1.0);
        CHECK(f_ij(0.0, zero) == 0.0);
        PairStats one = interior;
        one.p_hat = 1.0;
        CHECK(f_ij(0.5, one) == 0.0);
        CHECK(f_ij(1.0, one) == 0.0);
    }
    SUBCASE("nondecreasing in x, including past 1") {
        double prev = -1.0;
        for (double x = 0.0; x <= 2.0; x += 0.04) {
            const double f = f_ij(x, interior);
            CHECK(f >= prev - 1e-15);
            CHECK(f >= 0.0);
            CHECK(f <= 1.0);
            prev = f;
        }
    }
}

TEST_CASE("inhomogeneous phase-transition test") {
    SUBCASE("all-zero densities with positive t_lb pass with product 1") {
        std::vector<PairStats> pairs(3);
        pairs[0] = {0, 1, 5, 5, 0, 0.0, 1.0, 0.0, 1.0, false, false, {}};
        pairs[1] = {0, 2, 5, 5, 0, 0.0, 1.0, 0.0, 1.0, false, false, {}};
        pairs[2] = {1, 2, 5, 5, 0, 0.0, 1.0, 0.0, 1.0, false, false, {}};
        const auto res = inhomogeneous_pt_test(pairs, 0.5, 0.05);
        CHECK(res.product == 1.0);
        CHECK(res.pass);
    }
    SUBCASE("a single saturated pair zeroes the product") {
        std::vector<PairStats> pairs(1);
        pairs[0] = {0, 1, 5, 5, 25, 1.0, 1.0, 1.0, 1.0, true, false, {}};
        const auto res = inhomogeneous_pt_test(pairs, 0.9, 0.05);
        CHECK(res.product == 0.0);
        CHECK_FALSE(res.pass);
    }
    SUBCASE("well-separated planted model passes at high frequency") {
        int passes = 0;
        const int trials = 60;
        for (int trial = 0; trial < trials; ++trial) {
            RimSpec spec = RimSpec::homogeneous({60, 60, 60}, InternalRecipe{}, 0.01, 1.0,
                                                WeightDistribution::constant, 3000 + trial);
            spec.cross_p(0, 1) = spec.cross_p(1, 0) = 0.03;
            const RimSample s = generate_rim(spec);
            const Partition part = Partition::from_labels(s.graph, s.labels);
            const auto pairs = pair_estimates(s.graph, part);
            const double t_lb = t_lb_estimate(s.graph, part); // = 1 for complete clusters
            if (inhomogeneous_pt_test(pairs, t_lb, 0.05).pass) ++passes;
        }
        CHECK(passes >= 57);
    }
}
