#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "amos/graph.hpp"

namespace amos {

/// Recipe for one cluster's internal (within-cluster) graph.
struct InternalRecipe {
    enum class Kind { complete, erdos_renyi, path, custom };
    Kind kind = Kind::complete;
    double p_in = 0.5;       ///< erdos_renyi only
    std::vector<Edge> edges; ///< custom only, cluster-local indices
};

enum class WeightDistribution { constant, exponential };

/// Random interconnection model instance description: arbitrary connected
/// internal graphs per cluster, i.i.d. Bernoulli(p_ij) cross edges per
/// cluster pair, cross-edge weights drawn with mean w_ij.
struct RimSpec {
    std::vector<int> sizes;
    std::vector<InternalRecipe> internal; ///< one per cluster
    Eigen::MatrixXd cross_p;              ///< K x K symmetric, diagonal ignored
    Eigen::MatrixXd weight_mean;          ///< K x K, diagonal ignored
    WeightDistribution weight_dist = WeightDistribution::constant;
    std::uint64_t seed = 0;

    static RimSpec homogeneous(std::vector<int> sizes, InternalRecipe recipe,
                               double cross_p, double weight_mean,
                               WeightDistribution dist = WeightDistribution::constant,
                               std::uint64_t seed = 0);

    int cluster_count() const { return static_cast<int>(sizes.size()); }
    int node_count() const;
    bool is_homogeneous() const; ///< all off-diagonal p and weight means equal
    void validate() const;       ///< throws DataError
};

struct RimSample {
    Graph graph;
    std::vector<int> labels; ///< ground truth, one per node
};

/// Samples a RIM instance. Each cluster's internal graph is resampled
/// until connected (at most 100 attempts, then DataError). Deterministic
/// given spec.seed: every cluster and cluster pair draws from its own
/// derived stream.
RimSample generate_rim(const RimSpec& spec);

/// Realized cross-edge density times realized mean cross-edge weight;
/// 0 when there are no cross edges. Generator self-check.
double empirical_t(const Graph& g, const std::vector<int>& labels);

RimSpec rim_spec_from_json(const nlohmann::json& j);

} // namespace amos
