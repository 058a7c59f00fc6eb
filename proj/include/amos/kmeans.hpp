#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace amos {

struct KmeansResult {
    std::vector<int> labels;
    double objective = 0.0; ///< within-cluster sum of squared distances
    int best_restart = 0;
    bool degenerate = false; ///< all points identical with k > 1
};

/// Lloyd iterations with distance-weighted (k-means++) seeding, run
/// `restarts` times with independent streams derived from (seed, restart
/// index); the best objective wins, ties broken by restart index. The
/// returned clustering has no empty clusters. Deterministic given seed.
KmeansResult kmeans(const Eigen::MatrixXd& points, int k, int restarts,
                    std::uint64_t seed);

} // namespace amos
