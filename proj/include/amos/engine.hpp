#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "amos/graph.hpp"
#include "amos/partition.hpp"
#include "amos/stats.hpp"

namespace amos {

struct AmosConfig {
    double eta = 1e-5;         ///< per-pair V-test significance level
    double alpha = 0.05;       ///< GLRT level
    double alpha_prime = 0.05; ///< inhomogeneous phase-transition test level
    int k_max = 200;           ///< iteration cap, clamped to n - 1
    std::uint64_t seed = 1;
    int restarts = 20;         ///< k-means restarts
    bool normalize = true;     ///< degree-normalize the input weights

    void validate() const; ///< throws std::invalid_argument
};

enum class FailingStage { rim_test, glrt, homogeneous_pt, inhomogeneous_pt, none };

const char* to_string(FailingStage s);

/// Audit record of one iteration at a given cluster count.
struct IterationRecord {
    int k = 0;
    std::vector<int> cluster_sizes;
    std::vector<long long> within_edges;
    FailingStage failing = FailingStage::none;
    std::optional<std::pair<int, int>> first_failing_pair; ///< set on rim_test failures
    std::vector<PairStats> pairs; ///< all pair estimates and p-values
    std::optional<HomogeneousStats> homogeneous;
    std::optional<double> t_lb; ///< empty when undefined (some cluster smaller than k)
    std::optional<GlrtResult> glrt; ///< empty at k = 2 (degenerate, zero degrees of freedom)
    std::optional<double> inhomogeneous_product;
    bool degenerate_gap = false; ///< eigenvalue tie at the embedding boundary
    double ms_embedding = 0.0;
    double ms_kmeans = 0.0;
    double ms_tests = 0.0;
};

enum class Termination { reliable, k_max_exhausted };

struct AmosReport {
    int final_k = 0;
    Partition partition;
    std::vector<IterationRecord> iterations;
    Termination termination = Termination::k_max_exhausted;
    double ms_total = 0.0;
};

/// The iterative model order selection loop: starting at k = 2, run
/// spectral clustering, V-test every cluster pair (advance on the first
/// p-value <= eta), then apply the phase-transition tests; stop at the
/// first k whose clusters are deemed reliable. The input must be
/// connected with n >= 3. Never throws on statistical outcomes: if no k
/// up to the cap is reliable the report says k_max_exhausted.
AmosReport run_amos(const Graph& g, const AmosConfig& cfg);

} // namespace amos
