#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "amos/graph.hpp"
#include "amos/partition.hpp"

namespace amos {

/// Estimates for one unordered cluster pair (i < j).
struct PairStats {
    int i = 0;
    int j = 0;
    int n_i = 0;
    int n_j = 0;
    long long m_ij = 0;    ///< inter-cluster edge count
    double p_hat = 0.0;    ///< m_ij / (n_i * n_j)
    double w_bar = 1.0;    ///< mean inter-cluster edge weight (1 when no cross edges)
    double t_hat = 0.0;    ///< p_hat * w_bar
    double p_value = 1.0;  ///< V-test p-value for row-sum homogeneity
    bool has_cross_edges = false;
    bool degenerate_vtest = false; ///< auto-passed (column cluster smaller than 2)
    std::optional<double> p_value_reversed; ///< diagnostic, filled in both-orientations mode
};

/// Pooled estimates under a single shared interconnection parameter.
struct HomogeneousStats {
    double p_hat = 0.0; ///< 2(m - sum m_k) / (n^2 - sum n_k^2)
    double w_bar = 1.0; ///< mean over all between-cluster edge weights (1 when none)
    double t_hat = 0.0; ///< p_hat * w_bar
    bool has_cross_edges = false;
};

/// V-test p-value for the hypothesis that the rows of a binary matrix are
/// identically distributed:
///   x = row sums, y = cols - x,
///   X = x'x - x'1, Y = y'y - y'1, N = n_i n_j (n_j - 1),
///   V = (sqrt(X) + sqrt(Y))^2, Z = (V - N) / sqrt(2N),
///   p = 2 min{Phi(Z), 1 - Phi(Z)}.
/// Requires n_i >= 1, n_j >= 2 and entries in {0, 1}.
double v_test_pvalue(const Eigen::MatrixXd& c);

/// One PairStats per unordered cluster pair, V-tested with rows = the
/// lower-indexed cluster. Pairs whose column cluster has fewer than two
/// nodes auto-pass with p-value 1 and a diagnostic flag. When
/// both_orientations is set, the transposed p-value is recorded as a
/// diagnostic (it never affects decisions).
std::vector<PairStats> pair_estimates(const Graph& g, const Partition& part,
                                      bool both_orientations = false);

HomogeneousStats homogeneous_estimates(const Graph& g, const Partition& part,
                                       const std::vector<PairStats>& pairs);

/// Lower bound estimate on the critical interconnectivity:
///   min_k S_{2:K}(L_k) / ((K-1) n_max)
/// where S_{2:K} sums eigenvalues 2..K of cluster k's induced-subgraph
/// Laplacian. Throws DataError when some cluster has fewer than K nodes
/// (the partial sum is undefined); callers treat that as a
/// phase-transition test failure.
double t_lb_estimate(const Graph& g, const Partition& part);

struct GlrtResult {
    bool pass = false;
    double statistic = 0.0;
    double lower = 0.0; ///< chi-square upper (1 - alpha/2) quantile
    double upper = 0.0; ///< chi-square upper (alpha/2) quantile
    bool low_side = false; ///< failed below the interval ("too homogeneous")
};

/// Generalized likelihood ratio test of a single shared interconnection
/// probability against per-pair probabilities. Wilks: the statistic is
/// asymptotically chi-square with C(K,2) - 1 degrees of freedom; the test
/// passes iff it falls inside the two-sided interval. Requires K >= 3.
/// Zero-count terms multiplying log(0) contribute 0; a nonzero count
/// against a degenerate pooled estimate yields +inf and a failed test.
GlrtResult glrt_homogeneity_test(const std::vector<PairStats>& pairs,
                                 const HomogeneousStats& hom, double alpha);

/// Variance-stabilizing Anscombe transform of a proportion estimated from
/// n_i * n_j Bernoulli trials: asin(sqrt((x + c/N) / (1 + 2c/N))), c = 3/8.
double anscombe(double x, long long n_i, long long n_j);

/// One factor of the inhomogeneous phase-transition product:
///   Phi(sqrt(4 n_i n_j + 2) (A(x) - A(p_hat)))  when p_hat in (0,1),
///   1{p_hat < x}                                 when p_hat in {0,1}.
/// x may exceed 1 (a lower bound above the largest possible density); the
/// Anscombe branch evaluates at min(x, 1), which keeps the factor
/// nondecreasing in x.
double f_ij(double x, const PairStats& pair);

struct InhomogeneousTestResult {
    bool pass = false;
    double product = 1.0;
};

/// Checks prod_{i<j} F_ij(t_lb / w_bar_ij, p_hat_ij) >= 1 - alpha_prime,
/// multiplying in (i, j) lexicographic order.
InhomogeneousTestResult inhomogeneous_pt_test(const std::vector<PairStats>& pairs,
                                              double t_lb, double alpha_prime);

} // namespace amos
