#include "amos/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "amos/special_functions.hpp"
#include "amos/spectral.hpp"

namespace amos {

double v_test_pvalue(const Eigen::MatrixXd& c) {
    const auto n_i = c.rows();
    const auto n_j = c.cols();
    if (n_i < 1 || n_j < 2)
        throw std::invalid_argument("v_test_pvalue: need at least 1 row and 2 columns");
    for (Eigen::Index r = 0; r < n_i; ++r)
        for (Eigen::Index q = 0; q < n_j; ++q)
            if (c(r, q) != 0.0 && c(r, q) != 1.0)
                throw std::invalid_argument("v_test_pvalue: matrix entries must be 0 or 1");

    const Eigen::VectorXd x = c.rowwise().sum();
    const Eigen::VectorXd y =
        Eigen::VectorXd::Constant(n_i, static_cast<double>(n_j)) - x;
    const double big_x = x.squaredNorm() - x.sum();
    const double big_y = y.squaredNorm() - y.sum();
    if (big_x < 0.0 || big_y < 0.0)
        throw SolverError("v_test_pvalue: negative sum of squares (internal error)");
    const double big_n =
        static_cast<double>(n_i) * static_cast<double>(n_j) * static_cast<double>(n_j - 1);
    // (sqrt(X) + sqrt(Y))^2, expanded so constant matrices give V = N exactly
    const double v = big_x + big_y + 2.0 * std::sqrt(big_x * big_y);
    const double z = (v - big_n) / std::sqrt(2.0 * big_n);
    const double phi = normal_cdf(z);
    return std::clamp(2.0 * std::min(phi, 1.0 - phi), 0.0, 1.0);
}

std::vector<PairStats> pair_estimates(const Graph& g, const Partition& part,
                                      bool both_orientations) {
    std::vector<PairStats> out;
    out.reserve(static_cast<std::size_t>(part.k) * (part.k - 1) / 2);
    for (int i = 0; i < part.k; ++i) {
        for (int j = i + 1; j < part.k; ++j) {
            PairStats s;
            s.i = i;
            s.j = j;
            s.n_i = part.sizes[i];
            s.n_j = part.sizes[j];
            const Interconnection inter =
                interconnection_matrix(g, part.members[i], part.members[j]);
            s.m_ij = static_cast<long long>(inter.binary.sum() + 0.5);
            s.p_hat = static_cast<double>(s.m_ij) /
                      (static_cast<double>(s.n_i) * static_cast<double>(s.n_j));
            s.has_cross_edges = s.m_ij > 0;
            s.w_bar = s.has_cross_edges ? inter.weight.sum() / static_cast<double>(s.m_ij)
                                        : 1.0;
            s.t_hat = s.p_hat * s.w_bar;
            if (s.n_j < 2) {
                // the V-test statistic is undefined; a singleton cluster gives
                // no evidence against homogeneity, so the pair auto-passes
                s.p_value = 1.0;
                s.degenerate_vtest = true;
            } else {
                s.p_value = v_test_pvalue(inter.binary);
            }
            if (both_orientations && s.n_i >= 2)
                s.p_value_reversed = v_test_pvalue(inter.binary.transpose());
            out.push_back(std::move(s));
        }
    }
    return out;
}

HomogeneousStats homogeneous_estimates(const Graph& g, const Partition& part,
                                       const std::vector<PairStats>& pairs) {
    if (part.k < 2)
        throw std::invalid_argument("homogeneous_estimates: need at least 2 clusters");
    const double n = static_cast<double>(g.node_count());
    double sum_sq = 0.0;
    for (int size : part.sizes) sum_sq += static_cast<double>(size) * size;
    const double cross_edges =
        static_cast<double>(g.edge_count() - part.total_within_edges());

    HomogeneousStats hom;
    hom.p_hat = 2.0 * cross_edges / (n * n - sum_sq);
    double cross_weight = 0.0;
    long long cross_count = 0;
    for (const auto& p : pairs) {
        if (p.has_cross_edges) {
            cross_weight += p.w_bar * static_cast<double>(p.m_ij);
            cross_count += p.m_ij;
        }
    }
    hom.has_cross_edges = cross_count > 0;
    hom.w_bar = hom.has_cross_edges ? cross_weight / static_cast<double>(cross_count) : 1.0;
    hom.t_hat = hom.p_hat * hom.w_bar;
    return hom;
}

double t_lb_estimate(const Graph& g, const Partition& part) {
    const int k = part.k;
    if (k < 2) throw std::invalid_argument("t_lb_estimate: need at least 2 clusters");
    double min_sum = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
        if (part.sizes[c] < k)
            throw DataError("t_lb_estimate: cluster " + std::to_string(c) + " has " +
                            std::to_string(part.sizes[c]) + " nodes, fewer than k = " +
                            std::to_string(k) + "; partial eigenvalue sum undefined");
        const Graph sub = subgraph(g, part.members[c]);
        min_sum = std::min(min_sum, partial_eigen_sum(laplacian(sub), k));
    }
    return min_sum / (static_cast<double>(k - 1) * part.max_size());
}

GlrtResult glrt_homogeneity_test(const std::vector<PairStats>& pairs,
                                 const HomogeneousStats& hom, double alpha) {
    if (pairs.size() < 3)
        throw std::invalid_argument(
            "glrt_homogeneity_test: needs K >= 3 (at least 3 cluster pairs)");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("glrt_homogeneity_test: alpha must be in (0, 1)");

    double per_pair = 0.0;
    double cross_edges = 0.0;
    double cross_pairs = 0.0;
    for (const auto& p : pairs) {
        const double nn = static_cast<double>(p.n_i) * static_cast<double>(p.n_j);
        const double m = static_cast<double>(p.m_ij);
        if (p.p_hat > 0.0 && p.p_hat < 1.0)
            per_pair += m * std::log(p.p_hat) + (nn - m) * std::log(1.0 - p.p_hat);
        cross_edges += m;
        cross_pairs += nn;
    }

    // pooled terms; a zero multiplier silences a degenerate log, a nonzero
    // multiplier against log(0) makes the statistic +inf and the test fail
    double pooled = 0.0;
    bool infinite = false;
    const double mult_p = 2.0 * cross_edges;
    const double mult_q = 2.0 * cross_pairs - 2.0 * cross_edges;
    if (mult_p != 0.0) {
        if (hom.p_hat <= 0.0)
            infinite = true;
        else
            pooled += mult_p * std::log(hom.p_hat);
    }
    if (mult_q != 0.0) {
        if (hom.p_hat >= 1.0)
            infinite = true;
        else
            pooled += mult_q * std::log(1.0 - hom.p_hat);
    }

    GlrtResult res;
    const int dof = static_cast<int>(pairs.size()) - 1;
    res.lower = chi_square_quantile(dof, 1.0 - alpha / 2.0);
    res.upper = chi_square_quantile(dof, alpha / 2.0);
    res.statistic = infinite ? std::numeric_limits<double>::infinity()
                             : 2.0 * per_pair - pooled;
    res.pass = res.lower <= res.statistic && res.statistic <= res.upper;
    res.low_side = res.statistic < res.lower;
    return res;
}

double anscombe(double x, long long n_i, long long n_j) {
    const double n = static_cast<double>(n_i) * static_cast<double>(n_j);
    if (n < 1.0) throw std::invalid_argument("anscombe: n_i * n_j must be >= 1");
    if (x < -1e-12 || x > 1.0 + 1e-12)
        throw std::invalid_argument("anscombe: x must lie in [0, 1]");
    constexpr double c = 3.0 / 8.0;
    const double arg = (std::clamp(x, 0.0, 1.0) + c / n) / (1.0 + 2.0 * c / n);
    return std::asin(std::sqrt(std::clamp(arg, 0.0, 1.0)));
}

double f_ij(double x, const PairStats& pair) {
    if (x < 0.0) throw std::invalid_argument("f_ij: x must be nonnegative");
    if (pair.p_hat > 0.0 && pair.p_hat < 1.0) {
        const double scale =
            std::sqrt(4.0 * static_cast<double>(pair.n_i) * static_cast<double>(pair.n_j) + 2.0);
        const double a_x = anscombe(std::min(x, 1.0), pair.n_i, pair.n_j);
        const double a_p = anscombe(pair.p_hat, pair.n_i, pair.n_j);
        return normal_cdf(scale * (a_x - a_p));
    }
    return pair.p_hat < x ? 1.0 : 0.0;
}

InhomogeneousTestResult inhomogeneous_pt_test(const std::vector<PairStats>& pairs,
                                              double t_lb, double alpha_prime) {
    if (t_lb < 0.0)
        throw std::invalid_argument("inhomogeneous_pt_test: t_lb must be nonnegative");
    if (!(alpha_prime > 0.0 && alpha_prime < 1.0))
        throw std::invalid_argument("inhomogeneous_pt_test: alpha_prime must be in (0, 1)");
    InhomogeneousTestResult res;
    res.product = 1.0;
    for (const auto& p : pairs) res.product *= f_ij(t_lb / p.w_bar, p);
    res.pass = res.product >= 1.0 - alpha_prime;
    return res;
}

} // namespace amos
