#include "amos/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "amos/common.hpp"

namespace amos {

namespace {

constexpr int kMaxIterations = 300;

struct RunResult {
    std::vector<int> labels;
    double objective = std::numeric_limits<double>::infinity();
};

int nearest_centroid(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
                     int row) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int c = 0; c < centroids.rows(); ++c) {
        const double d = (points.row(row) - centroids.row(c)).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

// k-means++ seeding: first centroid uniform, each next sampled with
// probability proportional to squared distance from the chosen set. When
// every remaining distance is zero (duplicated points) the lowest-index
// unused point is taken.
Eigen::MatrixXd seed_centroids(const Eigen::MatrixXd& points, int k, rng::Stream& stream) {
    const int n = static_cast<int>(points.rows());
    Eigen::MatrixXd centroids(k, points.cols());
    std::vector<bool> used(n, false);
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());

    int first = static_cast<int>(stream.uniform_int(0, n - 1));
    centroids.row(0) = points.row(first);
    used[first] = true;

    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = (points.row(i) - centroids.row(c - 1)).squaredNorm();
            dist[i] = std::min(dist[i], d);
            total += dist[i];
        }
        int chosen = -1;
        if (total > 0.0) {
            const double target = stream.uniform() * total;
            double cum = 0.0;
            for (int i = 0; i < n; ++i) {
                cum += dist[i];
                if (cum >= target) {
                    chosen = i;
                    break;
                }
            }
            if (chosen < 0) chosen = n - 1;
        }
        if (chosen < 0 || used[chosen]) {
            for (int i = 0; i < n; ++i)
                if (!used[i]) {
                    chosen = i;
                    break;
                }
        }
        used[chosen] = true;
        centroids.row(c) = points.row(chosen);
    }
    return centroids;
}

RunResult lloyd(const Eigen::MatrixXd& points, int k, rng::Stream& stream) {
    const int n = static_cast<int>(points.rows());
    Eigen::MatrixXd centroids = seed_centroids(points, k, stream);
    std::vector<int> labels(n, -1);

    for (int iter = 0; iter < kMaxIterations; ++iter) {
        bool changed = false;
        for (int i = 0; i < n; ++i) {
            const int c = nearest_centroid(points, centroids, i);
            if (c != labels[i]) {
                labels[i] = c;
                changed = true;
            }
        }

        std::vector<int> counts(k, 0);
        for (int l : labels) ++counts[l];
        // re-seed an empty cluster with the point farthest from its centroid
        for (int c = 0; c < k; ++c) {
            while (counts[c] == 0) {
                int far = -1;
                double far_d = -1.0;
                for (int i = 0; i < n; ++i) {
                    if (counts[labels[i]] <= 1) continue;
                    const double d = (points.row(i) - centroids.row(labels[i])).squaredNorm();
                    if (d > far_d) {
                        far_d = d;
                        far = i;
                    }
                }
                if (far < 0) throw SolverError("kmeans: cannot repair empty cluster");
                --counts[labels[far]];
                labels[far] = c;
                ++counts[c];
                centroids.row(c) = points.row(far);
                changed = true;
            }
        }

        centroids.setZero();
        for (int i = 0; i < n; ++i) centroids.row(labels[i]) += points.row(i);
        for (int c = 0; c < k; ++c) centroids.row(c) /= counts[c];

        if (!changed && iter > 0) break;
    }

    RunResult out;
    out.labels = std::move(labels);
    out.objective = 0.0;
    for (int i = 0; i < n; ++i)
        out.objective += (points.row(i) - centroids.row(out.labels[i])).squaredNorm();
    return out;
}

} // namespace

KmeansResult kmeans(const Eigen::MatrixXd& points, int k, int restarts, std::uint64_t seed) {
    const int n = static_cast<int>(points.rows());
    if (k < 1) throw std::invalid_argument("kmeans: k must be >= 1");
    if (k > n) throw std::invalid_argument("kmeans: k exceeds the number of points");
    if (restarts < 1) throw std::invalid_argument("kmeans: restarts must be >= 1");

    KmeansResult result;
    bool identical = true;
    for (int i = 1; i < n && identical; ++i)
        identical = (points.row(i) - points.row(0)).squaredNorm() == 0.0;
    if (identical && k > 1) {
        // degenerate input: any assignment has objective 0; ties broken by
        // point index so the outcome is deterministic
        result.labels.resize(n);
        for (int i = 0; i < n; ++i) result.labels[i] = std::min(i, k - 1);
        result.objective = 0.0;
        result.degenerate = true;
        return result;
    }

    result.objective = std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        rng::Stream stream(rng::mix(seed, {0x6b6d656173u, static_cast<std::uint64_t>(r)}));
        RunResult run = lloyd(points, k, stream);
        if (run.objective < result.objective) {
            result.objective = run.objective;
            result.labels = std::move(run.labels);
            result.best_restart = r;
        }
    }
    return result;
}

} // namespace amos
