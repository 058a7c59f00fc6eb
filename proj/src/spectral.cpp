#include "amos/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "amos/common.hpp"

namespace amos {

namespace {

constexpr int kDenseLimit = 2000;
constexpr double kLanczosTol = 1e-10;

void check_symmetric(const Eigen::SparseMatrix<double>& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("smallest_eigenpairs: matrix is not square");
    Eigen::SparseMatrix<double> diff = Eigen::SparseMatrix<double>(m.transpose()) - m;
    double scale = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it)
            scale = std::max(scale, std::abs(it.value()));
    for (int k = 0; k < diff.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(diff, k); it; ++it)
            if (std::abs(it.value()) > 1e-10 * std::max(scale, 1.0))
                throw std::invalid_argument("smallest_eigenpairs: matrix is not symmetric");
}

EigenPairs dense_smallest(const Eigen::SparseMatrix<double>& m, int count) {
    Eigen::MatrixXd dense = Eigen::MatrixXd(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
    if (solver.info() != Eigen::Success)
        throw SolverError("dense symmetric eigensolver failed");
    EigenPairs out;
    out.values = solver.eigenvalues().head(count);
    out.vectors = solver.eigenvectors().leftCols(count);
    return out;
}

// One Lanczos sweep with full reorthogonalization, restricted to the
// orthogonal complement of `deflate`. Returns the `want` smallest Ritz
// pairs of that subspace once their residual bounds beta * |s_last| drop
// below tol * spectral scale. A breakdown restarts the recurrence with a
// fresh vector orthogonal to everything seen so far; exhausting the
// subspace makes the tridiagonal factorization exact, so small problems
// terminate regardless of spectrum structure.
EigenPairs lanczos_sweep(const Eigen::SparseMatrix<double>& m, int want,
                         const Eigen::MatrixXd& deflate, rng::Stream& stream) {
    const int n = static_cast<int>(m.rows());
    const int space = n - static_cast<int>(deflate.cols());
    const int m_max = std::min(space, std::max(8 * want + 40, 120));

    Eigen::MatrixXd basis(n, m_max);
    std::vector<double> alpha, beta;

    auto orthogonalize = [&](Eigen::VectorXd& v, int cols) {
        for (int pass = 0; pass < 2; ++pass) {
            if (deflate.cols() > 0) v -= deflate * (deflate.transpose() * v);
            if (cols > 0) v -= basis.leftCols(cols) * (basis.leftCols(cols).transpose() * v);
        }
    };

    auto random_orthonormal = [&](int cols) {
        Eigen::VectorXd v(n);
        for (int attempt = 0; attempt < 64; ++attempt) {
            for (int i = 0; i < n; ++i) v(i) = stream.uniform(-1.0, 1.0);
            orthogonalize(v, cols);
            const double norm = v.norm();
            if (norm > 1e-8) return Eigen::VectorXd(v / norm);
        }
        throw SolverError("lanczos: could not generate an orthogonal start vector");
    };

    basis.col(0) = random_orthonormal(0);
    double norm_estimate = 0.0;
    int j = 0;
    while (true) {
        Eigen::VectorXd w = m * basis.col(j);
        const double a = basis.col(j).dot(w);
        alpha.push_back(a);
        w -= a * basis.col(j);
        if (j > 0) w -= beta[j - 1] * basis.col(j - 1);
        orthogonalize(w, j + 1);
        const double b = w.norm();
        norm_estimate = std::max(norm_estimate, std::abs(a) + b);

        const int dim = j + 1;
        const bool breakdown = b <= 1e-13 * std::max(norm_estimate, 1.0);
        const bool exhausted = dim == space;
        const bool full = dim == m_max;

        if (dim >= want && (breakdown || full || dim >= 2 * want)) {
            Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(dim, dim);
            for (int i = 0; i < dim; ++i) tri(i, i) = alpha[i];
            for (int i = 0; i + 1 < dim; ++i) {
                tri(i, i + 1) = beta[i];
                tri(i + 1, i) = beta[i];
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tsolver(tri);
            const double scale = std::max({std::abs(tsolver.eigenvalues()(0)),
                                           std::abs(tsolver.eigenvalues()(dim - 1)), 1e-30});
            bool converged = true;
            for (int i = 0; i < want; ++i) {
                const double resid = b * std::abs(tsolver.eigenvectors()(dim - 1, i));
                if (resid > kLanczosTol * scale) {
                    converged = false;
                    break;
                }
            }
            if (converged || (breakdown && exhausted)) {
                EigenPairs out;
                out.values = tsolver.eigenvalues().head(want);
                out.vectors = basis.leftCols(dim) * tsolver.eigenvectors().leftCols(want);
                for (int i = 0; i < want; ++i) out.vectors.col(i).normalize();
                return out;
            }
            if (full)
                throw SolverError("lanczos: no convergence after " + std::to_string(dim) +
                                  " iterations (basis exhausted, tol " +
                                  std::to_string(kLanczosTol) + ")");
        }

        if (breakdown) {
            if (exhausted)
                throw SolverError("lanczos: subspace exhausted before convergence");
            beta.push_back(0.0);
            basis.col(j + 1) = random_orthonormal(j + 1);
        } else {
            beta.push_back(b);
            basis.col(j + 1) = w / b;
        }
        ++j;
    }
}

// A single Krylov sequence converges at most one eigenvector per distinct
// eigenvalue, so degenerate copies (e.g. one zero per graph component)
// would be skipped. Deflated sweeps against everything found so far
// recover them: the complement's smallest value either belongs among the
// `count` smallest (keep sweeping) or certifies that nothing below the
// current k-th value was missed.
EigenPairs lanczos_smallest(const Eigen::SparseMatrix<double>& m, int count) {
    const int n = static_cast<int>(m.rows());
    rng::Stream stream(0x1a2b3c4d5e6f7788ULL);

    std::vector<double> values;
    Eigen::MatrixXd vectors(n, 0);
    int want = count;
    for (int sweep = 0; sweep < count + 8; ++sweep) {
        const int space = n - static_cast<int>(vectors.cols());
        if (space == 0) break;
        const EigenPairs got =
            lanczos_sweep(m, std::min(want, space), vectors, stream);
        double scale = 1e-30;
        for (double v : values) scale = std::max(scale, std::abs(v));
        for (int i = 0; i < got.values.size(); ++i)
            scale = std::max(scale, std::abs(got.values(i)));

        const bool have_enough = static_cast<int>(values.size()) >= count;
        if (have_enough) {
            std::vector<double> sorted = values;
            std::sort(sorted.begin(), sorted.end());
            if (got.values(0) >= sorted[count - 1] - 1e-10 * scale)
                break; // complement holds nothing below the k-th found value
        }
        const Eigen::Index old_cols = vectors.cols();
        vectors.conservativeResize(n, old_cols + got.vectors.cols());
        vectors.rightCols(got.vectors.cols()) = got.vectors;
        for (int i = 0; i < got.values.size(); ++i) values.push_back(got.values(i));
        want = 1; // later sweeps only probe the complement's smallest value
    }
    if (static_cast<int>(values.size()) < count)
        throw SolverError("lanczos: deflation could not assemble enough eigenpairs");

    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return values[a] < values[b]; });
    EigenPairs out;
    out.values.resize(count);
    out.vectors.resize(n, count);
    for (int i = 0; i < count; ++i) {
        out.values(i) = values[order[i]];
        out.vectors.col(i) = vectors.col(order[i]);
    }
    return out;
}

} // namespace

EigenPairs smallest_eigenpairs(const Eigen::SparseMatrix<double>& m, int count,
                               EigenStrategy strategy) {
    if (count < 1) throw std::invalid_argument("smallest_eigenpairs: count must be >= 1");
    if (count > m.rows())
        throw std::invalid_argument("smallest_eigenpairs: count exceeds matrix size");
    check_symmetric(m);
    const bool dense = strategy == EigenStrategy::dense ||
                       (strategy == EigenStrategy::automatic && m.rows() <= kDenseLimit);
    return dense ? dense_smallest(m, count) : lanczos_smallest(m, count);
}

SpectralEmbedding embedding(const Graph& g, int k, EigenStrategy strategy) {
    const int n = g.node_count();
    if (k < 2 || k > n - 1)
        throw std::invalid_argument("embedding: k must satisfy 2 <= k <= n-1");
    if (connected_components(g).count != 1)
        throw DataError("embedding requires a connected graph");
    const EigenPairs pairs = smallest_eigenpairs(laplacian(g), k + 1, strategy);
    SpectralEmbedding emb;
    emb.k = k;
    emb.eigenvalues = pairs.values.segment(1, k - 1);
    emb.basis = pairs.vectors.middleCols(1, k - 1);
    emb.lambda_next = pairs.values(k);
    emb.degenerate_gap = pairs.values(k) - pairs.values(k - 1) < 1e-10;
    return emb;
}

double partial_eigen_sum(const Eigen::SparseMatrix<double>& m, int k, EigenStrategy strategy) {
    if (k < 2) throw std::invalid_argument("partial_eigen_sum: k must be >= 2");
    if (k > m.rows())
        throw std::invalid_argument("partial_eigen_sum: k exceeds matrix size");
    const EigenPairs pairs = smallest_eigenpairs(m, k, strategy);
    return pairs.values.tail(k - 1).sum();
}

double sin_theta_distance(const Eigen::MatrixXd& y, const Eigen::MatrixXd& yt) {
    if (y.rows() != yt.rows() || y.cols() != yt.cols())
        throw std::invalid_argument("sin_theta_distance: shape mismatch");
    for (const auto* mat : {&y, &yt})
        for (Eigen::Index c = 0; c < mat->cols(); ++c)
            if (std::abs(mat->col(c).norm() - 1.0) > 1e-6)
                throw std::invalid_argument(
                    "sin_theta_distance: columns must be orthonormal");
    const Eigen::MatrixXd cross = y.transpose() * yt;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        const double s = std::clamp(svd.singularValues()(i), 0.0, 1.0);
        sum += 1.0 - s * s;
    }
    return std::sqrt(std::max(sum, 0.0));
}

} // namespace amos
