#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "amos/graph.hpp"

namespace amos {

enum class EigenStrategy {
    automatic, ///< dense for n <= 2000, Lanczos above
    dense,
    lanczos,
};

struct EigenPairs {
    Eigen::VectorXd values;  ///< ascending
    Eigen::MatrixXd vectors; ///< orthonormal columns, one per value
};

/// The `count` smallest eigenpairs of a symmetric matrix. The Lanczos
/// path runs with full reorthogonalization and residual tolerance 1e-10;
/// it throws SolverError with iteration diagnostics if it fails to
/// converge. Throws std::invalid_argument on non-symmetric input.
EigenPairs smallest_eigenpairs(const Eigen::SparseMatrix<double>& m, int count,
                               EigenStrategy strategy = EigenStrategy::automatic);

/// Spectral embedding for a target cluster count k: the eigenvectors of
/// the graph Laplacian associated with eigenvalues 2..k (the constant
/// eigenvector of a connected graph is excluded), plus eigenvalue k+1
/// which downstream perturbation bounds need.
struct SpectralEmbedding {
    int k = 0;
    Eigen::VectorXd eigenvalues; ///< lambda_2..lambda_k, ascending
    Eigen::MatrixXd basis;       ///< n x (k-1), orthonormal columns
    double lambda_next = 0.0;    ///< lambda_{k+1}
    bool degenerate_gap = false; ///< lambda_{k+1} - lambda_k < 1e-10
};

/// Throws DataError if g is disconnected, std::invalid_argument unless
/// 2 <= k <= n-1.
SpectralEmbedding embedding(const Graph& g, int k,
                            EigenStrategy strategy = EigenStrategy::automatic);

/// Sum of eigenvalues 2..k (ascending order) of a symmetric matrix.
double partial_eigen_sum(const Eigen::SparseMatrix<double>& m, int k,
                         EigenStrategy strategy = EigenStrategy::automatic);

/// Frobenius norm of the sines of the principal angles between the
/// column spaces of two orthonormal n x d matrices:
/// sqrt(sum_i (1 - sigma_i^2)) over singular values of y^T yt.
double sin_theta_distance(const Eigen::MatrixXd& y, const Eigen::MatrixXd& yt);

} // namespace amos
