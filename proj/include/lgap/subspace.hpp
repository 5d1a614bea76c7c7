#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "lgap/errors.hpp"

namespace lgap {

/// Relative cutoff for numerical rank: singular values sigma_i with
/// sigma_i / sigma_1 > tol count towards the rank.
inline constexpr double kRankRelTol = 1e-8;

/// Orthonormality tolerance enforced on basis construction.
inline constexpr double kOrthoTol = 1e-10;

/**
 * @brief An orthonormal k-frame spanning a k-dimensional subspace of R^N.
 *
 * The frame itself (column signs, ordering) is implementation defined;
 * consumers must depend only on the spanned subspace.
 */
class SubspaceBasis {
public:
    /// Wraps a matrix whose columns are already orthonormal.
    /// Throws DimensionError if columns are empty or not orthonormal within tol.
    explicit SubspaceBasis(Eigen::MatrixXd columns, double tol = kOrthoTol);

    [[nodiscard]] Eigen::Index ambient_dim() const { return columns_.rows(); }
    [[nodiscard]] Eigen::Index rank() const { return columns_.cols(); }
    [[nodiscard]] const Eigen::MatrixXd& columns() const { return columns_; }

private:
    Eigen::MatrixXd columns_;
};

/// Principal angles between two subspaces, nondecreasing, each in [0, pi/2].
struct PrincipalAngles {
    std::vector<double> angles;

    [[nodiscard]] double max() const { return angles.empty() ? 0.0 : angles.back(); }
};

/// Number of singular values above rel_tol * sigma_max.
[[nodiscard]] Eigen::Index numerical_rank(const Eigen::VectorXd& singular_values,
                                          double rel_tol = kRankRelTol);

/**
 * @brief Orthonormal basis of the column space of m from its leading left
 * singular vectors.
 *
 * With target_rank the basis has exactly that many columns (truncated SVD);
 * otherwise the numerical rank at rel_tol decides.
 * Throws Error on an all-zero matrix and DimensionError if target_rank
 * exceeds min(rows, cols).
 */
[[nodiscard]] SubspaceBasis orthonormal_basis(const Eigen::MatrixXd& m,
                                              std::optional<Eigen::Index> target_rank = {},
                                              double rel_tol = kRankRelTol);

/// Orthogonal projector B * B^T onto the spanned subspace.
[[nodiscard]] Eigen::MatrixXd projector(const SubspaceBasis& basis);

/// Orthonormal basis of the orthogonal complement, N x (N - k).
[[nodiscard]] Eigen::MatrixXd orthonormal_complement(const SubspaceBasis& basis);

/// Principal angles via the SVD of V^T W; cosines are clamped into [0, 1]
/// before arccos to absorb round-off. Throws DimensionError on ambient mismatch.
[[nodiscard]] PrincipalAngles principal_angles(const SubspaceBasis& v, const SubspaceBasis& w);

/// Largest singular value; 0 for an empty or zero matrix.
[[nodiscard]] double spectral_norm(const Eigen::MatrixXd& m);

}  // namespace lgap
