#pragma once

// Independent reference implementations used only to check the library.
// Each one deliberately avoids the code path it validates.

#include <Eigen/Dense>
#include <vector>

#include "lgap/deepc.hpp"
#include "lgap/subspace.hpp"

namespace lgap::testing {

/// Largest singular value by power iteration on M^T M (matvec only).
[[nodiscard]] double power_iteration_norm(const Eigen::MatrixXd& m, int iterations = 2000);

/// Principal angles between two 2-dimensional subspaces by the recursive
/// maximization definition: a grid search over the first subspace's unit
/// circle with golden-section refinement, the partner vector obtained in
/// closed form, then the deflated second pair. No SVD involved.
[[nodiscard]] std::vector<double> principal_angles_recursive_oracle(const SubspaceBasis& v,
                                                                    const SubspaceBasis& w,
                                                                    int grid = 2000);

/// Column-pivoted modified Gram-Schmidt basis of the first k directions.
[[nodiscard]] Eigen::MatrixXd gram_schmidt_basis(const Eigen::MatrixXd& m, Eigen::Index k);

/// Reference solve of the control subproblem in the unreduced variables
/// (g, u, y) with explicit coupling constraints, as one dense KKT system.
struct UnreducedSolution {
    Eigen::VectorXd g;
    double cost = 0.0;
};
[[nodiscard]] UnreducedSolution solve_deepc_unreduced(const DeePCProblem& problem);

}  // namespace lgap::testing
