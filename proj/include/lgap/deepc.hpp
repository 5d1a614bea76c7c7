#pragma once

#include <Eigen/Dense>

#include "lgap/errors.hpp"

namespace lgap {

/// Cost weights of the data-driven optimal control problem:
/// output_weight ||y - r||^2 + input_weight ||u||^2 + g_regularization ||g||^2.
struct DeePCWeights {
    double output_weight = 2000.0;
    double input_weight = 1.0;
    double g_regularization = 20.0;

    [[nodiscard]] bool valid() const {
        return output_weight > 0.0 && input_weight > 0.0 && g_regularization > 0.0;
    }
};

/// Row blocks of a data matrix reordered into col(u_past, u_future, y_past,
/// y_future) layout.
struct DeePCBlocks {
    Eigen::MatrixXd u_past;    // (m * t_ini) x c
    Eigen::MatrixXd u_future;  // (m * t_f) x c
    Eigen::MatrixXd y_past;    // (p * t_ini) x c
    Eigen::MatrixXd y_future;  // (p * t_f) x c
};

/// One receding-horizon subproblem.
struct DeePCProblem {
    DeePCBlocks blocks;
    Eigen::VectorXd u_ini;      // length m * t_ini
    Eigen::VectorXd y_ini;      // length p * t_ini
    Eigen::VectorXd reference;  // length p * t_f
    DeePCWeights weights;
};

struct DeePCSolution {
    Eigen::VectorXd g;
    Eigen::VectorXd u_star;  // u_future * g
    Eigen::VectorXd y_star;  // y_future * g
    double cost = 0.0;
    double kkt_residual = 0.0;        // relative residual of the KKT system
    bool constraints_relaxed = false; // initial condition satisfied in least squares only
};

/// Initial-condition constraints are inconsistent with the data matrix.
class InfeasibleError : public Error {
public:
    InfeasibleError(const std::string& what, double residual)
        : Error(what), residual(residual) {}

    double residual;
};

/**
 * @brief Index map from interleaved data-matrix rows to the stacked layout.
 *
 * Row blocks per time step hold m input rows then p output rows; entry i of
 * the returned vector is the interleaved row that lands at stacked position i
 * (all inputs in time order, then all outputs).
 */
[[nodiscard]] Eigen::VectorXi deepc_row_permutation(int t_ini, int t_f, int inputs,
                                                    int outputs);

/// Splits an interleaved data matrix with q * (t_ini + t_f) rows into the four
/// past/future blocks. Throws DimensionError on a row-count mismatch.
[[nodiscard]] DeePCBlocks partition_data_matrix(const Eigen::MatrixXd& d, int t_ini, int t_f,
                                                int inputs, int outputs);

/**
 * @brief Solves the receding-horizon subproblem by a dense KKT factorization.
 *
 * The future trajectory is eliminated through the data matrix, leaving a
 * strictly convex quadratic in g with the initial-condition equalities;
 * rank-deficient but consistent constraints get minimum-norm multipliers.
 * Inconsistent constraints throw InfeasibleError unless relax_infeasible is
 * set, in which case they are met in least squares and the solution flagged.
 */
[[nodiscard]] DeePCSolution solve_deepc(const DeePCProblem& problem,
                                        bool relax_infeasible = false);

}  // namespace lgap
