#pragma once

#include <Eigen/Dense>
#include <string>

#include "lgap/subspace.hpp"
#include "lgap/trajectory.hpp"

namespace lgap {

/// Block-Hankel matrix of a trajectory: column j stacks samples j..j+depth-1.
struct HankelMatrix {
    int depth = 0;
    Eigen::MatrixXd data;  // (q * depth) x (T - depth + 1)
};

/// Rank report of the excitation condition rank H_L(w) = mL + n.
struct ExcitationReport {
    Eigen::Index observed_rank = 0;
    Eigen::Index required_rank = 0;
    int depth = 0;
    bool pass = false;  // observed == required

    [[nodiscard]] std::string describe() const;
};

/// Data cannot represent the restricted behavior at the requested depth.
class ExcitationError : public Error {
public:
    ExcitationError(const std::string& what, ExcitationReport report)
        : Error(what), report(report) {}

    ExcitationReport report;
};

[[nodiscard]] HankelMatrix hankel(const Trajectory& w, int depth);

/// Checks rank H_L(w) against mL + n. Throws ExcitationError when the matrix
/// has fewer columns than the required rank ("insufficient columns") and
/// DimensionError when depth <= lag or depth > T.
[[nodiscard]] ExcitationReport excitation_check(const Trajectory& w, int depth,
                                                const Complexity& c,
                                                double rel_tol = kRankRelTol);

/**
 * @brief Orthonormal basis of the restricted behavior spanned by the data.
 *
 * Always returns exactly mL + n columns (the leading left singular vectors
 * of the Hankel matrix); with noisy data the trailing directions are
 * truncated. Refuses with the rank report when the data is under-excited
 * (observed rank < mL + n).
 */
[[nodiscard]] SubspaceBasis behavior_basis(const Trajectory& w, int depth,
                                           const Complexity& c,
                                           double rel_tol = kRankRelTol);

/**
 * @brief Single-input single-output autoregressive window model.
 *
 * y_{t+L-1} = sum_{k=0}^{L-2} a_k y_{t+k} + sum_{k=0}^{L-1} b_k u_{t+k}
 * over windows of length L.
 */
struct ArModel {
    int window = 0;     // L
    Eigen::VectorXd a;  // a_0 .. a_{L-2}
    Eigen::VectorXd b;  // b_0 .. b_{L-1}
};

/// Behavior in graph form, Image [I; F] with F of shape r x s.
struct GraphForm {
    Eigen::MatrixXd f;
};

/**
 * @brief Graph-form row of a SISO AR model.
 *
 * F = [a_0 b_0 a_1 b_1 ... a_{L-2} b_{L-2} b_{L-1}], a 1 x (2L-1) row acting
 * on trajectories ordered col(y_0, u_0, ..., y_{L-2}, u_{L-2}, u_{L-1});
 * the behavior Image [I; F] appends y_{L-1} = F * (free part).
 */
[[nodiscard]] GraphForm ar_graph_form(const ArModel& model);

/// Orthonormal basis of Image [I; F]: s columns in ambient dimension s + r.
[[nodiscard]] SubspaceBasis graph_form_basis(const GraphForm& g);

/**
 * @brief Index map from the interleaved window stacking to the graph-form
 * ordering, for SISO windows of length L.
 *
 * Hankel columns stack col(u_0, y_0, u_1, y_1, ..., u_{L-1}, y_{L-1});
 * the graph form orders col(y_0, u_0, ..., y_{L-2}, u_{L-2}, u_{L-1}, y_{L-1}).
 * Entry i gives the interleaved index that lands at graph position i, so
 * reordered(i) = stacked(perm(i)).
 */
[[nodiscard]] Eigen::VectorXi graph_ordering_permutation(int window);

}  // namespace lgap
