#include "lgap/deepc.hpp"

namespace lgap {

Eigen::VectorXi deepc_row_permutation(int t_ini, int t_f, int inputs, int outputs) {
    if (t_ini < 1 || t_f < 1 || inputs < 1 || outputs < 1) {
        throw DimensionError("partition sizes must be positive");
    }
    const int steps = t_ini + t_f;
    const int q = inputs + outputs;
    Eigen::VectorXi perm(q * steps);
    int pos = 0;
    for (int t = 0; t < steps; ++t) {
        for (int i = 0; i < inputs; ++i) perm(pos++) = t * q + i;
    }
    for (int t = 0; t < steps; ++t) {
        for (int i = 0; i < outputs; ++i) perm(pos++) = t * q + inputs + i;
    }
    return perm;
}

DeePCBlocks partition_data_matrix(const Eigen::MatrixXd& d, int t_ini, int t_f, int inputs,
                                  int outputs) {
    const Eigen::VectorXi perm = deepc_row_permutation(t_ini, t_f, inputs, outputs);
    if (d.rows() != perm.size()) {
        throw DimensionError("data matrix must have q * (t_ini + t_f) = " +
                             std::to_string(perm.size()) + " rows, got " +
                             std::to_string(d.rows()));
    }
    Eigen::MatrixXd stacked(d.rows(), d.cols());
    for (Eigen::Index i = 0; i < perm.size(); ++i) stacked.row(i) = d.row(perm(i));

    DeePCBlocks blocks;
    const int mu = inputs * t_ini;
    const int mf = inputs * t_f;
    const int pu = outputs * t_ini;
    const int pf = outputs * t_f;
    blocks.u_past = stacked.topRows(mu);
    blocks.u_future = stacked.middleRows(mu, mf);
    blocks.y_past = stacked.middleRows(mu + mf, pu);
    blocks.y_future = stacked.bottomRows(pf);
    return blocks;
}

namespace {

void validate(const DeePCProblem& p) {
    const auto& b = p.blocks;
    const Eigen::Index cols = b.u_past.cols();
    if (b.u_future.cols() != cols || b.y_past.cols() != cols || b.y_future.cols() != cols) {
        throw DimensionError("data blocks disagree on column count");
    }
    if (cols < 1) throw DimensionError("data blocks are empty");
    if (p.u_ini.size() != b.u_past.rows() || p.y_ini.size() != b.y_past.rows()) {
        throw DimensionError("initial trajectory length does not match the past blocks");
    }
    if (p.reference.size() != b.y_future.rows()) {
        throw DimensionError("reference length does not match the future output block");
    }
    if (!p.weights.valid()) throw DimensionError("weights must be strictly positive");
}

double cost_of(const DeePCProblem& p, const Eigen::VectorXd& g) {
    const double ey = (p.blocks.y_future * g - p.reference).squaredNorm();
    const double eu = (p.blocks.u_future * g).squaredNorm();
    return p.weights.output_weight * ey + p.weights.input_weight * eu +
           p.weights.g_regularization * g.squaredNorm();
}

}  // namespace

DeePCSolution solve_deepc(const DeePCProblem& problem, bool relax_infeasible) {
    validate(problem);
    const auto& blocks = problem.blocks;
    const Eigen::Index ng = blocks.u_past.cols();
    const Eigen::Index na = blocks.u_past.rows() + blocks.y_past.rows();

    const Eigen::MatrixXd hess =
        2.0 * (problem.weights.output_weight * blocks.y_future.transpose() * blocks.y_future +
               problem.weights.input_weight * blocks.u_future.transpose() * blocks.u_future +
               problem.weights.g_regularization * Eigen::MatrixXd::Identity(ng, ng));
    const Eigen::VectorXd grad_const =
        2.0 * problem.weights.output_weight * blocks.y_future.transpose() * problem.reference;

    Eigen::MatrixXd constraints(na, ng);
    constraints.topRows(blocks.u_past.rows()) = blocks.u_past;
    constraints.bottomRows(blocks.y_past.rows()) = blocks.y_past;
    Eigen::VectorXd rhs_eq(na);
    rhs_eq.head(problem.u_ini.size()) = problem.u_ini;
    rhs_eq.tail(problem.y_ini.size()) = problem.y_ini;

    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(ng + na, ng + na);
    kkt.topLeftCorner(ng, ng) = hess;
    kkt.topRightCorner(ng, na) = constraints.transpose();
    kkt.bottomLeftCorner(na, ng) = constraints;
    Eigen::VectorXd rhs(ng + na);
    rhs.head(ng) = grad_const;
    rhs.tail(na) = rhs_eq;

    // complete orthogonal decomposition gives the minimum-norm solution when
    // dependent constraint rows make the KKT matrix singular
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> kkt_solver(kkt);
    Eigen::VectorXd z = kkt_solver.solve(rhs);
    z += kkt_solver.solve(rhs - kkt * z);  // one step of iterative refinement

    DeePCSolution sol;
    sol.g = z.head(ng);

    const double feasibility = (constraints * sol.g - rhs_eq).norm();
    if (feasibility > 1e-6 * (1.0 + rhs_eq.norm())) {
        if (!relax_infeasible) {
            throw InfeasibleError("initial-condition constraints are inconsistent (residual " +
                                      std::to_string(feasibility) + ")",
                                  feasibility);
        }
        // least-squares constraint satisfaction, then minimize the cost over
        // the remaining freedom
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(constraints);
        const Eigen::VectorXd g_ls = cod.solve(rhs_eq);
        const Eigen::Index rank = cod.rank();
        const Eigen::MatrixXd z_full =
            (cod.matrixZ() * cod.colsPermutation().inverse()).bottomRows(ng - rank).transpose();
        Eigen::VectorXd g = g_ls;
        if (z_full.cols() > 0) {
            const Eigen::MatrixXd reduced = z_full.transpose() * hess * z_full;
            const Eigen::VectorXd xi =
                reduced.ldlt().solve(z_full.transpose() * (grad_const - hess * g_ls));
            g += z_full * xi;
        }
        sol.g = g;
        sol.constraints_relaxed = true;
        const Eigen::VectorXd multipliers =
            Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(constraints.transpose())
                .solve(grad_const - hess * sol.g);
        sol.kkt_residual = (hess * sol.g + constraints.transpose() * multipliers - grad_const)
                               .norm() /
                           (1.0 + rhs.norm());
    } else {
        sol.kkt_residual = (kkt * z - rhs).norm() / (1.0 + rhs.norm());
    }

    sol.u_star = blocks.u_future * sol.g;
    sol.y_star = blocks.y_future * sol.g;
    sol.cost = cost_of(problem, sol.g);
    return sol;
}

}  // namespace lgap
