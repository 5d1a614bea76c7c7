#include "lgap/subspace.hpp"

#include <algorithm>
#include <cmath>

namespace lgap {

SubspaceBasis::SubspaceBasis(Eigen::MatrixXd columns, double tol)
    : columns_(std::move(columns)) {
    if (columns_.rows() == 0 || columns_.cols() == 0) {
        throw DimensionError("subspace basis must have at least one column");
    }
    if (columns_.cols() > columns_.rows()) {
        throw DimensionError("subspace rank cannot exceed ambient dimension");
    }
    const Eigen::MatrixXd gram = columns_.transpose() * columns_;
    const double defect =
        (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (defect > tol) {
        throw DimensionError("basis columns are not orthonormal (defect " +
                             std::to_string(defect) + ")");
    }
}

Eigen::Index numerical_rank(const Eigen::VectorXd& singular_values, double rel_tol) {
    if (singular_values.size() == 0) return 0;
    const double cutoff = rel_tol * singular_values(0);
    if (!(singular_values(0) > 0.0)) return 0;
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
        if (singular_values(i) > cutoff) ++r;
    }
    return r;
}

SubspaceBasis orthonormal_basis(const Eigen::MatrixXd& m,
                                std::optional<Eigen::Index> target_rank,
                                double rel_tol) {
    if (m.rows() == 0 || m.cols() == 0 || m.cwiseAbs().maxCoeff() == 0.0) {
        throw Error("zero matrix has no basis");
    }
    if (target_rank && (*target_rank < 1 || *target_rank > std::min(m.rows(), m.cols()))) {
        throw DimensionError("target rank exceeds min(rows, cols)");
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
    const Eigen::Index k =
        target_rank ? *target_rank : numerical_rank(svd.singularValues(), rel_tol);
    return SubspaceBasis(svd.matrixU().leftCols(k));
}

Eigen::MatrixXd projector(const SubspaceBasis& basis) {
    return basis.columns() * basis.columns().transpose();
}

Eigen::MatrixXd orthonormal_complement(const SubspaceBasis& basis) {
    const Eigen::Index n = basis.ambient_dim();
    const Eigen::Index k = basis.rank();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(basis.columns(), Eigen::ComputeFullU);
    return svd.matrixU().rightCols(n - k);
}

PrincipalAngles principal_angles(const SubspaceBasis& v, const SubspaceBasis& w) {
    if (v.ambient_dim() != w.ambient_dim()) {
        throw DimensionError("principal angles need equal ambient dimensions");
    }
    const Eigen::MatrixXd product = v.columns().transpose() * w.columns();
    Eigen::JacobiSVD<Eigen::MatrixXd> cos_svd(product);
    const Eigen::VectorXd cosines = cos_svd.singularValues();  // descending
    const Eigen::Index r = cosines.size();

    // sine route: singular values of (I - P_V) W resolve the small angles the
    // cosine route cannot (arccos is ill-conditioned near 1)
    const Eigen::MatrixXd residual = w.columns() - v.columns() * product;
    Eigen::JacobiSVD<Eigen::MatrixXd> sin_svd(residual);
    const Eigen::VectorXd sines_desc = sin_svd.singularValues();

    PrincipalAngles out;
    out.angles.reserve(static_cast<std::size_t>(r));
    for (Eigen::Index i = 0; i < r; ++i) {
        const double c = std::clamp(cosines(i), 0.0, 1.0);
        // the r smallest sines correspond to the angles, ascending
        const double s = std::clamp(sines_desc(sines_desc.size() - 1 - i), 0.0, 1.0);
        out.angles.push_back(c * c > 0.5 ? std::asin(s) : std::acos(c));
    }
    return out;
}

double spectral_norm(const Eigen::MatrixXd& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues()(0);
}

}  // namespace lgap
