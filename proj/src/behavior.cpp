#include "lgap/behavior.hpp"

namespace lgap {

std::string ExcitationReport::describe() const {
    const std::string observed =
        observed_rank < 0 ? "not computed" : std::to_string(observed_rank);
    return "excitation at depth " + std::to_string(depth) + ": observed rank " + observed +
           ", required " + std::to_string(required_rank) + (pass ? " (pass)" : " (fail)");
}

HankelMatrix hankel(const Trajectory& w, int depth) {
    const Eigen::Index T = w.length();
    const int q = w.width();
    if (depth < 1 || depth > T) {
        throw DimensionError("hankel depth must lie in [1, T]; got " + std::to_string(depth) +
                             " with T = " + std::to_string(T));
    }
    const Eigen::Index cols = T - depth + 1;
    HankelMatrix h;
    h.depth = depth;
    h.data.resize(static_cast<Eigen::Index>(q) * depth, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (int i = 0; i < depth; ++i) {
            h.data.block(static_cast<Eigen::Index>(i) * q, j, q, 1) =
                w.samples().row(j + i).transpose();
        }
    }
    return h;
}

namespace {

ExcitationReport rank_report(const HankelMatrix& h, int depth, const Complexity& c,
                             double rel_tol) {
    ExcitationReport report;
    report.depth = depth;
    report.required_rank = static_cast<Eigen::Index>(c.inputs) * depth + c.order;
    if (h.data.cols() < report.required_rank) {
        report.observed_rank = -1;
        throw ExcitationError("insufficient columns: Hankel matrix has " +
                                  std::to_string(h.data.cols()) + ", rank condition needs " +
                                  std::to_string(report.required_rank),
                              report);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(h.data);
    report.observed_rank = numerical_rank(svd.singularValues(), rel_tol);
    report.pass = report.observed_rank == report.required_rank;
    return report;
}

}  // namespace

ExcitationReport excitation_check(const Trajectory& w, int depth, const Complexity& c,
                                  double rel_tol) {
    if (depth <= c.lag) {
        throw DimensionError("depth must exceed the lag (" + std::to_string(depth) +
                             " <= " + std::to_string(c.lag) + ")");
    }
    return rank_report(hankel(w, depth), depth, c, rel_tol);
}

SubspaceBasis behavior_basis(const Trajectory& w, int depth, const Complexity& c,
                             double rel_tol) {
    if (depth <= c.lag) {
        throw DimensionError("depth must exceed the lag (" + std::to_string(depth) +
                             " <= " + std::to_string(c.lag) + ")");
    }
    const HankelMatrix h = hankel(w, depth);
    const ExcitationReport report = rank_report(h, depth, c, rel_tol);
    if (report.observed_rank < report.required_rank) {
        throw ExcitationError("under-excited data: " + report.describe(), report);
    }
    // noisy data carries spurious trailing directions; keep exactly mL + n
    return orthonormal_basis(h.data, report.required_rank, rel_tol);
}

GraphForm ar_graph_form(const ArModel& model) {
    const int L = model.window;
    if (L < 1 || model.a.size() != L - 1 || model.b.size() != L) {
        throw DimensionError("AR model needs L-1 'a' and L 'b' coefficients");
    }
    Eigen::MatrixXd f(1, 2 * L - 1);
    for (int k = 0; k + 1 < L; ++k) {
        f(0, 2 * k) = model.a(k);
        f(0, 2 * k + 1) = model.b(k);
    }
    f(0, 2 * L - 2) = model.b(L - 1);
    return GraphForm{std::move(f)};
}

SubspaceBasis graph_form_basis(const GraphForm& g) {
    const Eigen::Index r = g.f.rows();
    const Eigen::Index s = g.f.cols();
    if (r < 1 || s < 1) throw DimensionError("graph form must be a nonempty matrix");
    Eigen::MatrixXd stacked(s + r, s);
    stacked.topRows(s) = Eigen::MatrixXd::Identity(s, s);
    stacked.bottomRows(r) = g.f;
    return orthonormal_basis(stacked, s);
}

Eigen::VectorXi graph_ordering_permutation(int window) {
    if (window < 1) throw DimensionError("window must be positive");
    const int L = window;
    Eigen::VectorXi perm(2 * L);
    // interleaved index of u_t is 2t, of y_t is 2t + 1
    for (int t = 0; t + 1 < L; ++t) {
        perm(2 * t) = 2 * t + 1;   // y_t
        perm(2 * t + 1) = 2 * t;   // u_t
    }
    perm(2 * L - 2) = 2 * (L - 1);      // u_{L-1}
    perm(2 * L - 1) = 2 * (L - 1) + 1;  // y_{L-1}
    return perm;
}

}  // namespace lgap
