#include "lgap/metrics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace lgap {

GapResult gap(const SubspaceBasis& v, const SubspaceBasis& w) {
    if (v.ambient_dim() != w.ambient_dim()) {
        throw DimensionError("gap needs equal ambient dimensions");
    }
    GapResult out;
    if (v.columns() == w.columns()) return out;  // identical frames, exactly zero
    out.via_projectors = spectral_norm(projector(v) - projector(w));
    out.via_complement = spectral_norm(orthonormal_complement(w).transpose() * v.columns());
    if (v.rank() != w.rank()) {
        out.rank_mismatch = true;
        out.value = 1.0;
        out.theta_max = std::numbers::pi / 2;
        return out;
    }
    // the complement form resolves tiny angles where arccos of a near-unit
    // cosine cannot
    out.value = std::clamp(out.via_complement, 0.0, 1.0);
    out.theta_max = std::asin(out.value);
    return out;
}

double directed_gap(const SubspaceBasis& v, const SubspaceBasis& w) {
    if (v.ambient_dim() != w.ambient_dim()) {
        throw DimensionError("directed gap needs equal ambient dimensions");
    }
    const Eigen::Index n = v.ambient_dim();
    const Eigen::MatrixXd residual =
        (Eigen::MatrixXd::Identity(n, n) - projector(w)) * projector(v);
    return std::min(spectral_norm(residual), 1.0);
}

GapResult l_gap(const Trajectory& w1, const Trajectory& w2, int depth, const Complexity& c,
                double rel_tol) {
    return gap(behavior_basis(w1, depth, c, rel_tol), behavior_basis(w2, depth, c, rel_tol));
}

GapBounds graph_form_gap_bounds(const GraphForm& f, const GraphForm& f_tilde) {
    if (f.f.rows() != f_tilde.f.rows() || f.f.cols() != f_tilde.f.cols()) {
        throw DimensionError("graph forms must have equal shape");
    }
    GapBounds out;
    out.coefficient_distance = spectral_norm(f.f - f_tilde.f);
    const double nf = spectral_norm(f.f);
    const double nft = spectral_norm(f_tilde.f);
    out.lower = out.coefficient_distance / (std::sqrt(1.0 + nf * nf) * std::sqrt(1.0 + nft * nft));
    out.upper = out.coefficient_distance;
    out.gap = gap(graph_form_basis(f), graph_form_basis(f_tilde)).value;
    return out;
}

std::string_view metric_name(GrassmannMetric metric) {
    switch (metric) {
        case GrassmannMetric::Asimov: return "asimov";
        case GrassmannMetric::BinetCauchy: return "binet-cauchy";
        case GrassmannMetric::Chordal: return "chordal";
        case GrassmannMetric::FubiniStudy: return "fubini-study";
        case GrassmannMetric::Grassmann: return "grassmann";
        case GrassmannMetric::Martin: return "martin";
        case GrassmannMetric::Procrustes: return "procrustes";
        case GrassmannMetric::Projection: return "projection";
        case GrassmannMetric::Spectral: return "spectral";
    }
    return "unknown";
}

std::optional<GrassmannMetric> metric_from_name(std::string_view name) {
    for (GrassmannMetric m : kAllGrassmannMetrics) {
        if (metric_name(m) == name) return m;
    }
    return std::nullopt;
}

double grassmann_metric(GrassmannMetric metric, const SubspaceBasis& v,
                        const SubspaceBasis& w) {
    if (v.ambient_dim() != w.ambient_dim()) {
        throw DimensionError("metric needs equal ambient dimensions");
    }
    if (v.rank() != w.rank()) {
        throw DimensionError("metric needs equal subspace ranks");
    }
    const PrincipalAngles angles = principal_angles(v, w);

    double cos_product = 1.0;
    double sin_sq_sum = 0.0;
    double theta_sq_sum = 0.0;
    double half_sin_sq_sum = 0.0;
    for (double theta : angles.angles) {
        cos_product *= std::cos(theta);
        const double s = std::sin(theta);
        sin_sq_sum += s * s;
        theta_sq_sum += theta * theta;
        const double h = std::sin(theta / 2.0);
        half_sin_sq_sum += h * h;
    }
    const double theta_max = angles.max();

    switch (metric) {
        case GrassmannMetric::Asimov:
            return theta_max;
        case GrassmannMetric::BinetCauchy:
            return std::sqrt(std::max(0.0, 1.0 - cos_product * cos_product));
        case GrassmannMetric::Chordal:
            return std::sqrt(sin_sq_sum);
        case GrassmannMetric::FubiniStudy:
            return std::acos(std::clamp(cos_product, 0.0, 1.0));
        case GrassmannMetric::Grassmann:
            return std::sqrt(theta_sq_sum);
        case GrassmannMetric::Martin: {
            if (cos_product <= 1e-12) return std::numeric_limits<double>::infinity();
            return std::sqrt(std::max(0.0, -2.0 * std::log(cos_product)));
        }
        case GrassmannMetric::Procrustes:
            return 2.0 * std::sqrt(half_sin_sq_sum);
        case GrassmannMetric::Projection:
            return std::sin(theta_max);
        case GrassmannMetric::Spectral:
            return 2.0 * std::sin(theta_max / 2.0);
    }
    throw Error("unknown metric id");
}

double worst_case_projection_error(const SubspaceBasis& v, const Eigen::VectorXd& w) {
    if (w.size() != v.ambient_dim()) {
        throw DimensionError("vector dimension does not match the subspace ambient space");
    }
    const double norm = w.norm();
    if (norm == 0.0) throw Error("projection error of the zero vector is undefined");
    const Eigen::VectorXd residual = w - v.columns() * (v.columns().transpose() * w);
    return std::min(residual.norm() / norm, 1.0);
}

std::vector<GapProfilePoint> gap_profile(const Trajectory& w1, const Trajectory& w2,
                                         int depth_lo, int depth_hi, const Complexity& c) {
    if (depth_lo > depth_hi) throw DimensionError("empty depth range");
    std::vector<GapProfilePoint> profile;
    profile.reserve(static_cast<std::size_t>(depth_hi - depth_lo + 1));
    for (int depth = depth_lo; depth <= depth_hi; ++depth) {
        GapProfilePoint point;
        point.depth = depth;
        try {
            point.gap = l_gap(w1, w2, depth, c).value;
            point.ok = true;
        } catch (const Error& e) {
            point.error = e.what();
        }
        profile.push_back(std::move(point));
    }
    return profile;
}

}  // namespace lgap
