#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lgap/behavior.hpp"
#include "lgap/subspace.hpp"

namespace lgap {

/**
 * @brief Gap (projection) distance between two subspaces.
 *
 * Carries both evaluation routes of the identity
 * ||P_V - P_W||_2 = ||W_perp^T V||_2 = sin(theta_max)
 * so that callers and tests can audit their agreement.
 */
struct GapResult {
    double value = 0.0;           // sin of the largest principal angle
    double theta_max = 0.0;       // radians
    double via_projectors = 0.0;  // ||P_V - P_W||_2
    double via_complement = 0.0;  // ||W_perp^T V||_2
    bool rank_mismatch = false;   // ranks differ: value pinned to 1
};

/// Gap between equal-rank subspaces of the same ambient space.
/// Unequal ranks yield value 1 with rank_mismatch set.
[[nodiscard]] GapResult gap(const SubspaceBasis& v, const SubspaceBasis& w);

/// Directed gap ||(I - P_W) P_V||_2 in [0, 1]; ranks may differ.
[[nodiscard]] double directed_gap(const SubspaceBasis& v, const SubspaceBasis& w);

/// Gap between the restricted behaviors spanned by two datasets at the given
/// window depth. Propagates excitation failures from behavior_basis.
[[nodiscard]] GapResult l_gap(const Trajectory& w1, const Trajectory& w2, int depth,
                              const Complexity& c, double rel_tol = kRankRelTol);

/// Parametric two-sided bound on the gap between graph-form behaviors:
/// ||F - F~|| / (sqrt(1+||F||^2) sqrt(1+||F~||^2)) <= gap <= ||F - F~||.
struct GapBounds {
    double lower = 0.0;
    double gap = 0.0;
    double upper = 0.0;
    double coefficient_distance = 0.0;  // ||F - F~||_2

    [[nodiscard]] bool holds(double slack = 1e-9) const {
        return lower <= gap + slack && gap <= upper + slack;
    }
};

/// Gap between Image [I; F] and Image [I; F~] with its parametric bounds.
/// Throws DimensionError when the graph forms differ in shape.
[[nodiscard]] GapBounds graph_form_gap_bounds(const GraphForm& f, const GraphForm& f_tilde);

/// Rotation-invariant distances on the Grassmannian, all functions of the
/// principal angles.
enum class GrassmannMetric {
    Asimov,
    BinetCauchy,
    Chordal,
    FubiniStudy,
    Grassmann,
    Martin,
    Procrustes,
    Projection,
    Spectral,
};

inline constexpr std::array<GrassmannMetric, 9> kAllGrassmannMetrics = {
    GrassmannMetric::Asimov,      GrassmannMetric::BinetCauchy, GrassmannMetric::Chordal,
    GrassmannMetric::FubiniStudy, GrassmannMetric::Grassmann,   GrassmannMetric::Martin,
    GrassmannMetric::Procrustes,  GrassmannMetric::Projection,  GrassmannMetric::Spectral,
};

[[nodiscard]] std::string_view metric_name(GrassmannMetric metric);
[[nodiscard]] std::optional<GrassmannMetric> metric_from_name(std::string_view name);

/// Distance between equal-rank subspaces under the named metric.
/// Martin returns +infinity when any principal cosine vanishes.
/// Throws DimensionError on ambient or rank mismatch, Error on unknown ids.
[[nodiscard]] double grassmann_metric(GrassmannMetric metric, const SubspaceBasis& v,
                                      const SubspaceBasis& w);

/// Relative error of the best approximation of a vector within the subspace:
/// ||(I - P_V) w|| / ||w||, in [0, 1]. Throws Error on a zero vector.
[[nodiscard]] double worst_case_projection_error(const SubspaceBasis& v,
                                                 const Eigen::VectorXd& w);

/// One entry of a gap-versus-depth sweep.
struct GapProfilePoint {
    int depth = 0;
    double gap = 0.0;
    bool ok = false;
    std::string error;  // set when the rank condition failed at this depth
};

/// Gap between two datasets' behaviors for every depth in [depth_lo, depth_hi].
/// Per-depth excitation failures are recorded in the profile, not thrown.
[[nodiscard]] std::vector<GapProfilePoint> gap_profile(const Trajectory& w1,
                                                       const Trajectory& w2, int depth_lo,
                                                       int depth_hi, const Complexity& c);

}  // namespace lgap
