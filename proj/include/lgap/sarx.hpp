#pragma once

#include <functional>
#include <random>
#include <span>
#include <vector>

#include "lgap/trajectory.hpp"

namespace lgap {

/// One SISO ARX mode: y_t = sum_i a[i] y_{t-1-i} + sum_j b[j] u_{t-1-j}.
struct ArxMode {
    std::vector<double> a;
    std::vector<double> b;
};

/// Switched ARX plant with truncated Gaussian observation noise.
struct SarxSystem {
    std::vector<ArxMode> modes;
    double noise_sigma = 0.0;  // samples truncated to [-3 sigma, 3 sigma]

    /// The two-mode benchmark plant:
    /// mode 1: y_t = 0.2 y_{t-1} + 0.24 y_{t-2} + 2 u_{t-1}
    /// mode 2: y_t = 0.7 y_{t-1} - 0.12 y_{t-2} + 1 u_{t-1}
    [[nodiscard]] static SarxSystem benchmark(double sigma = 1e-4);

    [[nodiscard]] const ArxMode& mode(int mode_id) const;  // 1-based id
};

/// Mode schedule: ordered (start_time, mode_id) entries; first entry at t = 0,
/// start times strictly increasing.
struct ModeSchedule {
    std::vector<std::pair<int, int>> entries;

    [[nodiscard]] static ModeSchedule constant(int mode_id);
    [[nodiscard]] int mode_at(int t) const;
    void validate(int mode_count) const;
};

using Rng = std::mt19937_64;

/// Sample of N(0, sigma^2) conditioned on |n| <= 3 sigma, by rejection.
[[nodiscard]] double truncated_gaussian(double sigma, Rng& rng);

/// One plant step. Histories are most-recent-first: y_hist[0] = y_{t-1}.
/// Missing history (shorter spans) counts as zero. rng == nullptr turns the
/// observation noise off.
[[nodiscard]] double sarx_step(const SarxSystem& system, int mode_id,
                               std::span<const double> y_hist, std::span<const double> u_hist,
                               Rng* rng);

using InputLaw = std::function<double(Rng&)>;

/// i.i.d. uniform on [-amplitude, amplitude].
[[nodiscard]] InputLaw uniform_input_law(double amplitude = 1.0);

/**
 * @brief Simulates one mode under the input law until the data passes the
 * rank condition at the given depth and complexity, redrawing inputs up to
 * max_retries times. Zero initial history.
 */
[[nodiscard]] Trajectory generate_excited_trajectory(const SarxSystem& system, int mode_id,
                                                     int length, Rng& rng,
                                                     const InputLaw& law = uniform_input_law(),
                                                     int depth = 7,
                                                     const Complexity& c = {1, 2, 2},
                                                     int max_retries = 10);

/// Simulates one mode with the given inputs (no excitation check).
[[nodiscard]] Trajectory simulate_mode(const SarxSystem& system, int mode_id,
                                       std::span<const double> inputs, Rng* rng);

}  // namespace lgap
