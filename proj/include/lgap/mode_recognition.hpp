#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <optional>
#include <vector>

#include "lgap/deepc.hpp"
#include "lgap/metrics.hpp"
#include "lgap/sarx.hpp"

namespace lgap {

/// Piecewise-constant square-wave reference: +amplitude for the first half of
/// each period, -amplitude for the second half.
struct ReferenceSignal {
    double amplitude = 1.0;
    int period = 20;

    [[nodiscard]] double at(int t) const {
        return (t % period) < period / 2 ? amplitude : -amplitude;
    }
};

/// Configuration of the online mode-recognition and control loop.
struct RecognitionConfig {
    int t_ini = 2;
    int t_f = 5;
    int lag = 2;
    int order = 2;
    double epsilon = 0.3;     // swap threshold on the gap
    int window_columns = 15;  // M, number of window columns kept
    int horizon = 70;
    DeePCWeights weights{};
    ReferenceSignal reference{};
    double dither_amplitude = 0.0;  // uniform dither added to the applied input
    std::uint64_t seed = 1;
    int initial_data_mode = 1;
    int initial_data_length = 60;
    double initial_data_amplitude = 1.0;

    [[nodiscard]] int depth() const { return t_ini + t_f; }
    [[nodiscard]] int basis_dim() const { return t_ini + t_f + order; }
    [[nodiscard]] Complexity complexity() const { return {1, lag, order}; }
    void validate() const;
};

/// Basis of the leading `dim` left singular vectors of a window matrix.
/// Reports (optionally) whether the trailing kept directions fell below the
/// numerical-rank threshold. Throws Error("window not full") with fewer than
/// `dim` columns.
[[nodiscard]] SubspaceBasis window_basis(const Eigen::MatrixXd& window, Eigen::Index dim,
                                         double rel_tol = kRankRelTol,
                                         bool* rank_deficient = nullptr);

/**
 * @brief Moving-window consistency monitor with data-matrix swapping.
 *
 * Keeps the current predictive data matrix D with its basis and a sliding
 * window of the most recent trajectory columns. A step compares the window
 * basis against the data basis with the gap metric and swaps D for the
 * window when the gap exceeds the threshold.
 */
class ModeRecognizer {
public:
    ModeRecognizer(Eigen::MatrixXd data, Eigen::Index basis_dim, double epsilon,
                   int window_columns, double rel_tol = kRankRelTol);

    void push_column(const Eigen::VectorXd& column);
    [[nodiscard]] bool window_full() const {
        return static_cast<int>(window_.size()) == window_columns_;
    }

    struct Decision {
        double gap = 0.0;
        bool swap = false;
        bool window_rank_deficient = false;
    };

    /// Runs one recognition step; requires a full window.
    Decision step();

    [[nodiscard]] const Eigen::MatrixXd& data() const { return data_; }
    [[nodiscard]] const SubspaceBasis& data_basis() const { return data_basis_; }
    [[nodiscard]] Eigen::MatrixXd window_matrix() const;

private:
    Eigen::MatrixXd data_;
    SubspaceBasis data_basis_;
    double epsilon_;
    int window_columns_;
    double rel_tol_;
    std::deque<Eigen::VectorXd> window_;
};

/// One closed-loop step of the experiment log.
struct StepRecord {
    int t = 0;
    double input = 0.0;
    double output = 0.0;
    double reference = 0.0;
    double gap = 0.0;
    bool gap_valid = false;  // false during warm-up
    bool swap = false;
    int mode = 0;
    bool window_rank_deficient = false;
    bool constraints_relaxed = false;
};

/// Maximal run of consecutive swap steps, treated as one adaptation.
struct SwapEvent {
    int first = 0;
    int last = 0;
};

struct ExperimentLog {
    std::vector<StepRecord> steps;
    std::vector<int> swap_steps;

    [[nodiscard]] std::vector<SwapEvent> swap_events() const;
    /// Tracking RMSE of y against r over steps [lo, hi) clipped to the log.
    [[nodiscard]] double rmse(int lo, int hi) const;
};

/// Runs the full loop: recognition (when the window is full), receding-horizon
/// control, plant step, window update. A baseline without recognition is the
/// same loop with epsilon = +infinity.
[[nodiscard]] ExperimentLog run_closed_loop(const RecognitionConfig& config,
                                            const SarxSystem& system,
                                            const ModeSchedule& schedule);

/// Writes the per-step log as CSV with header t,u,y,r,gap,swap,mode.
/// The gap field is empty during warm-up. Values carry 17 significant digits.
void write_log_csv(const ExperimentLog& log, const std::filesystem::path& path);

/// Pre/post tracking quality around one adaptation event.
struct EventReport {
    SwapEvent event;
    double rmse_before = 0.0;  // the `margin` steps before event.first
    double rmse_after = 0.0;   // the `margin` steps after event.last
};

struct ExperimentSummary {
    std::vector<int> swap_steps;
    std::vector<EventReport> events;
    double total_rmse = 0.0;
    std::vector<std::tuple<int, int, double>> schedule_segments;  // [start, end) + rmse
    std::vector<int> window_rank_deficient_steps;
    std::vector<int> constraints_relaxed_steps;
};

[[nodiscard]] ExperimentSummary summarize(const ExperimentLog& log, const ModeSchedule& schedule,
                                          int margin = 15);

}  // namespace lgap
