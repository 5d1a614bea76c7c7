#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>

#include "lgap/errors.hpp"

namespace lgap {

/// Structure indices of an LTI system: inputs m, lag l, order n.
struct Complexity {
    int inputs = 0;
    int lag = 0;
    int order = 0;
};

/**
 * @brief A finite input/output trajectory: T samples of (u_t, y_t).
 *
 * Stored sample-major: row t holds the m input channels followed by the
 * p output channels. All other orderings used downstream (graph forms,
 * DeePC stacking) are produced by explicit named permutations.
 */
class Trajectory {
public:
    Trajectory(Eigen::MatrixXd samples, int inputs, int outputs);

    [[nodiscard]] Eigen::Index length() const { return samples_.rows(); }
    [[nodiscard]] int width() const { return inputs_ + outputs_; }
    [[nodiscard]] int inputs() const { return inputs_; }
    [[nodiscard]] int outputs() const { return outputs_; }
    [[nodiscard]] const Eigen::MatrixXd& samples() const { return samples_; }

    [[nodiscard]] double input(Eigen::Index t, int channel = 0) const {
        return samples_(t, channel);
    }
    [[nodiscard]] double output(Eigen::Index t, int channel = 0) const {
        return samples_(t, inputs_ + channel);
    }

private:
    Eigen::MatrixXd samples_;
    int inputs_;
    int outputs_;
};

/// Formats a double with 17 significant digits (round-trips exactly).
[[nodiscard]] std::string format_full(double value);

/// Reads the trajectory CSV format: header `t,u1..um,y1..yp`, one row per step.
/// Throws ParseError naming the offending line on malformed input.
[[nodiscard]] Trajectory read_trajectory_csv(const std::filesystem::path& path);

/// Writes the trajectory CSV format with full-precision values.
void write_trajectory_csv(const Trajectory& w, const std::filesystem::path& path);

}  // namespace lgap
