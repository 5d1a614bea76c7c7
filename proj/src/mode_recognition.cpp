#include "lgap/mode_recognition.hpp"

#include <cmath>
#include <fstream>

#include "lgap/behavior.hpp"

namespace lgap {

void RecognitionConfig::validate() const {
    if (t_ini < 1 || t_f < 1 || order < 0 || lag < 0) {
        throw DimensionError("t_ini, t_f must be positive; lag, order nonnegative");
    }
    if (t_ini < lag) throw DimensionError("t_ini must be at least the lag");
    if (!(epsilon > 0.0)) throw DimensionError("epsilon must be positive");
    if (window_columns < basis_dim()) {
        throw DimensionError("window needs at least t_ini + t_f + order columns");
    }
    if (horizon < 1) throw DimensionError("horizon must be positive");
    if (!weights.valid()) throw DimensionError("weights must be strictly positive");
    if (reference.period < 2) throw DimensionError("reference period must be at least 2");
    if (dither_amplitude < 0.0) throw DimensionError("dither amplitude must be nonnegative");
    if (initial_data_length < depth() + depth() + order - 1) {
        throw DimensionError("initial data too short for the rank condition");
    }
}

SubspaceBasis window_basis(const Eigen::MatrixXd& window, Eigen::Index dim, double rel_tol,
                           bool* rank_deficient) {
    if (window.cols() < dim) throw Error("window not full");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(window, Eigen::ComputeThinU);
    if (rank_deficient != nullptr) {
        *rank_deficient = numerical_rank(svd.singularValues(), rel_tol) < dim;
    }
    return SubspaceBasis(svd.matrixU().leftCols(dim));
}

ModeRecognizer::ModeRecognizer(Eigen::MatrixXd data, Eigen::Index basis_dim, double epsilon,
                               int window_columns, double rel_tol)
    : data_(std::move(data)),
      data_basis_(window_basis(data_, basis_dim, rel_tol)),
      epsilon_(epsilon),
      window_columns_(window_columns),
      rel_tol_(rel_tol) {
    if (window_columns_ < basis_dim) {
        throw DimensionError("window must hold at least basis_dim columns");
    }
}

void ModeRecognizer::push_column(const Eigen::VectorXd& column) {
    if (column.size() != data_.rows()) {
        throw DimensionError("window column length does not match the data matrix");
    }
    window_.push_back(column);
    if (static_cast<int>(window_.size()) > window_columns_) window_.pop_front();
}

Eigen::MatrixXd ModeRecognizer::window_matrix() const {
    Eigen::MatrixXd h(data_.rows(), static_cast<Eigen::Index>(window_.size()));
    for (Eigen::Index j = 0; j < h.cols(); ++j) h.col(j) = window_[static_cast<std::size_t>(j)];
    return h;
}

ModeRecognizer::Decision ModeRecognizer::step() {
    if (!window_full()) throw Error("window not full");
    Decision decision;
    const Eigen::MatrixXd h = window_matrix();
    const SubspaceBasis h_basis =
        window_basis(h, data_basis_.rank(), rel_tol_, &decision.window_rank_deficient);
    decision.gap = gap(h_basis, data_basis_).value;
    if (decision.gap > epsilon_) {
        decision.swap = true;
        data_ = h;
        data_basis_ = h_basis;  // same truncated SVD the recomputation would give
    }
    return decision;
}

std::vector<SwapEvent> ExperimentLog::swap_events() const {
    std::vector<SwapEvent> events;
    for (int s : swap_steps) {
        if (!events.empty() && s == events.back().last + 1) {
            events.back().last = s;
        } else {
            events.push_back({s, s});
        }
    }
    return events;
}

double ExperimentLog::rmse(int lo, int hi) const {
    double sum = 0.0;
    int count = 0;
    for (const StepRecord& rec : steps) {
        if (rec.t >= lo && rec.t < hi) {
            const double e = rec.output - rec.reference;
            sum += e * e;
            ++count;
        }
    }
    return count == 0 ? 0.0 : std::sqrt(sum / count);
}

ExperimentLog run_closed_loop(const RecognitionConfig& config, const SarxSystem& system,
                              const ModeSchedule& schedule) {
    config.validate();
    schedule.validate(static_cast<int>(system.modes.size()));

    Rng rng(config.seed);
    const Trajectory initial = generate_excited_trajectory(
        system, config.initial_data_mode, config.initial_data_length, rng,
        uniform_input_law(config.initial_data_amplitude), config.depth(), config.complexity());

    ModeRecognizer recognizer(hankel(initial, config.depth()).data, config.basis_dim(),
                              config.epsilon, config.window_columns);
    DeePCBlocks blocks =
        partition_data_matrix(recognizer.data(), config.t_ini, config.t_f, 1, 1);

    std::vector<double> u_hist, y_hist;  // chronological
    ExperimentLog log;
    log.steps.reserve(static_cast<std::size_t>(config.horizon));

    const auto recent_first = [](const std::vector<double>& h) {
        std::vector<double> r(h.rbegin(), h.rend());
        return r;
    };

    for (int t = 0; t < config.horizon; ++t) {
        StepRecord rec;
        rec.t = t;
        rec.mode = schedule.mode_at(t);
        rec.reference = config.reference.at(t);

        if (recognizer.window_full()) {
            const ModeRecognizer::Decision decision = recognizer.step();
            rec.gap = decision.gap;
            rec.gap_valid = true;
            rec.swap = decision.swap;
            rec.window_rank_deficient = decision.window_rank_deficient;
            if (decision.swap) {
                blocks = partition_data_matrix(recognizer.data(), config.t_ini, config.t_f, 1, 1);
                log.swap_steps.push_back(t);
            }
        }

        DeePCProblem problem;
        problem.blocks = blocks;
        problem.weights = config.weights;
        problem.u_ini = Eigen::VectorXd::Zero(config.t_ini);
        problem.y_ini = Eigen::VectorXd::Zero(config.t_ini);
        for (int i = 0; i < config.t_ini; ++i) {
            const int idx = static_cast<int>(u_hist.size()) - config.t_ini + i;
            if (idx >= 0) {
                problem.u_ini(i) = u_hist[static_cast<std::size_t>(idx)];
                problem.y_ini(i) = y_hist[static_cast<std::size_t>(idx)];
            }
        }
        problem.reference = Eigen::VectorXd(config.t_f);
        for (int i = 0; i < config.t_f; ++i) problem.reference(i) = config.reference.at(t + i);

        DeePCSolution sol;
        try {
            sol = solve_deepc(problem);
        } catch (const InfeasibleError&) {
            sol = solve_deepc(problem, /*relax_infeasible=*/true);
            rec.constraints_relaxed = true;
        }

        double u_t = sol.u_star(0);
        if (config.dither_amplitude > 0.0) {
            std::uniform_real_distribution<double> dither(-config.dither_amplitude,
                                                          config.dither_amplitude);
            u_t += dither(rng);
        }

        const std::vector<double> y_rf = recent_first(y_hist);
        const std::vector<double> u_rf = recent_first(u_hist);
        const double y_t = sarx_step(system, rec.mode, y_rf, u_rf, &rng);

        u_hist.push_back(u_t);
        y_hist.push_back(y_t);
        rec.input = u_t;
        rec.output = y_t;

        if (static_cast<int>(u_hist.size()) >= config.depth()) {
            Eigen::VectorXd column(2 * config.depth());
            const std::size_t base = u_hist.size() - static_cast<std::size_t>(config.depth());
            for (int i = 0; i < config.depth(); ++i) {
                column(2 * i) = u_hist[base + static_cast<std::size_t>(i)];
                column(2 * i + 1) = y_hist[base + static_cast<std::size_t>(i)];
            }
            recognizer.push_column(column);
        }

        log.steps.push_back(rec);
    }
    return log;
}

void write_log_csv(const ExperimentLog& log, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write log file: " + path.string());
    out << "t,u,y,r,gap,swap,mode\n";
    for (const StepRecord& rec : log.steps) {
        out << rec.t << ',' << format_full(rec.input) << ',' << format_full(rec.output) << ','
            << format_full(rec.reference) << ',';
        if (rec.gap_valid) out << format_full(rec.gap);
        out << ',' << (rec.swap ? 1 : 0) << ',' << rec.mode << '\n';
    }
}

ExperimentSummary summarize(const ExperimentLog& log, const ModeSchedule& schedule, int margin) {
    ExperimentSummary summary;
    summary.swap_steps = log.swap_steps;
    const int horizon = static_cast<int>(log.steps.size());
    for (const SwapEvent& event : log.swap_events()) {
        EventReport report;
        report.event = event;
        report.rmse_before = log.rmse(std::max(0, event.first - margin), event.first);
        report.rmse_after = log.rmse(event.last + 1, std::min(horizon, event.last + 1 + margin));
        summary.events.push_back(report);
    }
    summary.total_rmse = log.rmse(0, horizon);
    for (const StepRecord& rec : log.steps) {
        if (rec.window_rank_deficient) summary.window_rank_deficient_steps.push_back(rec.t);
        if (rec.constraints_relaxed) summary.constraints_relaxed_steps.push_back(rec.t);
    }
    for (std::size_t i = 0; i < schedule.entries.size(); ++i) {
        const int start = schedule.entries[i].first;
        const int end =
            i + 1 < schedule.entries.size() ? schedule.entries[i + 1].first : horizon;
        summary.schedule_segments.emplace_back(start, end, log.rmse(start, end));
    }
    return summary;
}

}  // namespace lgap
