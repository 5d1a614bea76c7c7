// Command-line front end: gap and metric queries between trajectory files,
// singular spectra, parametric AR bounds, and the closed-loop experiment
// runner. Exit codes: 0 ok, 1 input error, 2 excitation failure.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lgap/behavior.hpp"
#include "lgap/experiment_config.hpp"
#include "lgap/metrics.hpp"
#include "lgap/trajectory.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitExcitationFailure = 2;

struct BehaviorFlags {
    int depth = 7;
    int inputs = 1;
    int lag = 2;
    int order = 2;

    [[nodiscard]] lgap::Complexity complexity() const { return {inputs, lag, order}; }
};

void add_behavior_flags(CLI::App* cmd, BehaviorFlags& flags) {
    cmd->add_option("--L", flags.depth, "window depth L")->capture_default_str();
    cmd->add_option("--m", flags.inputs, "number of inputs")->capture_default_str();
    cmd->add_option("--lag", flags.lag, "system lag")->capture_default_str();
    cmd->add_option("--n", flags.order, "system order")->capture_default_str();
}

void print_named(const std::string& name, double value) {
    std::printf("%-16s %s\n", name.c_str(), lgap::format_full(value).c_str());
}

int cmd_gap(const std::string& file1, const std::string& file2, const BehaviorFlags& flags) {
    const lgap::Trajectory w1 = lgap::read_trajectory_csv(file1);
    const lgap::Trajectory w2 = lgap::read_trajectory_csv(file2);
    const lgap::GapResult result = lgap::l_gap(w1, w2, flags.depth, flags.complexity());
    print_named("gap", result.value);
    print_named("theta_max", result.theta_max);
    print_named("via_projectors", result.via_projectors);
    print_named("via_complement", result.via_complement);
    return kExitOk;
}

int cmd_metrics(const std::string& file1, const std::string& file2, const BehaviorFlags& flags) {
    const lgap::Trajectory w1 = lgap::read_trajectory_csv(file1);
    const lgap::Trajectory w2 = lgap::read_trajectory_csv(file2);
    const lgap::SubspaceBasis b1 = lgap::behavior_basis(w1, flags.depth, flags.complexity());
    const lgap::SubspaceBasis b2 = lgap::behavior_basis(w2, flags.depth, flags.complexity());
    for (lgap::GrassmannMetric metric : lgap::kAllGrassmannMetrics) {
        print_named(std::string(lgap::metric_name(metric)),
                    lgap::grassmann_metric(metric, b1, b2));
    }
    return kExitOk;
}

int cmd_singular_values(const std::string& file, int depth) {
    const lgap::Trajectory w = lgap::read_trajectory_csv(file);
    const lgap::HankelMatrix h = lgap::hankel(w, depth);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(h.data);
    std::printf("index,sigma\n");
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        std::printf("%ld,%s\n", static_cast<long>(i + 1),
                    lgap::format_full(svd.singularValues()(i)).c_str());
    }
    return kExitOk;
}

lgap::ArModel parse_ar_model(const std::vector<double>& a, const std::vector<double>& b) {
    lgap::ArModel model;
    model.window = static_cast<int>(b.size());
    model.a = Eigen::Map<const Eigen::VectorXd>(a.data(), static_cast<Eigen::Index>(a.size()));
    model.b = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
    return model;
}

int cmd_ar_bounds(const std::vector<double>& a, const std::vector<double>& b,
                  const std::vector<double>& a2, const std::vector<double>& b2) {
    if (b.size() != b2.size()) {
        throw lgap::DimensionError("both models must use the same window length");
    }
    const lgap::GraphForm f = lgap::ar_graph_form(parse_ar_model(a, b));
    const lgap::GraphForm f2 = lgap::ar_graph_form(parse_ar_model(a2, b2));
    const lgap::GapBounds bounds = lgap::graph_form_gap_bounds(f, f2);
    print_named("lower", bounds.lower);
    print_named("gap", bounds.gap);
    print_named("upper", bounds.upper);
    print_named("coeff_distance", bounds.coefficient_distance);
    std::printf("bounds_hold      %s\n", bounds.holds() ? "yes" : "no");
    return kExitOk;
}

int cmd_run(const std::string& config_path, bool baseline, const std::string& out_dir,
            std::uint64_t seed, bool seed_given) {
    lgap::ExperimentConfig config = config_path.empty()
                                        ? lgap::default_experiment_config()
                                        : lgap::load_experiment_config(config_path);
    if (seed_given) config.recognition.seed = seed;
    const nlohmann::json summary = lgap::run_experiment_files(config, baseline, out_dir);
    std::printf("%s\n", summary.dump(2).c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-horizon behavior metrics and data-driven mode recognition"};
    app.require_subcommand(1);

    std::string file1, file2, file;
    BehaviorFlags gap_flags, metric_flags;
    int sv_depth = 7;

    CLI::App* gap_cmd = app.add_subcommand("gap", "gap between two trajectories' behaviors");
    gap_cmd->add_option("file1", file1, "first trajectory CSV")->required();
    gap_cmd->add_option("file2", file2, "second trajectory CSV")->required();
    add_behavior_flags(gap_cmd, gap_flags);

    CLI::App* metrics_cmd =
        app.add_subcommand("metrics", "all subspace metrics between two behaviors");
    metrics_cmd->add_option("file1", file1, "first trajectory CSV")->required();
    metrics_cmd->add_option("file2", file2, "second trajectory CSV")->required();
    add_behavior_flags(metrics_cmd, metric_flags);

    CLI::App* sv_cmd =
        app.add_subcommand("singular-values", "singular spectrum of the data matrix");
    sv_cmd->add_option("file", file, "trajectory CSV")->required();
    sv_cmd->add_option("--L", sv_depth, "window depth L")->capture_default_str();

    std::vector<double> ar_a, ar_b, ar_a2, ar_b2;
    CLI::App* ar_cmd = app.add_subcommand("ar-bounds", "parametric gap bounds for AR models");
    ar_cmd->add_option("--a", ar_a, "first model: a coefficients a0..a_{L-2}")
        ->delimiter(',')
        ->expected(0, -1);
    ar_cmd->add_option("--b", ar_b, "first model: b coefficients b0..b_{L-1}")
        ->delimiter(',')
        ->required();
    ar_cmd->add_option("--atilde", ar_a2, "second model: a coefficients")
        ->delimiter(',')
        ->expected(0, -1);
    ar_cmd->add_option("--btilde", ar_b2, "second model: b coefficients")
        ->delimiter(',')
        ->required();

    std::string config_path, out_dir = "out";
    bool baseline = false;
    std::uint64_t seed = 0;
    CLI::App* run_cmd = app.add_subcommand("run", "closed-loop recognition experiment");
    CLI::Option* config_opt =
        run_cmd->add_option("--config", config_path, "experiment config JSON");
    run_cmd->add_flag("--baseline", baseline, "also run the no-recognition baseline");
    run_cmd->add_option("--out-dir", out_dir, "output directory")->capture_default_str();
    CLI::Option* seed_opt = run_cmd->add_option("--seed", seed, "override the config seed");
    (void)config_opt;

    CLI11_PARSE(app, argc, argv);

    try {
        if (gap_cmd->parsed()) return cmd_gap(file1, file2, gap_flags);
        if (metrics_cmd->parsed()) return cmd_metrics(file1, file2, metric_flags);
        if (sv_cmd->parsed()) return cmd_singular_values(file, sv_depth);
        if (ar_cmd->parsed()) return cmd_ar_bounds(ar_a, ar_b, ar_a2, ar_b2);
        if (run_cmd->parsed()) {
            return cmd_run(config_path, baseline, out_dir, seed, seed_opt->count() > 0);
        }
    } catch (const lgap::ExcitationError& e) {
        std::cerr << "excitation failure: " << e.what() << '\n' << e.report.describe() << '\n';
        return kExitExcitationFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}
