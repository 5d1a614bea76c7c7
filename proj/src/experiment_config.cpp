#include "lgap/experiment_config.hpp"

#include <fstream>

#include "lgap/behavior.hpp"

namespace lgap {

namespace {

using nlohmann::json;

/// Collects schema violations so a bad config reports every problem at once.
class Validator {
public:
    void reject_unknown_keys(const json& node, const std::string& where,
                             std::initializer_list<const char*> allowed) {
        if (!node.is_object()) return;
        for (auto it = node.begin(); it != node.end(); ++it) {
            bool known = false;
            for (const char* key : allowed) {
                if (it.key() == key) {
                    known = true;
                    break;
                }
            }
            if (!known) violations_.push_back(where + ": unknown key '" + it.key() + "'");
        }
    }

    template <typename T>
    void get(const json& node, const std::string& where, const char* key, T& out) {
        if (!node.is_object() || !node.contains(key)) return;
        try {
            out = node.at(key).get<T>();
        } catch (const json::exception&) {
            violations_.push_back(where + "." + key + ": wrong type");
        }
    }

    void require(bool ok, const std::string& message) {
        if (!ok) violations_.push_back(message);
    }

    void finish() const {
        if (violations_.empty()) return;
        std::string what = "config schema violations:";
        for (const std::string& v : violations_) what += "\n  - " + v;
        throw ParseError(what);
    }

private:
    std::vector<std::string> violations_;
};

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path.string());
    out << text;
}

}  // namespace

ExperimentConfig default_experiment_config() { return ExperimentConfig{}; }

ExperimentConfig parse_experiment_config(const json& doc) {
    ExperimentConfig config;
    Validator v;

    if (!doc.is_object()) throw ParseError("config root must be a JSON object");
    v.reject_unknown_keys(doc, "root", {"recognition", "system", "schedule", "output"});

    if (doc.contains("recognition")) {
        const json& r = doc.at("recognition");
        v.reject_unknown_keys(r, "recognition",
                              {"t_ini", "t_f", "lag", "order", "epsilon", "window_columns",
                               "horizon", "weights", "reference", "dither_amplitude", "seed",
                               "initial_data"});
        auto& rc = config.recognition;
        v.get(r, "recognition", "t_ini", rc.t_ini);
        v.get(r, "recognition", "t_f", rc.t_f);
        v.get(r, "recognition", "lag", rc.lag);
        v.get(r, "recognition", "order", rc.order);
        v.get(r, "recognition", "epsilon", rc.epsilon);
        v.get(r, "recognition", "window_columns", rc.window_columns);
        v.get(r, "recognition", "horizon", rc.horizon);
        v.get(r, "recognition", "dither_amplitude", rc.dither_amplitude);
        v.get(r, "recognition", "seed", rc.seed);
        if (r.contains("weights")) {
            const json& w = r.at("weights");
            v.reject_unknown_keys(w, "recognition.weights",
                                  {"output", "input", "g_regularization"});
            v.get(w, "recognition.weights", "output", rc.weights.output_weight);
            v.get(w, "recognition.weights", "input", rc.weights.input_weight);
            v.get(w, "recognition.weights", "g_regularization", rc.weights.g_regularization);
        }
        if (r.contains("reference")) {
            const json& ref = r.at("reference");
            v.reject_unknown_keys(ref, "recognition.reference", {"amplitude", "period"});
            v.get(ref, "recognition.reference", "amplitude", rc.reference.amplitude);
            v.get(ref, "recognition.reference", "period", rc.reference.period);
        }
        if (r.contains("initial_data")) {
            const json& init = r.at("initial_data");
            v.reject_unknown_keys(init, "recognition.initial_data",
                                  {"mode", "length", "amplitude"});
            v.get(init, "recognition.initial_data", "mode", rc.initial_data_mode);
            v.get(init, "recognition.initial_data", "length", rc.initial_data_length);
            v.get(init, "recognition.initial_data", "amplitude", rc.initial_data_amplitude);
        }
    }

    if (doc.contains("system")) {
        const json& s = doc.at("system");
        v.reject_unknown_keys(s, "system", {"noise_sigma", "modes"});
        v.get(s, "system", "noise_sigma", config.system.noise_sigma);
        if (s.contains("modes")) {
            if (!s.at("modes").is_array() || s.at("modes").empty()) {
                v.require(false, "system.modes: must be a nonempty array");
            } else {
                config.system.modes.clear();
                int index = 1;
                for (const json& m : s.at("modes")) {
                    const std::string where = "system.modes[" + std::to_string(index++) + "]";
                    v.reject_unknown_keys(m, where, {"a", "b"});
                    ArxMode mode;
                    v.get(m, where, "a", mode.a);
                    v.get(m, where, "b", mode.b);
                    v.require(!mode.b.empty(), where + ".b: needs at least one coefficient");
                    config.system.modes.push_back(std::move(mode));
                }
            }
        }
        v.require(config.system.noise_sigma >= 0.0, "system.noise_sigma: must be nonnegative");
    }

    if (doc.contains("schedule")) {
        const json& sched = doc.at("schedule");
        if (!sched.is_array() || sched.empty()) {
            v.require(false, "schedule: must be a nonempty array");
        } else {
            config.schedule.entries.clear();
            int index = 1;
            for (const json& entry : sched) {
                const std::string where = "schedule[" + std::to_string(index++) + "]";
                v.reject_unknown_keys(entry, where, {"start", "mode"});
                int start = 0, mode_id = 0;
                v.get(entry, where, "start", start);
                v.get(entry, where, "mode", mode_id);
                config.schedule.entries.emplace_back(start, mode_id);
            }
        }
    }

    if (doc.contains("output")) {
        const json& o = doc.at("output");
        v.reject_unknown_keys(o, "output", {"prefix"});
        v.get(o, "output", "prefix", config.output_prefix);
    }

    // semantic checks, reported through the same channel
    try {
        config.recognition.validate();
    } catch (const Error& e) {
        v.require(false, std::string("recognition: ") + e.what());
    }
    try {
        config.schedule.validate(static_cast<int>(config.system.modes.size()));
    } catch (const Error& e) {
        v.require(false, std::string("schedule: ") + e.what());
    }

    v.finish();
    return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("config is not valid JSON: " + std::string(e.what()));
    }
    return parse_experiment_config(doc);
}

json echo_config(const ExperimentConfig& config) {
    const auto& rc = config.recognition;
    json modes = json::array();
    for (const ArxMode& m : config.system.modes) modes.push_back({{"a", m.a}, {"b", m.b}});
    json schedule = json::array();
    for (const auto& [start, mode_id] : config.schedule.entries) {
        schedule.push_back({{"start", start}, {"mode", mode_id}});
    }
    return json{
        {"recognition",
         {{"t_ini", rc.t_ini},
          {"t_f", rc.t_f},
          {"lag", rc.lag},
          {"order", rc.order},
          {"epsilon", rc.epsilon},
          {"window_columns", rc.window_columns},
          {"horizon", rc.horizon},
          {"weights",
           {{"output", rc.weights.output_weight},
            {"input", rc.weights.input_weight},
            {"g_regularization", rc.weights.g_regularization}}},
          {"reference", {{"amplitude", rc.reference.amplitude}, {"period", rc.reference.period}}},
          {"dither_amplitude", rc.dither_amplitude},
          {"seed", rc.seed},
          {"initial_data",
           {{"mode", rc.initial_data_mode},
            {"length", rc.initial_data_length},
            {"amplitude", rc.initial_data_amplitude}}}}},
        {"system", {{"noise_sigma", config.system.noise_sigma}, {"modes", modes}}},
        {"schedule", schedule},
        {"output", {{"prefix", config.output_prefix}}},
    };
}

namespace {

json summary_json(const ExperimentSummary& summary) {
    json events = json::array();
    for (const EventReport& e : summary.events) {
        events.push_back({{"first", e.event.first},
                          {"last", e.event.last},
                          {"rmse_before", e.rmse_before},
                          {"rmse_after", e.rmse_after}});
    }
    json segments = json::array();
    for (const auto& [start, end, rmse] : summary.schedule_segments) {
        segments.push_back({{"start", start}, {"end", end}, {"rmse", rmse}});
    }
    return json{{"swap_steps", summary.swap_steps},
                {"swap_events", events},
                {"total_rmse", summary.total_rmse},
                {"schedule_segments", segments},
                {"window_rank_deficient_steps", summary.window_rank_deficient_steps},
                {"constraints_relaxed_steps", summary.constraints_relaxed_steps}};
}

void write_gap_csv(const ExperimentLog& log, double epsilon,
                   const std::filesystem::path& path) {
    std::string text = "t,gap,epsilon,swap\n";
    for (const StepRecord& rec : log.steps) {
        text += std::to_string(rec.t) + ',';
        if (rec.gap_valid) text += format_full(rec.gap);
        text += ',' + format_full(epsilon) + ',' + (rec.swap ? std::string("1") : std::string("0")) + '\n';
    }
    write_text(path, text);
}

void write_tracking_csv(const ExperimentLog& adaptive, const ExperimentLog* baseline,
                        const std::filesystem::path& path) {
    std::string text = baseline != nullptr ? "t,r,y,u,mode,y_baseline,u_baseline\n"
                                           : "t,r,y,u,mode\n";
    for (std::size_t i = 0; i < adaptive.steps.size(); ++i) {
        const StepRecord& rec = adaptive.steps[i];
        text += std::to_string(rec.t) + ',' + format_full(rec.reference) + ',' +
                format_full(rec.output) + ',' + format_full(rec.input) + ',' +
                std::to_string(rec.mode);
        if (baseline != nullptr) {
            text += ',' + format_full(baseline->steps[i].output) + ',' +
                    format_full(baseline->steps[i].input);
        }
        text += '\n';
    }
    write_text(path, text);
}

void write_mode_spectra_csv(const ExperimentConfig& config,
                            const std::filesystem::path& path) {
    // offline excited dataset per mode, with the spectrum of its data matrix
    std::string text = "mode,index,sigma\n";
    for (int mode_id = 1; mode_id <= static_cast<int>(config.system.modes.size()); ++mode_id) {
        Rng rng(config.recognition.seed + static_cast<std::uint64_t>(mode_id));
        const Trajectory w = generate_excited_trajectory(
            config.system, mode_id, config.recognition.initial_data_length, rng,
            uniform_input_law(config.recognition.initial_data_amplitude),
            config.recognition.depth(), config.recognition.complexity());
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(hankel(w, config.recognition.depth()).data);
        const Eigen::VectorXd& sv = svd.singularValues();
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            text += std::to_string(mode_id) + ',' + std::to_string(i + 1) + ',' +
                    format_full(sv(i)) + '\n';
        }
    }
    write_text(path, text);
}

}  // namespace

json run_experiment_files(const ExperimentConfig& config, bool baseline,
                          const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const std::string prefix = config.output_prefix;

    const ExperimentLog log = run_closed_loop(config.recognition, config.system, config.schedule);
    write_log_csv(log, out_dir / (prefix + "_log.csv"));
    write_gap_csv(log, config.recognition.epsilon, out_dir / (prefix + "_gap.csv"));

    // realized closed-loop trajectory, readable by the gap/metrics commands
    Eigen::MatrixXd samples(static_cast<Eigen::Index>(log.steps.size()), 2);
    for (Eigen::Index t = 0; t < samples.rows(); ++t) {
        samples(t, 0) = log.steps[static_cast<std::size_t>(t)].input;
        samples(t, 1) = log.steps[static_cast<std::size_t>(t)].output;
    }
    write_trajectory_csv(Trajectory(samples, 1, 1), out_dir / (prefix + "_trajectory.csv"));

    json summary;
    summary["config"] = echo_config(config);
    summary["adaptive"] = summary_json(summarize(log, config.schedule));

    std::optional<ExperimentLog> baseline_log;
    if (baseline) {
        RecognitionConfig frozen = config.recognition;
        frozen.epsilon = std::numeric_limits<double>::infinity();
        baseline_log = run_closed_loop(frozen, config.system, config.schedule);
        write_log_csv(*baseline_log, out_dir / (prefix + "_baseline_log.csv"));
        summary["baseline"] = summary_json(summarize(*baseline_log, config.schedule));
    }

    write_tracking_csv(log, baseline_log ? &*baseline_log : nullptr,
                       out_dir / (prefix + "_tracking.csv"));
    write_mode_spectra_csv(config, out_dir / (prefix + "_singular_values.csv"));

    write_text(out_dir / (prefix + "_summary.json"), summary.dump(2) + "\n");
    return summary;
}

}  // namespace lgap
