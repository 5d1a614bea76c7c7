#include "lgap/sarx.hpp"

#include "lgap/behavior.hpp"

namespace lgap {

SarxSystem SarxSystem::benchmark(double sigma) {
    SarxSystem s;
    s.modes = {ArxMode{{0.2, 0.24}, {2.0}}, ArxMode{{0.7, -0.12}, {1.0}}};
    s.noise_sigma = sigma;
    return s;
}

const ArxMode& SarxSystem::mode(int mode_id) const {
    if (mode_id < 1 || mode_id > static_cast<int>(modes.size())) {
        throw DimensionError("invalid mode id " + std::to_string(mode_id));
    }
    return modes[static_cast<std::size_t>(mode_id - 1)];
}

ModeSchedule ModeSchedule::constant(int mode_id) { return ModeSchedule{{{0, mode_id}}}; }

int ModeSchedule::mode_at(int t) const {
    int mode_id = entries.empty() ? 1 : entries.front().second;
    for (const auto& [start, id] : entries) {
        if (t >= start) mode_id = id;
    }
    return mode_id;
}

void ModeSchedule::validate(int mode_count) const {
    if (entries.empty() || entries.front().first != 0) {
        throw DimensionError("mode schedule must start at t = 0");
    }
    int prev = -1;
    for (const auto& [start, id] : entries) {
        if (start <= prev) throw DimensionError("mode schedule start times must increase");
        if (id < 1 || id > mode_count) {
            throw DimensionError("mode schedule references unknown mode " + std::to_string(id));
        }
        prev = start;
    }
}

double truncated_gaussian(double sigma, Rng& rng) {
    if (sigma < 0.0) throw DimensionError("sigma must be nonnegative");
    if (sigma == 0.0) return 0.0;
    std::normal_distribution<double> normal(0.0, sigma);
    for (;;) {
        const double n = normal(rng);
        if (std::abs(n) <= 3.0 * sigma) return n;
    }
}

double sarx_step(const SarxSystem& system, int mode_id, std::span<const double> y_hist,
                 std::span<const double> u_hist, Rng* rng) {
    const ArxMode& m = system.mode(mode_id);
    double y = 0.0;
    for (std::size_t i = 0; i < m.a.size() && i < y_hist.size(); ++i) y += m.a[i] * y_hist[i];
    for (std::size_t j = 0; j < m.b.size() && j < u_hist.size(); ++j) y += m.b[j] * u_hist[j];
    if (rng != nullptr) y += truncated_gaussian(system.noise_sigma, *rng);
    return y;
}

InputLaw uniform_input_law(double amplitude) {
    return [amplitude](Rng& rng) {
        std::uniform_real_distribution<double> dist(-amplitude, amplitude);
        return dist(rng);
    };
}

Trajectory simulate_mode(const SarxSystem& system, int mode_id, std::span<const double> inputs,
                         Rng* rng) {
    const Eigen::Index T = static_cast<Eigen::Index>(inputs.size());
    Eigen::MatrixXd samples(T, 2);
    std::vector<double> y_hist, u_hist;  // most recent first
    for (Eigen::Index t = 0; t < T; ++t) {
        const double y = sarx_step(system, mode_id, y_hist, u_hist, rng);
        samples(t, 0) = inputs[static_cast<std::size_t>(t)];
        samples(t, 1) = y;
        y_hist.insert(y_hist.begin(), y);
        u_hist.insert(u_hist.begin(), samples(t, 0));
        const std::size_t depth = std::max(system.mode(mode_id).a.size(),
                                           system.mode(mode_id).b.size());
        if (y_hist.size() > depth) y_hist.pop_back();
        if (u_hist.size() > depth) u_hist.pop_back();
    }
    return Trajectory(std::move(samples), 1, 1);
}

Trajectory generate_excited_trajectory(const SarxSystem& system, int mode_id, int length,
                                       Rng& rng, const InputLaw& law, int depth,
                                       const Complexity& c, int max_retries) {
    if (length < depth + c.inputs * depth + c.order - 1) {
        throw DimensionError("trajectory too short for the rank condition at depth " +
                             std::to_string(depth));
    }
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        std::vector<double> inputs(static_cast<std::size_t>(length));
        for (auto& u : inputs) u = law(rng);
        Trajectory w = simulate_mode(system, mode_id, inputs, &rng);
        const ExcitationReport report = excitation_check(w, depth, c);
        if (report.observed_rank >= report.required_rank) return w;
    }
    throw ExcitationError("input law failed to excite the system after " +
                              std::to_string(max_retries + 1) + " attempts",
                          ExcitationReport{});
}

}  // namespace lgap
