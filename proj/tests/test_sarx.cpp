#include <doctest.h>

#include <cmath>

#include "lgap/behavior.hpp"
#include "lgap/sarx.hpp"

using namespace lgap;

TEST_CASE("sarx_step: benchmark coefficients, noise off") {
    const SarxSystem system = SarxSystem::benchmark();
    const std::vector<double> y_hist = {1.0, 1.0};
    const std::vector<double> u_hist = {1.0};
    CHECK(sarx_step(system, 1, y_hist, u_hist, nullptr) == doctest::Approx(2.44).epsilon(1e-15));
    CHECK(sarx_step(system, 2, y_hist, u_hist, nullptr) == doctest::Approx(1.58).epsilon(1e-15));
    CHECK(sarx_step(system, 1, {}, {}, nullptr) == 0.0);
    CHECK_THROWS_AS((void)sarx_step(system, 3, y_hist, u_hist, nullptr), DimensionError);
}

TEST_CASE("truncated_gaussian: degenerate sigma and hard bounds") {
    Rng rng(201);
    CHECK(truncated_gaussian(0.0, rng) == 0.0);
    for (int i = 0; i < 10000; ++i) {
        CHECK(std::abs(truncated_gaussian(1.0, rng)) <= 3.0);
    }
}

TEST_CASE("truncated_gaussian: moments of the truncated law") {
    Rng rng(203);
    const int n = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = truncated_gaussian(1.0, rng);
        sum += x;
        sum_sq += x * x;
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sum_sq / n - mean * mean);
    CHECK(std::abs(mean) <= 0.01);
    CHECK(sd >= 0.95);   // truncation shrinks the spread below 1
    CHECK(sd <= 1.0);
}

TEST_CASE("generate_excited_trajectory: default law passes the rank condition") {
    const SarxSystem system = SarxSystem::benchmark(0.0);
    Rng rng(205);
    const Trajectory w = generate_excited_trajectory(system, 1, 60, rng);
    const ExcitationReport report = excitation_check(w, 7, {1, 2, 2});
    CHECK(report.observed_rank == 9);
    CHECK(report.pass);
}

TEST_CASE("generate_excited_trajectory: the zero law exhausts its retries") {
    const SarxSystem system = SarxSystem::benchmark(0.0);
    Rng rng(207);
    const InputLaw zero_law = [](Rng&) { return 0.0; };
    CHECK_THROWS_AS((void)generate_excited_trajectory(system, 1, 60, rng, zero_law),
                    ExcitationError);
}

TEST_CASE("generate_excited_trajectory: fixed seed reproduces bit-identical data") {
    const SarxSystem system = SarxSystem::benchmark(1e-4);
    Rng rng_a(209), rng_b(209);
    const Trajectory wa = generate_excited_trajectory(system, 2, 60, rng_a);
    const Trajectory wb = generate_excited_trajectory(system, 2, 60, rng_b);
    CHECK(wa.samples() == wb.samples());
}

TEST_CASE("noise-off data lies exactly in the mode's restricted behavior") {
    const SarxSystem system = SarxSystem::benchmark(0.0);
    Rng rng(211);
    const Trajectory reference = generate_excited_trajectory(system, 2, 80, rng);
    const SubspaceBasis basis = behavior_basis(reference, 7, {1, 2, 2});

    const Trajectory probe = generate_excited_trajectory(system, 2, 40, rng);
    const Eigen::MatrixXd h = hankel(probe, 7).data;
    const Eigen::MatrixXd residual = h - basis.columns() * (basis.columns().transpose() * h);
    CHECK(residual.cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("mode schedule: lookups and validation") {
    const ModeSchedule schedule{{{0, 2}, {40, 1}}};
    schedule.validate(2);
    CHECK(schedule.mode_at(0) == 2);
    CHECK(schedule.mode_at(39) == 2);
    CHECK(schedule.mode_at(40) == 1);
    CHECK(schedule.mode_at(1000) == 1);

    const ModeSchedule late{{{5, 1}}};
    CHECK_THROWS_AS(late.validate(2), DimensionError);
    const ModeSchedule repeated{{{0, 1}, {0, 2}}};
    CHECK_THROWS_AS(repeated.validate(2), DimensionError);
    const ModeSchedule unknown{{{0, 3}}};
    CHECK_THROWS_AS(unknown.validate(2), DimensionError);
}
