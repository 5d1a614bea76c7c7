#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "lgap/behavior.hpp"
#include "lgap/metrics.hpp"
#include "lgap/sarx.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace lgap;
using lgap::testing::Rng;

namespace {

Trajectory scalar_trajectory(std::initializer_list<double> values) {
    Eigen::MatrixXd samples(static_cast<Eigen::Index>(values.size()), 1);
    Eigen::Index t = 0;
    for (double v : values) samples(t++, 0) = v;
    return Trajectory(std::move(samples), 0, 1);
}

Trajectory excited_mode(int mode_id, int length, std::uint64_t seed, double sigma = 0.0) {
    const SarxSystem system = SarxSystem::benchmark(sigma);
    Rng rng(seed);
    return generate_excited_trajectory(system, mode_id, length, rng);
}

// benchmark mode as a window-3 AR model (single kernel equation)
ArModel benchmark_ar_model(int mode_id) {
    const SarxSystem system = SarxSystem::benchmark();
    const ArxMode& m = system.mode(mode_id);
    ArModel model;
    model.window = 3;
    model.a = Eigen::Vector2d(m.a[1], m.a[0]);          // a_0 = coeff of y_t, a_1 of y_{t+1}
    model.b = Eigen::Vector3d(0.0, m.b[0], 0.0);        // only u_{t+1} enters
    return model;
}

}  // namespace

TEST_CASE("hankel: scalar and multichannel layouts") {
    const HankelMatrix h = hankel(scalar_trajectory({1, 2, 3, 4}), 2);
    Eigen::MatrixXd expected(2, 3);
    expected << 1, 2, 3, 2, 3, 4;
    CHECK(h.data == expected);

    Eigen::MatrixXd samples(3, 2);
    samples << 1, 10, 2, 20, 3, 30;
    const HankelMatrix h2 = hankel(Trajectory(samples, 1, 1), 2);
    Eigen::MatrixXd expected2(4, 2);
    expected2 << 1, 2, 10, 20, 2, 3, 20, 30;
    CHECK(h2.data == expected2);
}

TEST_CASE("hankel: full-depth window is the stacked trajectory") {
    const Trajectory w = scalar_trajectory({5, 6, 7});
    const HankelMatrix h = hankel(w, 3);
    REQUIRE(h.data.cols() == 1);
    CHECK(h.data(0, 0) == 5);
    CHECK(h.data(1, 0) == 6);
    CHECK(h.data(2, 0) == 7);
    CHECK_THROWS_AS((void)hankel(w, 4), DimensionError);
}

TEST_CASE("hankel: repeated blocks are bit-equal") {
    Rng rng(31);
    Eigen::MatrixXd samples = testing::random_matrix(12, 2, rng);
    const Trajectory w(samples, 1, 1);
    const HankelMatrix h = hankel(w, 4);
    const int q = 2;
    for (Eigen::Index j = 0; j + 1 < h.data.cols(); ++j) {
        for (int i = 1; i < h.depth; ++i) {
            CHECK(h.data.block(i * q, j, q, 1) == h.data.block((i - 1) * q, j + 1, q, 1));
        }
    }
}

TEST_CASE("excitation_check: excited benchmark data passes at rank 9") {
    const Trajectory w = excited_mode(1, 60, 123);
    const ExcitationReport report = excitation_check(w, 7, {1, 2, 2});
    CHECK(report.required_rank == 9);
    CHECK(report.observed_rank == 9);
    CHECK(report.pass);

    // noise-free data: everything beyond the ninth direction is round-off
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(hankel(w, 7).data);
    CHECK(svd.singularValues()(9) / svd.singularValues()(0) < 1e-10);
}

TEST_CASE("excitation_check: degenerate inputs fail") {
    Eigen::MatrixXd zeros = Eigen::MatrixXd::Zero(60, 2);
    const ExcitationReport zero_report = excitation_check(Trajectory(zeros, 1, 1), 7, {1, 2, 2});
    CHECK(zero_report.observed_rank == 0);
    CHECK_FALSE(zero_report.pass);

    const SarxSystem system = SarxSystem::benchmark(0.0);
    std::vector<double> ones(60, 1.0);
    const Trajectory constant = simulate_mode(system, 1, ones, nullptr);
    const ExcitationReport const_report = excitation_check(constant, 7, {1, 2, 2});
    CHECK(const_report.observed_rank < 9);
    CHECK_FALSE(const_report.pass);
}

TEST_CASE("excitation_check: short data and shallow windows are rejected") {
    const Trajectory w = excited_mode(1, 20, 5);
    CHECK_THROWS_AS((void)excitation_check(w, 14, {1, 2, 2}), ExcitationError);
    CHECK_THROWS_AS((void)excitation_check(w, 2, {1, 2, 2}), DimensionError);
}

TEST_CASE("behavior_basis: independent datasets of one mode span the same space") {
    const Trajectory wa = excited_mode(1, 60, 1);
    const Trajectory wb = excited_mode(1, 60, 2);
    const SubspaceBasis ba = behavior_basis(wa, 7, {1, 2, 2});
    const SubspaceBasis bb = behavior_basis(wb, 7, {1, 2, 2});
    CHECK(ba.rank() == 9);
    CHECK(gap(ba, bb).value <= 1e-8);
}

TEST_CASE("behavior_basis: re-basing its own columns is idempotent") {
    const Trajectory w = excited_mode(2, 60, 3);
    const SubspaceBasis b = behavior_basis(w, 7, {1, 2, 2});
    const SubspaceBasis again = orthonormal_basis(b.columns(), b.rank());
    CHECK(gap(b, again).value <= 1e-12);
}

TEST_CASE("behavior_basis: benchmark modes sit at the pinned distance") {
    const Trajectory w1 = excited_mode(1, 60, 10);
    const Trajectory w2 = excited_mode(2, 60, 11);
    const SubspaceBasis b1 = behavior_basis(w1, 7, {1, 2, 2});
    const SubspaceBasis b2 = behavior_basis(w2, 7, {1, 2, 2});
    const double value = gap(b1, b2).value;
    // distance between the two noise-free mode behaviors; independent of the
    // excitation realization
    CHECK(value == doctest::Approx(0.567559179353908).epsilon(1e-9));
    CHECK(value > 0.0);
    CHECK(value <= 1.0);

    // cross-check with an SVD-free basis route
    const Eigen::MatrixXd g1 = testing::gram_schmidt_basis(hankel(w1, 7).data, 9);
    const Eigen::MatrixXd g2 = testing::gram_schmidt_basis(hankel(w2, 7).data, 9);
    const double via_gs = spectral_norm(g1 * g1.transpose() - g2 * g2.transpose());
    CHECK(std::abs(via_gs - value) < 1e-9);
}

TEST_CASE("behavior_basis: refuses under-excited data with the rank report") {
    const SarxSystem system = SarxSystem::benchmark(0.0);
    std::vector<double> ones(60, 1.0);
    const Trajectory constant = simulate_mode(system, 1, ones, nullptr);
    try {
        (void)behavior_basis(constant, 7, {1, 2, 2});
        FAIL("expected ExcitationError");
    } catch (const ExcitationError& e) {
        CHECK(e.report.required_rank == 9);
        CHECK(e.report.observed_rank < 9);
    }
}

TEST_CASE("behavior_basis: every data window lies in the span") {
    const Trajectory w = excited_mode(1, 60, 21);
    const SubspaceBasis b = behavior_basis(w, 7, {1, 2, 2});
    const Eigen::MatrixXd h = hankel(w, 7).data;
    const Eigen::MatrixXd residual = h - b.columns() * (b.columns().transpose() * h);
    CHECK(spectral_norm(residual) <= 1e-8 * spectral_norm(h));
}

TEST_CASE("ar_graph_form: benchmark modes at window 3") {
    const GraphForm f1 = ar_graph_form(benchmark_ar_model(1));
    Eigen::MatrixXd expected1(1, 5);
    expected1 << 0.24, 0, 0.2, 2, 0;
    CHECK(f1.f == expected1);

    const GraphForm f2 = ar_graph_form(benchmark_ar_model(2));
    Eigen::MatrixXd expected2(1, 5);
    expected2 << -0.12, 0, 0.7, 1, 0;
    CHECK(f2.f == expected2);

    ArModel zero;
    zero.window = 3;
    zero.a = Eigen::Vector2d::Zero();
    zero.b = Eigen::Vector3d::Zero();
    CHECK(ar_graph_form(zero).f.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("graph_form_basis: scalar graphs") {
    GraphForm zero{Eigen::MatrixXd::Zero(1, 1)};
    const SubspaceBasis b0 = graph_form_basis(zero);
    CHECK(std::abs(std::abs(b0.columns()(0, 0)) - 1.0) < 1e-14);
    CHECK(std::abs(b0.columns()(1, 0)) < 1e-14);

    GraphForm one{Eigen::MatrixXd::Ones(1, 1)};
    const SubspaceBasis b1 = graph_form_basis(one);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(std::abs(b1.columns()(0, 0)) - inv_sqrt2) < 1e-14);
    CHECK(b1.columns()(0, 0) == doctest::Approx(b1.columns()(1, 0)).epsilon(1e-12));
}

TEST_CASE("graph_form_basis: spans the kernel of [F -I]") {
    Rng rng(41);
    const Eigen::MatrixXd f = testing::random_matrix(1, 5, rng);
    const SubspaceBasis b = graph_form_basis(GraphForm{f});
    CHECK(b.rank() == 5);
    CHECK(b.ambient_dim() == 6);
    Eigen::MatrixXd kernel_test(1, 6);
    kernel_test << f, -1.0;
    CHECK((kernel_test * b.columns()).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("graph ordering permutation matches the data-side behavior at the minimal window") {
    // at window = lag + 1 the single kernel equation describes the whole
    // restricted behavior, so both routes must produce the same subspace
    const Trajectory w = excited_mode(1, 60, 77);
    const SubspaceBasis data_side = behavior_basis(w, 3, {1, 2, 2});
    const Eigen::VectorXi perm = graph_ordering_permutation(3);
    Eigen::MatrixXd reordered(data_side.ambient_dim(), data_side.rank());
    for (Eigen::Index i = 0; i < perm.size(); ++i) {
        reordered.row(i) = data_side.columns().row(perm(i));
    }
    const SubspaceBasis graph_side = graph_form_basis(ar_graph_form(benchmark_ar_model(1)));
    CHECK(gap(SubspaceBasis(reordered), graph_side).value <= 1e-9);
}

TEST_CASE("trajectory CSV: full-precision round trip") {
    Rng rng(51);
    Eigen::MatrixXd samples = testing::random_matrix(20, 3, rng);
    samples *= 1e3;
    const Trajectory w(samples, 2, 1);
    const auto path = std::filesystem::temp_directory_path() / "lgap_roundtrip.csv";
    write_trajectory_csv(w, path);
    const Trajectory read = read_trajectory_csv(path);
    CHECK(read.inputs() == 2);
    CHECK(read.outputs() == 1);
    CHECK(read.samples() == w.samples());
    std::filesystem::remove(path);
}

TEST_CASE("trajectory CSV: malformed input names the offending line") {
    const auto path = std::filesystem::temp_directory_path() / "lgap_bad.csv";
    std::ofstream(path) << "t,u1,y1\n0,0.5,1.0\n1,oops,2.0\n";
    try {
        (void)read_trajectory_csv(path);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    std::filesystem::remove(path);
}
