#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "lgap/experiment_config.hpp"

using namespace lgap;
using nlohmann::json;

TEST_CASE("config: defaults echo every field and round-trip") {
    const ExperimentConfig config = default_experiment_config();
    const json echoed = echo_config(config);
    for (const char* key : {"recognition", "system", "schedule", "output"}) {
        CHECK(echoed.contains(key));
    }
    const json& r = echoed.at("recognition");
    for (const char* key : {"t_ini", "t_f", "lag", "order", "epsilon", "window_columns",
                            "horizon", "weights", "reference", "dither_amplitude", "seed",
                            "initial_data"}) {
        CHECK(r.contains(key));
    }

    const ExperimentConfig parsed = parse_experiment_config(echoed);
    CHECK(echo_config(parsed) == echoed);
}

TEST_CASE("config: unknown keys are all reported") {
    json doc = echo_config(default_experiment_config());
    doc["recognitionn"] = 1;
    doc["recognition"]["tini"] = 2;
    doc["system"]["sigmoid"] = 3;
    try {
        (void)parse_experiment_config(doc);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        const std::string what = e.what();
        CHECK(what.find("recognitionn") != std::string::npos);
        CHECK(what.find("tini") != std::string::npos);
        CHECK(what.find("sigmoid") != std::string::npos);
    }
}

TEST_CASE("config: type and semantic violations are collected together") {
    json doc = echo_config(default_experiment_config());
    doc["recognition"]["epsilon"] = "high";
    doc["schedule"] = json::array({json{{"start", 5}, {"mode", 1}}});
    try {
        (void)parse_experiment_config(doc);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        const std::string what = e.what();
        CHECK(what.find("epsilon") != std::string::npos);
        CHECK(what.find("schedule") != std::string::npos);
    }
}

TEST_CASE("config: malformed JSON file") {
    const auto path = std::filesystem::temp_directory_path() / "lgap_bad_config.json";
    std::ofstream(path) << "{ not json";
    CHECK_THROWS_AS((void)load_experiment_config(path), ParseError);
    std::filesystem::remove(path);
}

TEST_CASE("run_experiment_files: writes the full artifact set deterministically") {
    ExperimentConfig config = default_experiment_config();
    config.recognition.horizon = 30;  // keep the test quick
    const auto dir_a = std::filesystem::temp_directory_path() / "lgap_run_a";
    const auto dir_b = std::filesystem::temp_directory_path() / "lgap_run_b";
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);

    const json summary_a = run_experiment_files(config, /*baseline=*/true, dir_a);
    const json summary_b = run_experiment_files(config, /*baseline=*/true, dir_b);
    CHECK(summary_a == summary_b);

    for (const char* name :
         {"run_log.csv", "run_baseline_log.csv", "run_gap.csv", "run_tracking.csv",
          "run_singular_values.csv", "run_summary.json"}) {
        REQUIRE(std::filesystem::exists(dir_a / name));
        std::ifstream a(dir_a / name), b(dir_b / name);
        const std::string text_a((std::istreambuf_iterator<char>(a)),
                                 std::istreambuf_iterator<char>());
        const std::string text_b((std::istreambuf_iterator<char>(b)),
                                 std::istreambuf_iterator<char>());
        CHECK(text_a == text_b);
        CHECK(!text_a.empty());
    }
    CHECK(summary_a.contains("config"));
    CHECK(summary_a.contains("adaptive"));
    CHECK(summary_a.contains("baseline"));

    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
}
