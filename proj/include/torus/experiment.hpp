#pragma once

// Experiment runner: JSON config in, pipeline out (spreader construction /
// stage verification / rotation estimation / spreading probe / rendering),
// with deterministic JSON result records and exit-code contract
// 0 = pass, 1 = error, 2 = violated, 3 = inconclusive.

#include "torus/serialize.hpp"
#include "torus/spreader.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace torus::experiment {

using serialize::json;

enum class Command { build, verify, rotate, probe, render };

struct ExperimentConfig {
    Command command = Command::build;
    std::uint64_t seed = 0;
    std::filesystem::path output_dir;  // empty: no artifacts written

    // build / verify / family targets
    std::vector<geom::Vec2Q> generators;
    double r = 1.0;
    int xi_override = 0;
    geom::Rat a{0};
    double b = 0.0;
    int resolution = 100;
    geom::Vec2 basepoint{0.5, 0.5};

    // rotate
    std::optional<dynamics::LiftWord> map_word;
    int map_q = 1;  // > 1 wraps the word in a C_q conjugation
    std::string mode = "classic";
    long n = 10;
    std::vector<long> subsequence;

    // probe
    double epsilon = 0.1;
    double radius = 1.0;
    long max_n = 5;
    geom::Vec2 u_center{0.5, 0.5};
    double u_radius = 0.1;
    int u_samples = 40;

    // render
    std::filesystem::path record_path;

    json echo;  // the parsed config as given
};

ExperimentConfig parse_config(const json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

struct RunResult {
    json record;
    int status = 0;  // exit-code contract
};

// Executes the configured pipeline; artifacts and the record JSON are
// written atomically under config.output_dir when set.
RunResult run(const ExperimentConfig& config);

// Record path used by run() when output_dir is set.
std::filesystem::path record_file(const ExperimentConfig& config);

}  // namespace torus::experiment
