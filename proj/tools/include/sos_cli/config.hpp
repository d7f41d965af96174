#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sos/disorder.hpp"
#include "sos/lattice.hpp"

namespace sos::cli {

// Everything a run depends on. Serialized as `key = value` lines; output files carry
// the same lines behind a "#config: " prefix so any output can be fed back as --config.
struct ExperimentConfig {
    std::string command;
    std::string experiment;

    double beta = 3.5;
    double alpha = 0.0;
    double h = 0.0;
    int bc = 0;
    std::optional<HeightWindow> window;  // default_window(bc) when unset
    int contour_length_cap = 0;          // 0 means none
    DisorderSpec disorder = DisorderSpec::rademacher();

    int width = 6;
    int height = 6;
    std::vector<double> h_grid;
    std::vector<int> n_grid;
    std::vector<double> beta_grid;
    std::vector<int> sides;

    int replicas = 20;
    std::uint64_t seed = 1;
    std::uint64_t sweeps = 200;
    std::uint64_t burn_in = 50;
    unsigned threads = 0;

    std::string input;
    std::string out;
    std::string checkpoint;
    std::string mcmc_mode = "curve";
    std::vector<std::string> tasks;
    int batch = 0;
    int L = 8;
    int M = 32;
    double theta1 = 0.0;  // 0 means estimate
    double tolerance = 1e-9;

    ModelParams model() const;

    std::vector<std::pair<std::string, std::string>> entries() const;
    void set(const std::string& key, const std::string& value);

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

std::string serialize(const ExperimentConfig& c);
// Entries are applied on top of `base`.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base = {});
// Accepts a key/value file, any CSV output with "#config:" lines, or a JSON output
// with a "config" object.
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

std::string format_double(double v);

}  // namespace sos::cli
