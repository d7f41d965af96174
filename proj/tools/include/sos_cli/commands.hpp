#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sos_cli/config.hpp"

namespace sos::cli {

// Each command writes its report to `out` and returns the number of violated checks.
int cmd_contours(const ExperimentConfig& c, std::ostream& out);
int cmd_oracle(const ExperimentConfig& c, std::ostream& out);
int cmd_mcmc(const ExperimentConfig& c, std::ostream& out);
int cmd_gfunc(const ExperimentConfig& c, std::ostream& out);
int cmd_experiment(const ExperimentConfig& c, std::ostream& out);

const std::vector<std::string>& experiment_names();
// Defaults for a canned experiment; config files and flags are applied on top.
ExperimentConfig experiment_preset(const std::string& name);

}  // namespace sos::cli
