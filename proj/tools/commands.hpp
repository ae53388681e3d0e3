#pragma once

#include "run_config.hpp"

namespace sl2avg::cli {

// each returns the process exit code: 0 = gates pass, 1 = gate failure
int cmd_spherical(const RunConfig& cfg);
int cmd_spectral(const RunConfig& cfg);
int cmd_ergodic(const RunConfig& cfg);
int cmd_oracle(const RunConfig& cfg);

}  // namespace sl2avg::cli
