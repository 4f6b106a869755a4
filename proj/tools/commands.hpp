#pragma once

#include "cli_support.hpp"

namespace gasket::cli {

// Each returns the process exit code; library exceptions propagate to the
// dispatcher, which maps them to exit codes.
int run_sandpile(RunConfig& cfg);
int run_rotor(RunConfig& cfg);
int run_idla(RunConfig& cfg);
int run_obstacle(RunConfig& cfg);
int run_limit(RunConfig& cfg);
int run_render(RunConfig& cfg);
int run_selftest(RunConfig& cfg);

}  // namespace gasket::cli
