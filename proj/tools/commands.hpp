#pragma once

#include "run_config.hpp"

namespace etop::cli {

/// Thrown by cluster when no qualifying real eigenvalue exists (exit 3).
struct NoStructureError : Error {
  using Error::Error;
};

int cmd_spectrum(const RunConfig& config);
int cmd_sweep(const RunConfig& config);
int cmd_oracle(const RunConfig& config);
int cmd_cluster(const RunConfig& config);
int cmd_baseline(const RunConfig& config);

}  // namespace etop::cli
