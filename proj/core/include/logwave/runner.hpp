#pragma once

#include "logwave/run_config.hpp"

#include <string>

namespace logwave::run {

struct RunOutcome {
    int status = 0; ///< 0 = success
    std::string message;
    std::string directory; ///< where the artifacts were written
};

/// Execute one experiment (kind = ode | pde | similarity | rates); writes a
/// manifest, CSV data, a resolved config echo, and a verdict JSON into the
/// output directory. Deterministic: identical configs give byte-identical
/// CSV payloads.
RunOutcome run(const RunConfig& cfg);

/// Run the (p, a) grid of ODE studies on a bounded worker pool and aggregate
/// fitted exponents and kappa ratios into table.csv. Per-cell failures are
/// recorded in their row and never abort the other cells.
RunOutcome sweep(const RunConfig& cfg, int jobs = 0);

} // namespace logwave::run
