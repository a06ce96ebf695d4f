#pragma once

#include "run_config.hpp"

#include <functional>
#include <string>
#include <vector>

namespace pbessel::cli {

/// Shared run settings that are not part of the experiment config.
struct RunContext {
    int workers = 1;
};

struct Command {
    std::string name;
    std::string description;
    std::vector<Param> params;
    std::function<RunResult(const RunConfig&, const RunContext&)> run;
};

/// kernel-check, hankel-check, solve, riesz, cz-verify, sweep, maxreg.
const std::vector<Command>& commands();

} // namespace pbessel::cli
