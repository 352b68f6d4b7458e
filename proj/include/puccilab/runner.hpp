#pragma once

#include <string>
#include <vector>

#include "puccilab/serialize.hpp"

namespace puccilab {

struct RunOutcome {
    int exit_code = 0;  // 0 pass, 1 asserted check failed, 2 bad config, 3 numerical failure
    std::vector<std::string> files_written;
    std::string message;
};

// Dispatches one batch command (verify | sweep | bounds | eigen | classify)
// against a JSON config and writes its report files under out_dir. Exit 0
// iff every asserted check passes; reported-only findings never fail a run.
RunOutcome run_command(const std::string& command, const Json& config, const std::string& out_dir,
                       bool want_trajectory);

int log_level();  // 0 quiet, 1 info, 2 debug (PUCCILAB_LOG / TOOL_LOG)

}  // namespace puccilab
