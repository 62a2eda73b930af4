#pragma once

#include <string>
#include <vector>

namespace dbcause::cli {

enum ExitCode { ok = 0, usage_error = 1, semantic_error = 2, cap_exceeded = 3 };

struct Outcome {
    int exit_code = ok;
    std::string out;  // report (text or JSON)
    std::string err;  // diagnostics
};

/// Runs one command line (without the program name).
Outcome execute(const std::vector<std::string>& args);

}  // namespace dbcause::cli
