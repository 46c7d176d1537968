#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lish::cli {

enum ExitCode : int { ok = 0, invalid = 1, usage = 2 };

struct Result {
    std::string out;
    std::string err;
    int code = ExitCode::ok;
};

struct Environment {
    /// LISH_MODE: overrides the document's mode for policy checks.
    std::optional<std::string> mode;

    static Environment from_process();
};

/// Runs the `lish` command line. `args` excludes the program name; a file
/// argument of "-" reads `input`.
Result run(const std::vector<std::string>& args, std::string_view input = {}, const Environment& env = {});

} // namespace lish::cli
