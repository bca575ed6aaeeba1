#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cloneblame {

struct ProcessResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

using EnvOverrides = std::vector<std::pair<std::string, std::string>>;

/// Runs argv[0] (looked up on PATH) with the current environment plus
/// `env`, capturing stdout and stderr. Throws ConfigError when the executable
/// cannot be started.
ProcessResult run_process(const std::vector<std::string>& argv, const EnvOverrides& env = {});

/// Git binary to invoke: $CLONE_BLAME_GIT when set, otherwise "git".
std::string git_executable();

/// Runs `git -C <repo> <args...>`.
ProcessResult run_git(const std::string& repo, const std::vector<std::string>& args, const EnvOverrides& env = {});

}  // namespace cloneblame
