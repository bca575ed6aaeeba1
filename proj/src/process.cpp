#include "cloneblame/process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <map>

#include "cloneblame/errors.hpp"

extern char** environ;

namespace cloneblame {

namespace {

class Pipe {
public:
    Pipe() {
        if (::pipe2(fds_.data(), O_CLOEXEC) != 0) {
            throw Error(std::string("pipe failed: ") + std::strerror(errno));
        }
    }
    ~Pipe() {
        close_read();
        close_write();
    }
    Pipe(const Pipe&) = delete;
    Pipe& operator=(const Pipe&) = delete;

    int read_end() const { return fds_[0]; }
    int write_end() const { return fds_[1]; }
    void close_read() { close_fd(fds_[0]); }
    void close_write() { close_fd(fds_[1]); }

private:
    static void close_fd(int& fd) {
        if (fd >= 0) {
            ::close(fd);
            fd = -1;
        }
    }
    std::array<int, 2> fds_{-1, -1};
};

std::vector<std::string> merged_environment(const EnvOverrides& overrides) {
    std::map<std::string, std::string> vars;
    for (char** e = environ; e != nullptr && *e != nullptr; ++e) {
        std::string entry(*e);
        const auto eq = entry.find('=');
        if (eq != std::string::npos) {
            vars[entry.substr(0, eq)] = entry.substr(eq + 1);
        }
    }
    for (const auto& [key, value] : overrides) {
        vars[key] = value;
    }
    std::vector<std::string> out;
    out.reserve(vars.size());
    for (const auto& [key, value] : vars) {
        out.push_back(key + "=" + value);
    }
    return out;
}

}  // namespace

ProcessResult run_process(const std::vector<std::string>& argv, const EnvOverrides& env) {
    if (argv.empty()) {
        throw Error("run_process: empty argv");
    }
    Pipe out_pipe;
    Pipe err_pipe;

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, out_pipe.write_end(), STDOUT_FILENO);
    posix_spawn_file_actions_adddup2(&actions, err_pipe.write_end(), STDERR_FILENO);
    posix_spawn_file_actions_addclose(&actions, out_pipe.read_end());
    posix_spawn_file_actions_addclose(&actions, err_pipe.read_end());
    posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);

    std::vector<char*> c_argv;
    for (const auto& a : argv) {
        c_argv.push_back(const_cast<char*>(a.c_str()));
    }
    c_argv.push_back(nullptr);

    std::vector<std::string> env_strings;
    std::vector<char*> c_env;
    char** envp = environ;
    if (!env.empty()) {
        env_strings = merged_environment(env);
        for (auto& s : env_strings) {
            c_env.push_back(s.data());
        }
        c_env.push_back(nullptr);
        envp = c_env.data();
    }

    pid_t pid = 0;
    const int rc = posix_spawnp(&pid, c_argv[0], &actions, nullptr, c_argv.data(), envp);
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0) {
        throw ConfigError("cannot execute '" + argv[0] + "': " + std::strerror(rc));
    }
    out_pipe.close_write();
    err_pipe.close_write();

    ProcessResult result;
    std::array<pollfd, 2> fds{pollfd{out_pipe.read_end(), POLLIN, 0}, pollfd{err_pipe.read_end(), POLLIN, 0}};
    std::array<std::string*, 2> sinks{&result.out, &result.err};
    int open_streams = 2;
    std::array<char, 65536> buffer{};
    while (open_streams > 0) {
        if (::poll(fds.data(), fds.size(), -1) < 0) {
            if (errno == EINTR) {
                continue;
            }
            break;
        }
        for (std::size_t i = 0; i < fds.size(); ++i) {
            if (fds[i].fd < 0 || fds[i].revents == 0) {
                continue;
            }
            const ssize_t n = ::read(fds[i].fd, buffer.data(), buffer.size());
            if (n > 0) {
                sinks[i]->append(buffer.data(), static_cast<std::size_t>(n));
            } else if (n == 0 || errno != EINTR) {
                fds[i].fd = -1;
                --open_streams;
            }
        }
    }

    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    if (WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    } else {
        result.exit_code = 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
    }
    // posix_spawnp reports a missing binary through exit code 127 on some libcs.
    if (result.exit_code == 127 && result.out.empty() && result.err.empty()) {
        throw ConfigError("cannot execute '" + argv[0] + "'");
    }
    return result;
}

std::string git_executable() {
    if (const char* override_path = std::getenv("CLONE_BLAME_GIT"); override_path != nullptr && *override_path) {
        return override_path;
    }
    return "git";
}

ProcessResult run_git(const std::string& repo, const std::vector<std::string>& args, const EnvOverrides& env) {
    std::vector<std::string> argv{git_executable(), "-C", repo};
    argv.insert(argv.end(), args.begin(), args.end());
    return run_process(argv, env);
}

}  // namespace cloneblame
