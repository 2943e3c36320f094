#include "mcmo/xfoil_client.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mcmo {

namespace {

namespace fs = std::filesystem;

bool is_separator_line(const std::string& line) {
    bool any = false;
    for (char c : line) {
        if (c == '-') {
            any = true;
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return any;
}

bool is_blank(const std::string& line) {
    for (char c : line) {
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

bool parse_row(const std::string& line, PolarPoint& out) {
    std::istringstream ls(line);
    double a, cl, cd;
    if (ls >> a >> cl >> cd) {
        out = {a, cl, cd};
        return true;
    }
    return false;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::vector<PolarPoint> parse_polar(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }

    // Locate the column header; XFOIL prints "alpha CL CD CDp CM ...".
    int header = -1;
    for (int i = 0; i < static_cast<int>(lines.size()); ++i) {
        std::string low = lines[i];
        for (char& c : low) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (low.find("alpha") != std::string::npos && low.find("cd") != std::string::npos) {
            header = i;
            break;
        }
    }

    std::vector<PolarPoint> points;
    int start = 0;
    if (header >= 0) {
        start = header + 1;
        if (start < static_cast<int>(lines.size()) && is_separator_line(lines[start])) ++start;
        for (int i = start; i < static_cast<int>(lines.size()); ++i) {
            if (is_blank(lines[i])) continue;
            PolarPoint p;
            if (!parse_row(lines[i], p)) {
                throw std::runtime_error("parse_polar: malformed data row at line " +
                                         std::to_string(i + 1));
            }
            points.push_back(p);
        }
        return points;
    }

    // No header: accept a bare table of numeric rows, nothing else.
    bool saw_content = false;
    for (int i = 0; i < static_cast<int>(lines.size()); ++i) {
        if (is_blank(lines[i]) || is_separator_line(lines[i])) continue;
        saw_content = true;
        PolarPoint p;
        if (!parse_row(lines[i], p)) {
            throw std::runtime_error("parse_polar: unrecognized content at line " +
                                     std::to_string(i + 1));
        }
        points.push_back(p);
    }
    if (!saw_content) return {};
    return points;
}

std::string xfoil_command_script(const XfoilConfig& config, const std::string& coords_file,
                                 const std::string& polar_file, double alpha, double reynolds) {
    std::ostringstream s;
    s.precision(10);
    s << "PLOP\n"
      << "G F\n"
      << "\n"
      << "LOAD " << coords_file << "\n"
      << "PANE\n"
      << "OPER\n"
      << "VPAR\n"
      << "N " << config.ncrit << "\n"
      << "\n"
      << "VISC " << reynolds << "\n"
      << "ITER " << config.iter_limit << "\n"
      << "PACC\n"
      << polar_file << "\n"
      << "\n"
      << "ALFA " << alpha << "\n"
      << "PACC\n"
      << "\n"
      << "QUIT\n";
    return s.str();
}

namespace {

struct SessionFiles {
    fs::path dir;
    fs::path coords, script, polar, log;
    bool keep = false;

    ~SessionFiles() {
        if (keep) return;
        std::error_code ec;
        fs::remove(coords, ec);
        fs::remove(script, ec);
        fs::remove(polar, ec);
        fs::remove(log, ec);
    }
};

// Spawn the solver with stdin/stdout redirected to files; returns the exit
// status or -1 when the deadline passed (child killed).
int run_process_with_timeout(const std::string& binary, const fs::path& workdir,
                             const fs::path& stdin_file, const fs::path& log_file,
                             long timeout_ms, std::string& error) {
    const pid_t pid = fork();
    if (pid < 0) {
        error = "fork failed";
        return 126;
    }
    if (pid == 0) {
        const int in_fd = open(stdin_file.c_str(), O_RDONLY);
        const int out_fd =
            open(log_file.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
        if (in_fd < 0 || out_fd < 0) _exit(125);
        dup2(in_fd, STDIN_FILENO);
        dup2(out_fd, STDOUT_FILENO);
        dup2(out_fd, STDERR_FILENO);
        close(in_fd);
        close(out_fd);
        if (chdir(workdir.c_str()) != 0) _exit(124);
        execl("/bin/sh", "sh", "-c", binary.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }

    const auto deadline =
        std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
    int status = 0;
    for (;;) {
        const pid_t done = waitpid(pid, &status, WNOHANG);
        if (done == pid) {
            if (WIFEXITED(status)) return WEXITSTATUS(status);
            error = "terminated by signal";
            return 128;
        }
        if (std::chrono::steady_clock::now() >= deadline) {
            kill(pid, SIGKILL);
            waitpid(pid, &status, 0);
            return -1;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
}

}  // namespace

AeroResult external_evaluate(const XfoilConfig& config, const AirfoilGeometry& geometry,
                             double alpha, double reynolds) {
    if (config.binary.empty()) {
        return AeroFailure{AeroFailureKind::ProcessError, "no solver binary configured"};
    }

    static std::atomic<long> session_id{0};
    const long id = session_id.fetch_add(1);

    SessionFiles files;
    files.keep = config.keep_files;
    files.dir = config.workdir.empty() ? fs::temp_directory_path() / "mcmo-xfoil"
                                       : fs::path(config.workdir);
    std::error_code ec;
    fs::create_directories(files.dir, ec);
    const std::string tag = std::to_string(::getpid()) + "_" + std::to_string(id);
    files.coords = files.dir / ("foil_" + tag + ".dat");
    files.script = files.dir / ("cmds_" + tag + ".txt");
    files.polar = files.dir / ("polar_" + tag + ".txt");
    files.log = files.dir / ("log_" + tag + ".txt");

    try {
        write_coordinate_file(files.coords.string(), geometry);
        std::ofstream script(files.script);
        script << xfoil_command_script(config, files.coords.filename().string(),
                                       files.polar.filename().string(), alpha, reynolds);
        script.close();
        if (!script) {
            return AeroFailure{AeroFailureKind::ProcessError, "cannot write session files"};
        }
    } catch (const std::exception& e) {
        return AeroFailure{AeroFailureKind::ProcessError, e.what()};
    }

    std::string spawn_error;
    const int status = run_process_with_timeout(config.binary, files.dir, files.script,
                                                files.log, config.timeout_ms, spawn_error);
    if (status == -1) {
        return AeroFailure{AeroFailureKind::Timeout,
                           "no result within " + std::to_string(config.timeout_ms) + " ms"};
    }
    if (status != 0) {
        return AeroFailure{AeroFailureKind::ProcessError,
                           spawn_error.empty() ? "solver exited with status " +
                                                     std::to_string(status)
                                               : spawn_error};
    }
    if (!fs::exists(files.polar)) {
        return AeroFailure{AeroFailureKind::ParseError, "polar file was not produced"};
    }

    std::vector<PolarPoint> points;
    try {
        points = parse_polar(read_file(files.polar.string()));
    } catch (const std::exception& e) {
        return AeroFailure{AeroFailureKind::ParseError, e.what()};
    }
    for (const auto& p : points) {
        if (std::abs(p.alpha - alpha) <= 1e-2) {
            if (!(p.cd > 0.0) || !std::isfinite(p.cl)) {
                return AeroFailure{AeroFailureKind::NonConverged,
                                   "polar row holds unusable coefficients"};
            }
            return AeroCoefficients{p.cl, p.cd};
        }
    }
    return AeroFailure{AeroFailureKind::NonConverged,
                       "no converged polar point at the requested alpha"};
}

XfoilEvaluator::XfoilEvaluator(XfoilConfig config) : config_(std::move(config)) {
    if (config_.binary.empty()) {
        throw std::invalid_argument("XfoilEvaluator: solver binary path is required");
    }
    if (config_.n_points < 40) {
        throw std::invalid_argument("XfoilEvaluator: n_points must be >= 40");
    }
}

AeroResult XfoilEvaluator::evaluate(const KTParams& params, double reynolds) {
    std::lock_guard<std::mutex> lock(session_mutex_);
    ++session_counter_;
    try {
        const AirfoilGeometry geometry = kt_transform(params, config_.n_points);
        return external_evaluate(config_, geometry, params.alpha_deg, reynolds);
    } catch (const std::exception& e) {
        return AeroFailure{AeroFailureKind::ProcessError, e.what()};
    }
}

}  // namespace mcmo
