#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace elg::cli {

enum class Command { Scan, Feasibility, Zeno, Sample, BcCheck };
enum class OutputFormat { Csv, Json };

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSizeLimit = 3;

/// Environment variable naming the directory used when --output is not given.
inline constexpr const char* kOutputDirEnv = "ELG_OUTPUT_DIR";

struct RunConfig {
    Command command = Command::Scan;
    std::string spin = "1/2";
    int n = 3;
    double theta_min = 0.0;
    double theta_max = 6.283185307179586;
    int steps = 720;
    /// Single angle for zeno, sample and bc-check; each has its own default.
    std::optional<double> theta;
    bool degrees = false;
    std::string output;
    OutputFormat format = OutputFormat::Csv;
    std::uint64_t seed = 1;
    std::uint64_t shots = 100000;
    int bootstrap = 200;
    int workers = 1;
    /// bc-check: number of random angle configurations (0 = one equidistant configuration).
    int configs = 0;
    std::vector<int> n_ladder{3, 10, 30, 100, 300};
};

/// Invalid configuration; `flag` names the offending command-line flag.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string flag, const std::string& what) : std::runtime_error(what), flag_(std::move(flag)) {}

    [[nodiscard]] const std::string& flag() const noexcept { return flag_; }

private:
    std::string flag_;
};

struct CommandResult {
    /// CSV or JSON document to write to the output file.
    std::string document;
    /// Human-readable report for the terminal.
    std::string summary;
    int exit_code = kExitOk;
};

/// Runs one command. Configuration problems come back as kExitConfigError
/// and LP size violations as kExitSizeLimit, with the message in `summary`.
CommandResult run_command(const RunConfig& config);

/// "%.12g" formatting used for every number in CSV and JSON output.
std::string format_number(double value);

std::string command_name(Command command);

/// --output if given ("-" means stdout), otherwise
/// $ELG_OUTPUT_DIR/<command>.<csv|json>, falling back to the working directory.
std::filesystem::path resolve_output_path(const RunConfig& config, const char* output_dir_env);

} // namespace elg::cli
