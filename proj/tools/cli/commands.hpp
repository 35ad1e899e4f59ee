#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace officelab::cli {

enum ExitCode : int { ok = 0, validation_failure = 1, stage_failure = 2 };

enum class TrackSource { truth, decoded };

struct Options {
  std::optional<std::filesystem::path> config;
  std::filesystem::path out;
  std::optional<std::uint64_t> seed;
  TrackSource source = TrackSource::decoded;
};

/// Stages in pipeline order.
inline const std::vector<std::string> kStages{"simulate", "observe", "fuse",
                                              "decode",   "analyze", "graph"};

/// Runs one stage (or "pipeline"). Errors are reported on the logger and
/// mapped to an exit code; nothing is thrown.
int run_command(const std::string& command, const Options& options);

/// Writes a built-in scenario config as JSON.
int write_scenario(const std::string& name, std::uint64_t seed,
                   const std::filesystem::path& path);

/// Full command-line entry point, argv[0] included.
int main(int argc, const char* const* argv);

}  // namespace officelab::cli
