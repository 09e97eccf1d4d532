#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fsq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIncomplete = 2;
inline constexpr int kExitViolation = 3;

enum class OutputFormat { Json, Csv, Text };

struct RunConfig {
  std::string subcommand;  // "factor", "table", "verify", "scan wilson", ...
  std::uint64_t max_n = 0;
  std::uint64_t max_p = 0;
  std::uint64_t n = 0;
  std::optional<std::string> value;             // factor: explicit integer
  std::optional<std::uint64_t> factorial_plus;  // factor: N for N!+1
  std::uint64_t budget_ms = 120'000;
  unsigned workers = 1;
  OutputFormat format = OutputFormat::Json;
  std::optional<std::filesystem::path> checkpoint;
  std::uint64_t seed = 0;
};

/// Set from a signal handler; running scans stop at the next work item.
std::atomic<bool>& stop_flag();

/// Parses `args` (without the program name), runs the subcommand, writes
/// results to `out` and progress or diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fsq::cli
