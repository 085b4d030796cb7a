#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qmf::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kInvalidInput = 2,
  kInsufficientPrecision = 3,
};

// Environment variable naming the default cache directory.
inline constexpr const char* kCacheEnv = "QMF_CACHE_DIR";

struct CommandConfig {
  // eis, ramanujan-check, hecke-apply, hecke-eigencheck, modeq, wronskian,
  // tangency, jpoly, verify-all
  std::string subcommand;
  std::uint64_t d = 1;
  unsigned i = 1;
  unsigned k = 0;
  unsigned weight = 0;
  std::size_t prec = 0;  // 0 selects the command's default
  std::uint64_t pow = 1;
  std::uint64_t dmax = 3;
  bool refined = false;
  bool second_iterate = false;
  bool no_verify = false;
  bool no_cache = false;
  std::string method = "direct";  // direct | hecke
  std::string format = "poly";    // poly | table | json
  std::string cache_dir;          // empty: $QMF_CACHE_DIR, else ./qmf-cache
  std::string input;              // series file for hecke apply; "-" is stdin
  std::string output;             // empty: stdout
};

// Data goes to `out`, diagnostics to `err`.
int run_command(const CommandConfig& config, std::ostream& out, std::ostream& err);

// Parses arguments (without the program name) and runs the command.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmf::cli
