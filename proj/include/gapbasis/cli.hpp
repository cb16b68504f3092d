#pragma once

// Command-line front end. run() executes one parsed request; run_cli() parses
// argv with CLI11 first. Exit codes: 0 ok, 1 usage, 2 invalid input,
// 3 verification failure.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace gapbasis {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitVerificationFailed = 3;

struct CommandRequest {
  std::string subcommand;
  std::optional<int> n;
  std::optional<std::string> f_path;
  std::optional<std::string> g_path;
  std::string format = "json";  // json | table | csv
  int depth = 6;
  bool up_to_perm = false;
  std::optional<std::string> cache_dir;  // falls back to $GAPBASIS_CACHE
  std::string engine = "pruned";

  // comb
  std::string comb_action;  // make | classify | extract
  int m = 2;
  int u = 0;
  int v = 0;
  int length = 3;
  std::uint64_t seed = 0;
  std::optional<std::string> nodes_path;
};

int run(const CommandRequest& request, std::ostream& out, std::ostream& err);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gapbasis
