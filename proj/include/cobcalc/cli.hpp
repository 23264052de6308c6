#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cobcalc/equivariant.hpp"
#include "cobcalc/fgl.hpp"

namespace cobcalc::cli {

enum class OutputFormat { text, json };

// Exit statuses of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitRefused = 3;  // cap exceeded, tower not stabilized
inline constexpr int kExitInternal = 4;

struct JobConfig {
  // "fgl check", "bg", "flag", "sif", "pbf", "tower bgm", "selftest"
  std::string subcommand;
  FglKind fgl = FglKind::universal_rational;
  // Unset caps default to M=6, W=5, raised to cover the requested degrees.
  std::optional<int> max_t;
  std::optional<int> max_w;
  std::string group = "GL2";
  std::vector<IntMatrix> weyl;  // explicit generators; override `group`
  std::optional<std::pair<int, int>> degrees;
  std::optional<int> torder;
  std::optional<int> rank;
  int vars = 3;
  std::optional<int> levels;
  int trials = 100;
  bool emit_basis = false;
  std::string a = "1";
  std::string b = "t1";
  OutputFormat format = OutputFormat::json;
  std::uint64_t seed = 42;
  unsigned threads = 1;
};

/// "0..4", "-2..3" or a single degree "3".
std::pair<int, int> parse_degree_range(std::string_view text);
/// Rows separated by ';', entries by ',': "0,1;1,0".
IntMatrix parse_weyl_matrix(std::string_view text);
/// Worker count from the COBCALC_THREADS value (nullptr if unset): the
/// hardware concurrency, capped by the variable. Throws InvalidInput on a
/// malformed value.
unsigned threads_from_env(const char* value);

/// Validates the configuration and fills in defaulted caps. Throws
/// InvalidInput with an actionable message.
JobConfig resolve(const JobConfig& config);

/// Runs the job, writes the report (or an error object) to out and returns
/// the exit status.
int run(const JobConfig& config, std::ostream& out);

/// Writes the machine-readable error object and returns its exit status.
int report_error(std::string_view kind, std::string_view message, OutputFormat format, std::ostream& out);

}  // namespace cobcalc::cli
