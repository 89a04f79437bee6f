#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace primpair::cli {

enum class Command { Classify, Table, Certify, Verify, Factor };
enum class Format { Json, Csv, Pretty };

inline constexpr std::uint64_t kSafePairCap = 10'000'000'000ULL;

struct RunConfig {
  Command command = Command::Classify;
  std::uint32_t p = 2;
  unsigned k = 1;
  unsigned k_max = 1;
  unsigned m1 = 1;
  unsigned m2 = 1;
  double t = 6;
  std::uint64_t brute_cap = 64;        // classify/table: largest q handed to brute force
  std::uint64_t pair_cap = 100'000'000;
  bool unsafe_cap = false;
  bool timing = false;
  unsigned jobs = 1;
  unsigned factor_limit_bits = 80;
  unsigned samples = 200;
  std::uint64_t seed = 1;
  Format format = Format::Json;
  std::string number;  // factor
  std::optional<std::string> cache_dir;
};

// Exit codes: 0 success, 1 usage or domain error, 2 capacity error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCapacity = 2;

// Validates caps and dispatches. Reports go to out, diagnostics to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv into a RunConfig (PRIMPAIR_CACHE_DIR is read here) and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace primpair::cli
