#pragma once

// Drivers behind the command-line subcommands.

#include <cstdint>
#include <string>
#include <vector>

#include "prymcheck/report.hpp"

namespace prymcheck {

/// Exit status contract of the command-line tool.
namespace exit_status {
inline constexpr int ok = 0;
inline constexpr int mismatch = 1;
inline constexpr int invalid_input = 2;
inline constexpr int internal = 3;
}  // namespace exit_status

[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x);
/// Per-sample seeds, fixed by (seed, index) alone.
[[nodiscard]] std::vector<std::uint64_t> sweep_seeds(std::uint64_t seed, std::uint64_t samples);

/// All requested claims on one datum, in claim order.
[[nodiscard]] std::vector<IsogenyReport> verify_datum(const MonodromyDatum& d, const std::vector<ClaimId>& claims);

/// The datum of a verify run: explicit exponents, else sampled from the seed.
[[nodiscard]] MonodromyDatum resolve_datum(const RunConfig& c);

[[nodiscard]] VerificationReport run_verify(const RunConfig& c);
/// Data-parallel; the record order depends only on the sample index.
[[nodiscard]] VerificationReport run_sweep(const RunConfig& c);
/// Built-in data through every claim; used to check the implementation.
[[nodiscard]] VerificationReport run_selftest(const RunConfig& c);

struct TableCell {
  std::int64_t n = 0;
  std::int64_t genus = 0;
  std::string regime;  // "odd", "2 mod 4", "r >= 2"
  Integer degree;
};

/// deg a over n = 2..c.n and g = 2..c.genus.
[[nodiscard]] std::vector<TableCell> degree_table(const RunConfig& c);
[[nodiscard]] std::string render_table(const RunConfig& c);

/// 0 when every record passes or is skipped, 1 on a finding, 3 on a fault.
/// Selftest ignores findings.
[[nodiscard]] int exit_code(const VerificationReport& r);

}  // namespace prymcheck
