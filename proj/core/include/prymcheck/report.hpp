#pragma once

// Run configuration and the report assembled from verification records.
// JSON is canonical; CSV and markdown render the same record stream.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prymcheck/prym.hpp"

namespace prymcheck {

enum class Mode { verify, sweep, table, selftest };
enum class Format { json, csv, markdown };

[[nodiscard]] std::string_view to_string(Mode m);
[[nodiscard]] std::string_view to_string(Format f);
[[nodiscard]] std::optional<Mode> parse_mode(std::string_view s);
[[nodiscard]] std::optional<Format> parse_format(std::string_view s);

struct RunConfig {
  Mode mode = Mode::verify;
  std::int64_t n = 8;
  std::int64_t genus = 2;
  std::optional<std::vector<std::int64_t>> exponents;
  std::uint64_t samples = 1;
  std::optional<std::uint64_t> seed;
  std::vector<ClaimId> claims;  // empty: all claims
  Format format = Format::json;
  std::string out;              // empty: stdout
  // Worker threads for sweeps; 0 picks the hardware count. Not echoed,
  // since it never changes the output.
  unsigned threads = 0;

  /// Throws InputError when the mode's requirements are not met.
  void validate() const;
  [[nodiscard]] const std::vector<ClaimId>& claim_list() const;
};

/// Parses the optional JSON config file. Unknown keys are rejected.
[[nodiscard]] RunConfig parse_config(std::string_view json_text);

struct Summary {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t skip = 0;
  std::size_t findings = 0;  // failed with all chain identities holding
  std::size_t faults = 0;    // a chain identity or structural premise failed

  friend bool operator==(const Summary&, const Summary&) = default;
};

[[nodiscard]] Summary summarize(const std::vector<IsogenyReport>& records);

struct VerificationReport {
  std::string version;
  RunConfig config;
  std::vector<IsogenyReport> records;
  Summary summary;
  std::vector<std::string> assumptions;  // sorted union over the records
};

[[nodiscard]] std::string_view tool_version();
[[nodiscard]] VerificationReport make_report(const RunConfig& config, std::vector<IsogenyReport> records);

[[nodiscard]] std::string to_json(const VerificationReport& r);
[[nodiscard]] std::string to_csv(const VerificationReport& r);
[[nodiscard]] std::string to_markdown(const VerificationReport& r);
[[nodiscard]] std::string render(const VerificationReport& r, Format f);

}  // namespace prymcheck
