#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "compreg/regress.hpp"

namespace compreg {

/// One match: the winning team's points split by source, in percent.
struct MatchRecord {
  long match_id = 0;
  double attack_pct = 0.0;
  double block_pct = 0.0;
  double serve_pct = 0.0;
  double error_pct = 0.0;  ///< points from opponent errors; the reference part
  int z = 0;

  friend bool operator==(const MatchRecord&, const MatchRecord&) = default;
};

struct MatchTable {
  std::vector<MatchRecord> records;
  /// Downgraded invariant violations collected in lenient mode.
  std::vector<std::string> warnings;
};

inline constexpr std::string_view kMatchCsvHeader = "match_id,attack_pct,block_pct,serve_pct,error_pct,z";

/// Rows must sum to 100 within this many percentage points.
inline constexpr double kPercentSumTolerance = 0.05;

struct ParseOptions {
  /// Report percentage-sum violations as warnings instead of throwing.
  bool lenient = false;
};

/**
 * Parses the match CSV: the exact header line, then one row per match.
 * Blank lines and lines starting with '#' are skipped; the trailing newline
 * is optional. Row order is preserved.
 *
 * Throws ParseError for malformed text, ValidationError for domain
 * violations and ValidationError with code DuplicateId for repeated ids.
 */
MatchTable parse_matches(std::string_view text, const ParseOptions& options = {});

/// Writes the CSV form (header plus one line per record, newline-terminated).
/// Numbers use the shortest exact decimal with at least two decimals.
std::string serialize_matches(const MatchTable& table);

/// Closure + ALR of each row (reference = error_pct), z as the single
/// covariate. Composition errors are rethrown with the match id attached.
RegressionDataset to_regression_dataset(const MatchTable& table);

/// Transcription of the 128-match 2011/2012 Super League table.
std::string_view bundled_match_csv();
MatchTable bundled_matches();

/// 64-bit FNV-1a over the given bytes; used to pin the bundled table contents.
std::uint64_t content_digest(std::string_view text);

}  // namespace compreg
