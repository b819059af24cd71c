#include "compreg/ingest.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <unordered_set>

#include "compreg/composition.hpp"
#include "compreg/error.hpp"

namespace compreg {

namespace {

struct Field {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Field> split_fields(std::string_view line) {
  std::vector<Field> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back({line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start),
                   start + 1});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_real(const Field& f, std::size_t line, const char* name) {
  double v = 0.0;
  const char* end = f.text.data() + f.text.size();
  auto [ptr, ec] = std::from_chars(f.text.data(), end, v, std::chars_format::fixed);
  if (f.text.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ParseError(line, f.column, std::string("invalid number for ") + name + ": '" + std::string(f.text) + "'");
  }
  return v;
}

long parse_integer(const Field& f, std::size_t line, const char* name) {
  long v = 0;
  const char* end = f.text.data() + f.text.size();
  auto [ptr, ec] = std::from_chars(f.text.data(), end, v);
  if (f.text.empty() || ec != std::errc() || ptr != end) {
    throw ParseError(line, f.column, std::string("invalid integer for ") + name + ": '" + std::string(f.text) + "'");
  }
  return v;
}

std::string format_percent(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed);
  std::string s(buf.data(), ptr);
  const auto dot = s.find('.');
  if (dot == std::string::npos) return s + ".00";
  const std::size_t decimals = s.size() - dot - 1;
  if (decimals < 2) s.append(2 - decimals, '0');
  return s;
}

}  // namespace

MatchTable parse_matches(std::string_view text, const ParseOptions& options) {
  MatchTable table;
  std::unordered_set<long> seen;
  bool header_seen = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    if (!header_seen) {
      if (line != kMatchCsvHeader) {
        throw ParseError(line_no, 1, "expected header '" + std::string(kMatchCsvHeader) + "'");
      }
      header_seen = true;
      continue;
    }

    const auto fields = split_fields(line);
    if (fields.size() != 6) {
      const std::size_t col = fields.size() > 6 ? fields[6].column : line.size() + 1;
      throw ParseError(line_no, col, "expected 6 fields, found " + std::to_string(fields.size()));
    }
    MatchRecord rec;
    rec.match_id = parse_integer(fields[0], line_no, "match_id");
    rec.attack_pct = parse_real(fields[1], line_no, "attack_pct");
    rec.block_pct = parse_real(fields[2], line_no, "block_pct");
    rec.serve_pct = parse_real(fields[3], line_no, "serve_pct");
    rec.error_pct = parse_real(fields[4], line_no, "error_pct");
    const long z = parse_integer(fields[5], line_no, "z");

    if (rec.match_id <= 0) throw ValidationError(rec.match_id, "match_id must be positive");
    if (z != 0 && z != 1) throw ValidationError(rec.match_id, "z must be 0 or 1, got " + std::to_string(z));
    rec.z = static_cast<int>(z);
    for (double v : {rec.attack_pct, rec.block_pct, rec.serve_pct, rec.error_pct}) {
      if (!(v > 0.0)) throw ValidationError(rec.match_id, "percentages must be strictly positive");
    }
    const double sum = rec.attack_pct + rec.block_pct + rec.serve_pct + rec.error_pct;
    if (std::abs(sum - 100.0) > kPercentSumTolerance) {
      const std::string msg = "percentages sum to " + format_percent(sum) + ", not 100 +/- 0.05";
      if (!options.lenient) throw ValidationError(rec.match_id, msg);
      table.warnings.push_back("match " + std::to_string(rec.match_id) + ": " + msg);
    }
    if (!seen.insert(rec.match_id).second) {
      throw ValidationError(rec.match_id, "duplicate match_id", ErrorCode::DuplicateId);
    }
    table.records.push_back(rec);
  }
  if (!header_seen) throw ParseError(line_no + 1, 1, "missing header");
  return table;
}

std::string serialize_matches(const MatchTable& table) {
  std::string out(kMatchCsvHeader);
  out += '\n';
  for (const auto& r : table.records) {
    out += std::to_string(r.match_id);
    for (double v : {r.attack_pct, r.block_pct, r.serve_pct, r.error_pct}) {
      out += ',';
      out += format_percent(v);
    }
    out += ',';
    out += std::to_string(r.z);
    out += '\n';
  }
  return out;
}

RegressionDataset to_regression_dataset(const MatchTable& table) {
  const auto n = static_cast<Eigen::Index>(table.records.size());
  RegressionDataset data;
  data.responses.resize(n, 3);
  data.covariates.resize(n, 1);
  data.labels = {"attack", "block", "serve"};
  data.ref_label = "error";
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = table.records[static_cast<std::size_t>(i)];
    const std::array raw{r.attack_pct, r.block_pct, r.serve_pct, r.error_pct};
    try {
      const LogRatioVector y = alr(closure(raw));
      for (Eigen::Index j = 0; j < 3; ++j) data.responses(i, j) = y.values[static_cast<std::size_t>(j)];
    } catch (const Error& e) {
      throw ValidationError(r.match_id, e.what(), e.code());
    }
    data.covariates(i, 0) = r.z;
  }
  return data;
}

MatchTable bundled_matches() { return parse_matches(bundled_match_csv()); }

std::uint64_t content_digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace compreg
