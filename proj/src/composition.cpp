#include "compreg/composition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "compreg/error.hpp"

namespace compreg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositivePart: return "NonPositivePart";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidComposition: return "InvalidComposition";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::OverflowGuard: return "OverflowGuard";
    case ErrorCode::RankDeficientDesign: return "RankDeficientDesign";
    case ErrorCode::TooFewObservations: return "TooFewObservations";
    case ErrorCode::InvalidLevel: return "InvalidLevel";
    case ErrorCode::DegenerateScale: return "DegenerateScale";
    case ErrorCode::BTooSmall: return "BTooSmall";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ImprobableDegeneracy: return "ImprobableDegeneracy";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::DuplicateId: return "DuplicateId";
  }
  return "Unknown";
}

namespace {

void check_labels(std::size_t parts, const std::vector<std::string>& labels) {
  if (!labels.empty() && labels.size() != parts) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(parts) + " labels, got " + std::to_string(labels.size()));
  }
}

void check_positive(std::span<const double> v) {
  if (v.size() < 2) {
    throw Error(ErrorCode::DimensionTooSmall, "a composition needs at least 2 parts, got " + std::to_string(v.size()));
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw Error(ErrorCode::NonFinite, "part " + std::to_string(i + 1) + " is not finite");
    }
    if (!(v[i] > 0.0)) {
      throw Error(ErrorCode::NonPositivePart, "part " + std::to_string(i + 1) + " is not strictly positive");
    }
  }
}

}  // namespace

Composition Composition::from_parts(std::vector<double> parts, std::vector<std::string> labels) {
  check_positive(parts);
  check_labels(parts.size(), labels);
  const double total = std::accumulate(parts.begin(), parts.end(), 0.0);
  if (std::abs(total - 1.0) > kSimplexSumTolerance) {
    throw Error(ErrorCode::InvalidComposition, "parts sum to " + std::to_string(total) + ", not 1");
  }
  return Composition(std::move(parts), std::move(labels));
}

Composition closure(std::span<const double> raw, std::vector<std::string> labels) {
  check_positive(raw);
  const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
  std::vector<double> parts(raw.size());
  std::transform(raw.begin(), raw.end(), parts.begin(), [total](double v) { return v / total; });
  return Composition::from_parts(std::move(parts), std::move(labels));
}

LogRatioVector alr(const Composition& c) {
  const std::size_t g = c.size() - 1;
  const double log_ref = std::log(c[g]);
  LogRatioVector out;
  out.values.resize(g);
  for (std::size_t j = 0; j < g; ++j) out.values[j] = std::log(c[j]) - log_ref;
  return out;
}

Composition alr_inverse(const LogRatioVector& y, std::vector<std::string> labels) {
  if (y.values.empty()) {
    throw Error(ErrorCode::DimensionTooSmall, "log-ratio vector must have at least one entry");
  }
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double v = y.values[j];
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "log-ratio " + std::to_string(j + 1) + " is not finite");
    if (std::abs(v) > kLogRatioLimit) {
      throw Error(ErrorCode::OverflowGuard, "log-ratio " + std::to_string(j + 1) + " exceeds +/-700");
    }
  }
  // Shift by the largest exponent (the reference part has exponent 0) so the
  // shared denominator cannot overflow.
  const double shift = std::max(0.0, *std::max_element(y.values.begin(), y.values.end()));
  std::vector<double> parts(y.size() + 1);
  double denom = std::exp(-shift);
  parts.back() = denom;
  for (std::size_t j = 0; j < y.size(); ++j) {
    parts[j] = std::exp(y.values[j] - shift);
    denom += parts[j];
  }
  // Spreads beyond ~745 underflow the smallest parts; keep them representable.
  for (double& p : parts) p = std::max(p / denom, std::numeric_limits<double>::min());
  return Composition::from_parts(std::move(parts), std::move(labels));
}

}  // namespace compreg
