#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace compreg {

/// Absolute tolerance on the sum of parts of a valid composition.
inline constexpr double kSimplexSumTolerance = 1e-12;

/// Largest |log-ratio| accepted by the inverse transform; exp(700) is still finite.
inline constexpr double kLogRatioLimit = 700.0;

/**
 * A point on the G-part simplex: G >= 2 strictly positive parts summing to one.
 *
 * Instances can only be created through `Composition::from_parts` (which
 * validates) or `closure` (which normalizes), so a live object always
 * satisfies the invariants.
 */
class Composition {
 public:
  /// Validates `parts` as-is. Throws NonPositivePart, DimensionTooSmall,
  /// NonFinite or InvalidComposition (sum off by more than kSimplexSumTolerance).
  static Composition from_parts(std::vector<double> parts, std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return parts_.size(); }
  double operator[](std::size_t i) const { return parts_[i]; }
  std::span<const double> parts() const noexcept { return parts_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  friend bool operator==(const Composition&, const Composition&) = default;

 private:
  Composition(std::vector<double> parts, std::vector<std::string> labels)
      : parts_(std::move(parts)), labels_(std::move(labels)) {}

  std::vector<double> parts_;
  std::vector<std::string> labels_;
};

/// ALR image of a composition. The reference (denominator) part is always the
/// last one, so `ref_index` is G = values.size() + 1 (1-based).
struct LogRatioVector {
  std::vector<double> values;

  std::size_t ref_index() const noexcept { return values.size() + 1; }
  std::size_t size() const noexcept { return values.size(); }
};

/// Divides every entry by the total. Throws DimensionTooSmall for fewer than
/// two entries and NonPositivePart for any entry <= 0.
Composition closure(std::span<const double> raw, std::vector<std::string> labels = {});

/// y_j = ln(x_j / x_G) for j = 1..G-1.
LogRatioVector alr(const Composition& c);

/// Exact inverse of `alr`. Throws OverflowGuard if any |value| > kLogRatioLimit
/// and NonFinite for NaN/inf input.
Composition alr_inverse(const LogRatioVector& y, std::vector<std::string> labels = {});

}  // namespace compreg
