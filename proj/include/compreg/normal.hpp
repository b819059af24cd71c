#pragma once

namespace compreg::normal {

/// Standard normal CDF.
double cdf(double x);

/// Standard normal quantile (inverse CDF) for p in (0, 1); Wichura's AS 241
/// (PPND16), relative accuracy about 1e-16. Returns -inf / +inf at 0 / 1 and
/// NaN outside [0, 1].
double quantile(double p);

/// Upper (1 - level)/2 point: the multiplier of a two-sided Wald interval.
/// Throws InvalidLevel unless 0 < level < 1.
double two_sided_multiplier(double level);

/// ln N(x; mean, sd^2). sd must be > 0.
double log_density(double x, double mean, double sd);

}  // namespace compreg::normal
