#pragma once

namespace esbacktest {

/// Standard normal density.
double normal_pdf(double x) noexcept;

/// Standard normal CDF, erfc-based (accurate in both tails).
double normal_cdf(double x) noexcept;

/// Standard normal quantile. Acklam's rational approximation followed by
/// one Halley refinement against the erfc-based CDF; absolute accuracy is
/// well below 1e-10 everywhere in (0,1).
/// Throws std::domain_error for p outside the open interval (0,1).
double normal_quantile(double p);

} // namespace esbacktest
