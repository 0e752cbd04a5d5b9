#pragma once

namespace qcovert {

/// Standard normal CDF, via std::erfc.
double normal_cdf(double x);

/// Phi^{-1}(p) for 0 < p < 1. Rational initial guess refined by a Halley
/// step against normal_cdf; absolute error well below 1e-12 on [1e-300, 1-1e-16].
/// Throws DomainError outside (0, 1).
double inverse_normal_cdf(double p);

}  // namespace qcovert
