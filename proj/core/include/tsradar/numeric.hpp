#pragma once

#include <functional>
#include <span>

namespace tsradar {

/// Inverse of the standard normal CDF for p in (0, 1).
/// Rational approximation (relative error ~1e-9) followed by one Halley step.
double normal_quantile(double p);

/// Two-sided z multiplier for a central interval at `level`, i.e. normal_quantile((1 + level) / 2).
double central_z(double level);

struct ScalarMinimum {
	double x;
	double fx;
};

/// Golden-section search for a minimum of `f` on [lo, hi]; stops when the bracket is narrower than `tol`.
ScalarMinimum golden_section_minimize(const std::function<double(double)> &f, double lo, double hi,
                                      double tol = 1e-10);

/// Empirical q-quantile with linear interpolation between order statistics
/// (position q * (n - 1) in the sorted sample). `sorted` must be ascending and nonempty.
double linear_quantile(std::span<const double> sorted, double q);

} // namespace tsradar
