#include "tsradar/errors.hpp"
#include "tsradar/numeric.hpp"

#include <cmath>

namespace tsradar {

ScalarMinimum golden_section_minimize(const std::function<double(double)> &f, double lo, double hi, double tol) {
	if (!(lo <= hi)) {
		throw InvalidArgument("golden_section_minimize: empty bracket");
	}
	constexpr double kInvPhi = 0.6180339887498949;
	double a = lo;
	double b = hi;
	double c = b - kInvPhi * (b - a);
	double d = a + kInvPhi * (b - a);
	double fc = f(c);
	double fd = f(d);
	while (b - a > tol) {
		if (fc <= fd) {
			b = d;
			d = c;
			fd = fc;
			c = b - kInvPhi * (b - a);
			fc = f(c);
		} else {
			a = c;
			c = d;
			fc = fd;
			d = a + kInvPhi * (b - a);
			fd = f(d);
		}
	}
	const double x = 0.5 * (a + b);
	const double fx = f(x);
	// The midpoint is not guaranteed to beat the interior probes.
	if (fc < fx && fc <= fd) {
		return {c, fc};
	}
	if (fd < fx) {
		return {d, fd};
	}
	return {x, fx};
}

double linear_quantile(std::span<const double> sorted, double q) {
	if (sorted.empty()) {
		throw InvalidArgument("linear_quantile: empty sample");
	}
	if (!(q >= 0.0 && q <= 1.0)) {
		throw InvalidArgument("linear_quantile: q must lie in [0, 1]");
	}
	const double pos = q * static_cast<double>(sorted.size() - 1);
	const auto lo = static_cast<std::size_t>(std::floor(pos));
	const std::size_t hi = lo + 1 < sorted.size() ? lo + 1 : lo;
	const double frac = pos - static_cast<double>(lo);
	return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

} // namespace tsradar
