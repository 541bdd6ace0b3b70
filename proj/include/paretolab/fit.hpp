#pragma once

#include <vector>

namespace paretolab {

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    /// Residuals log(y) - fitted value, in input order.
    std::vector<double> residuals;
    /// Standard deviation of the residuals (n - 2 degrees of freedom).
    double sigma = 0.0;
};

/// Least squares of log(y) against log(x). Requires at least three points
/// and positive data; throws std::invalid_argument otherwise. With constant
/// y the slope is 0 and r2 is reported as 1.
LogLogFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys);

/// Fits the line without the point of smallest x and reports whether that
/// point lies more than two residual standard deviations off it, marking it
/// as pre-asymptotic. False for fewer than four points.
bool smallest_point_is_outlier(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace paretolab
