#include "paretolab/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace paretolab {

LogLogFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fit_loglog: length mismatch");
    if (xs.size() < 3) throw std::invalid_argument("fit_loglog: need at least 3 points");
    const std::size_t n = xs.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0) || !std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
            throw std::invalid_argument("fit_loglog: data must be positive and finite");
        }
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_loglog: x values are all equal");

    LogLogFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.residuals.resize(n);
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        fit.residuals[i] = ly[i] - (fit.intercept + fit.slope * lx[i]);
        sse += fit.residuals[i] * fit.residuals[i];
    }
    const double scale = std::max(1.0, syy);
    fit.r2 = syy <= 1e-28 * scale ? 1.0 : std::clamp(1.0 - sse / syy, 0.0, 1.0);
    fit.sigma = std::sqrt(sse / static_cast<double>(n - 2));
    return fit;
}

bool smallest_point_is_outlier(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() < 4 || xs.size() != ys.size()) return false;
    const auto k = static_cast<std::size_t>(std::min_element(xs.begin(), xs.end()) - xs.begin());
    std::vector<double> rx, ry;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i == k) continue;
        rx.push_back(xs[i]);
        ry.push_back(ys[i]);
    }
    const auto rest = fit_loglog(rx, ry);
    const double predicted = rest.intercept + rest.slope * std::log(xs[k]);
    const double r = std::log(ys[k]) - predicted;
    return std::abs(r) > 2.0 * rest.sigma;
}

}  // namespace paretolab
