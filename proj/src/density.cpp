#include "paretolab/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "paretolab/rng.hpp"

namespace paretolab {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

DensityField::DensityField(std::string name, std::size_t d, double M, Evaluator f,
                           double rho_min, double rho_max, double lipschitz,
                           double lipschitz_root)
    : name_(std::move(name)),
      d_(d),
      M_(M),
      f_(std::move(f)),
      rho_min_(rho_min),
      rho_max_(rho_max),
      lipschitz_(lipschitz),
      lipschitz_root_(lipschitz_root) {
    require(d_ >= 2, "density: dimension must be at least 2");
    require(M_ > 0.0 && std::isfinite(M_), "density: box side must be positive");
    require(rho_min_ > 0.0, "density: rho_min must be positive");
    require(rho_max_ >= rho_min_ && std::isfinite(rho_max_), "density: rho_max < rho_min");
    require(lipschitz_ >= 0.0 && lipschitz_root_ >= 0.0,
            "density: Lipschitz constants must be nonnegative");
}

DensityField DensityField::constant(std::size_t d, double c, double M) {
    require(c > 0.0 && std::isfinite(c), "density: constant must be positive");
    return DensityField("constant", d, M, [c](std::span<const double>) { return c; }, c, c, 0.0,
                        0.0);
}

DensityField DensityField::affine(std::size_t d, double c0, std::vector<double> coeffs,
                                  double M) {
    require(coeffs.size() == d, "density: affine coefficient count must equal d");
    double lo = c0;
    double hi = c0;
    double norm2 = 0.0;
    for (double c : coeffs) {
        (c < 0.0 ? lo : hi) += c * M;
        norm2 += c * c;
    }
    require(lo > 0.0, "density: affine field is not positive on the box");
    const double lip = std::sqrt(norm2);
    // |grad rho^{1/d}| = rho^{1/d - 1} |c| / d, largest where rho is smallest.
    const double dd = static_cast<double>(d);
    const double lip_root = std::pow(lo, 1.0 / dd - 1.0) * lip / dd;
    auto f = [c0, coeffs = std::move(coeffs)](std::span<const double> x) {
        double v = c0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * x[i];
        return v;
    };
    return DensityField("affine", d, M, std::move(f), lo, hi, lip, lip_root);
}

DensityField DensityField::smooth_bump(std::size_t d, double base, double amp,
                                       std::vector<double> center, double width, double M) {
    require(center.size() == d, "density: bump center dimension must equal d");
    require(base > 0.0 && amp >= 0.0 && width > 0.0, "density: invalid bump parameters");
    // max |grad| of amp*exp(-r^2/(2w^2)) is amp/(w sqrt(e)).
    const double lip = amp / (width * std::sqrt(std::exp(1.0)));
    const double dd = static_cast<double>(d);
    const double lip_root = std::pow(base, 1.0 / dd - 1.0) * lip / dd;
    const double w2 = 2.0 * width * width;
    auto f = [base, amp, w2, center = std::move(center)](std::span<const double> x) {
        double r2 = 0.0;
        for (std::size_t i = 0; i < center.size(); ++i) r2 += (x[i] - center[i]) * (x[i] - center[i]);
        return base + amp * std::exp(-r2 / w2);
    };
    return DensityField("bump", d, M, std::move(f), base, base + amp, lip, lip_root);
}

DensityField DensityField::tabulated(std::size_t d, std::size_t m, std::vector<double> values,
                                     double lipschitz, double lipschitz_root, double M) {
    require(m >= 2, "density: tabulated grid needs m >= 2");
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= m;
    require(values.size() == total, "density: tabulated value count must be m^d");
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    const double lo = *mn;
    const double hi = *mx;
    require(lo > 0.0, "density: tabulated values must be positive");
    const double h = M / static_cast<double>(m - 1);
    auto f = [d, m, h, values = std::move(values)](std::span<const double> x) {
        std::vector<std::size_t> base(d);
        std::vector<double> frac(d);
        for (std::size_t i = 0; i < d; ++i) {
            double t = std::clamp(x[i] / h, 0.0, static_cast<double>(m - 1));
            auto k = static_cast<std::size_t>(std::floor(t));
            if (k >= m - 1) k = m - 2;
            base[i] = k;
            frac[i] = t - static_cast<double>(k);
        }
        double v = 0.0;
        for (std::size_t corner = 0; corner < (std::size_t{1} << d); ++corner) {
            double w = 1.0;
            std::size_t idx = 0;
            for (std::size_t i = 0; i < d; ++i) {
                const bool up = (corner >> i) & 1U;
                w *= up ? frac[i] : 1.0 - frac[i];
                idx = idx * m + base[i] + (up ? 1 : 0);
            }
            if (w != 0.0) v += w * values[idx];
        }
        return v;
    };
    return DensityField("tabulated", d, M, std::move(f), lo, hi, lipschitz, lipschitz_root);
}

void DensityField::validate(std::uint64_t seed, std::size_t samples) const {
    Rng rng(substream_seed(seed, 0, "density-validate"));
    std::vector<double> x(d_);
    for (std::size_t s = 0; s < samples; ++s) {
        for (auto& xi : x) xi = rng.uniform(0.0, M_);
        const double v = f_(x);
        if (!(v >= rho_min_ * (1.0 - 1e-12) && v <= rho_max_ * (1.0 + 1e-12))) {
            throw std::domain_error("density '" + name_ + "' value " + std::to_string(v) +
                                    " outside declared bounds");
        }
    }
}

}  // namespace paretolab
