#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace paretolab {

/// Intensity rho on the box [0,M]^d together with the bounds the theory
/// needs: rho_min <= rho <= rho_max, a Lipschitz constant of rho, and one of
/// rho^{1/d}.
class DensityField {
public:
    using Evaluator = std::function<double(std::span<const double>)>;

    DensityField(std::string name, std::size_t d, double M, Evaluator f, double rho_min,
                 double rho_max, double lipschitz, double lipschitz_root);

    /// rho == c on [0,M]^d.
    static DensityField constant(std::size_t d, double c, double M = 1.0);

    /// rho(x) = c0 + coeffs . x, required positive on [0,M]^d.
    static DensityField affine(std::size_t d, double c0, std::vector<double> coeffs,
                               double M = 1.0);

    /// rho(x) = base + amp * exp(-|x - center|^2 / (2 width^2)), with base > 0, amp >= 0.
    static DensityField smooth_bump(std::size_t d, double base, double amp,
                                    std::vector<double> center, double width, double M = 1.0);

    /// Multilinear interpolation of nodal values on the uniform grid with m
    /// nodes per axis over [0,M]^d (row-major, last axis fastest). The
    /// Lipschitz constants are declared by the caller.
    static DensityField tabulated(std::size_t d, std::size_t m, std::vector<double> values,
                                  double lipschitz, double lipschitz_root, double M = 1.0);

    double operator()(std::span<const double> x) const { return f_(x); }

    const std::string& name() const noexcept { return name_; }
    std::size_t dim() const noexcept { return d_; }
    double box_side() const noexcept { return M_; }
    double rho_min() const noexcept { return rho_min_; }
    double rho_max() const noexcept { return rho_max_; }
    double lipschitz() const noexcept { return lipschitz_; }
    double lipschitz_root() const noexcept { return lipschitz_root_; }

    /// Evaluates rho at `samples` uniform points of the box and throws
    /// std::domain_error if any value falls outside [rho_min, rho_max].
    void validate(std::uint64_t seed = 0, std::size_t samples = 10000) const;

private:
    std::string name_;
    std::size_t d_;
    double M_;
    Evaluator f_;
    double rho_min_;
    double rho_max_;
    double lipschitz_;
    double lipschitz_root_;
};

}  // namespace paretolab
