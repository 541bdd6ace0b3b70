#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "paretolab/density.hpp"
#include "paretolab/geometry.hpp"
#include "paretolab/grid.hpp"

namespace paretolab {

/// Raised when a scalar root solve fails to converge.
class NumericFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The unique t >= max(a) with prod_i (t - a_i) = h^d * rho_val.
/// Returns max(a) when rho_val == 0.
double node_update(std::span<const double> a, double h, double rho_val,
                   double tolerance = 1e-12);

struct SolveSpec {
    const DensityField* density = nullptr;
    std::optional<MaskedDomain> mask;
    double root_tolerance = 1e-12;
};

/// Upwind solution of u_{x_1} ... u_{x_d} = rho on the grid with u = 0 on
/// the coordinate faces. With a mask the right-hand side is rho * 1_Omega,
/// so u vanishes on the removed corner.
GridFunction solve_hj(const SolveSpec& spec, const Grid& grid);

/// d rho0^{1/d} (geomean(x) - R). Throws std::domain_error when geomean(x)
/// is below R.
double exact_constant_solution(double rho0, double R, std::span<const double> x);

/// Boundary-layer approximation ubar = w + v near a point x0 of the surface
/// { geomean = 1 }, for a right-hand side a + p.(x - x0). With G the
/// geometric mean of x,
///   w = a^{1/d} d (G - 1),
///   v = a^{-(d-1)/d} / 2 * [ (p.x)(G - 1/G) - 2 (p.x0)(G - 1) ].
class BoundaryExpansion {
public:
    BoundaryExpansion(Point x0, double a, std::vector<double> p);

    std::size_t dim() const noexcept { return x0_.dim(); }

    double w(std::span<const double> x) const;
    double v(std::span<const double> x) const;
    double value(std::span<const double> x) const { return w(x) + v(x); }

    std::vector<double> gradient(std::span<const double> x) const;
    /// Row-major d x d.
    std::vector<double> hessian(std::span<const double> x) const;

    /// prod_i ubar_{x_i} - a - p.(x - x0).
    double residual(std::span<const double> x) const;

private:
    void check(std::span<const double> x) const;

    Point x0_;
    double a_;
    std::vector<double> p_;
    double p_dot_x0_;
};

/// d * integral of rho(gamma)^{1/d} (prod gamma_i')^{1/d} along the
/// polyline, Simpson's rule with `quadrature_steps` panels per segment.
/// Throws std::invalid_argument when the polyline is not monotone.
double variational_value(const DensityField& density, const std::vector<Point>& polyline,
                         std::size_t quadrature_steps = 64);

}  // namespace paretolab
