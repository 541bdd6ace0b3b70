#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace paretolab {

/// A point of R^d, d >= 2, with finite coordinates.
class Point {
public:
    Point() = default;
    explicit Point(std::vector<double> coords);
    Point(std::initializer_list<double> coords);
    explicit Point(std::span<const double> coords);

    std::size_t dim() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    double& operator[](std::size_t i) { return coords_[i]; }
    const std::vector<double>& coords() const noexcept { return coords_; }

    operator std::span<const double>() const noexcept { return coords_; }

    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<double> coords_;
};

/// x <= y in the coordinatewise partial order. Throws on dimension mismatch.
bool dominates(std::span<const double> x, std::span<const double> y);

/// (x_1 ... x_d)^{1/d}; zero when any coordinate is zero.
double geometric_mean(std::span<const double> x);

/// Omega_{R,M} = { x in [0,M]^d : (x_1...x_d)^{1/d} > R }.
class MaskedDomain {
public:
    static constexpr double kSurfaceTolerance = 1e-12;

    MaskedDomain(double R, double M = 1.0);

    double R() const noexcept { return R_; }
    double M() const noexcept { return M_; }

    /// Strict membership: geometric mean must exceed R.
    bool contains(std::span<const double> x) const;
    /// Closed domain: in the box and geometric mean >= R - tolerance.
    bool contains_closed(std::span<const double> x) const;
    bool on_surface(std::span<const double> x) const;
    bool in_box(std::span<const double> x) const;

private:
    double R_;
    double M_;
};

/// Orthogonal simplex S_{y,p} = { x <= y : 1 + (x - y) . p^{-1} >= 0 }.
class Simplex {
public:
    Simplex(Point apex, std::vector<double> sides);

    std::size_t dim() const noexcept { return apex_.dim(); }
    const Point& apex() const noexcept { return apex_; }
    const std::vector<double>& sides() const noexcept { return sides_; }

    /// p_1 ... p_d / d^d. This is the volume of the largest box inscribed in
    /// the simplex and the quantity that governs its longest-chain limit.
    double measure() const;
    bool contains(std::span<const double> x) const;

private:
    Point apex_;
    std::vector<double> sides_;
};

/// Closed axis-aligned box [lo, hi].
struct Rect {
    std::vector<double> lo;
    std::vector<double> hi;

    std::size_t dim() const noexcept { return lo.size(); }
    double volume() const;
    bool contains(std::span<const double> x) const;
    /// [a, b] subset of this box.
    bool contains_interval(std::span<const double> a, std::span<const double> b) const;
};

struct RectCollection {
    std::size_t d = 0;
    std::vector<Rect> rects;

    std::size_t size() const noexcept { return rects.size(); }
    bool covers(std::span<const double> x) const;
};

/// Euclidean distance from x to the surface { (x_1...x_d)^{1/d} = R } inside
/// [0,M]^d. The surface is parameterized by the logarithms of its first d-1
/// coordinates and the distance is minimized by multi-start Nelder-Mead.
/// Throws std::domain_error when x is outside the closed domain.
double dist_to_curved_boundary(const MaskedDomain& dom, std::span<const double> x);

/// Rectangle cover of S_{y,p} built from lattice translates on the diagonal
/// face of the unit simplex, mapped onto S by reflection and scaling.
///
/// For 0 < eps < 1 the lattice is x0 + eps Z^d restricted to the hyperplane
/// sum(x) = 1 with x0 the barycenter of the face; each lattice point x with
/// x_i > -eps contributes [0, max(x,0) + eps]. For eps >= 1 a single box
/// [0, (1+eps) 1] is returned. Throws std::invalid_argument for eps <= 0.
RectCollection cover_simplex(const Simplex& S, double eps);

/// Rectangles [a, b] with a < b lattice points of h Z^d in the shell
/// B = { x in [0,2]^d : R - eps <= geomean(x) <= R + 2 eps } and [a,b] in B.
/// Every order interval inside the tube Omega_R \ Omega_{R+eps} of [0,1]^d
/// lies in one of them. Only boxes that could hold such an interval are kept:
/// lower corner in [0,1]^d with geomean <= R + eps, upper corner with
/// geomean > R, and side sum at most d*eps/R + 2*d*h.
///
/// `spacing` overrides the lattice spacing; the default is
/// h = eps R^d / (2 (R + 2 eps)), which keeps the outward-rounded interval
/// inside B.
/// Throws std::invalid_argument unless R in (0, 1/2] and 0 < eps <= R/2.
RectCollection cover_boundary_tube(double R, double eps, std::size_t d,
                                   std::optional<double> spacing = std::nullopt);

/// Default lattice spacing used by cover_boundary_tube.
double boundary_tube_spacing(double R, double eps, std::size_t d);

/// Largest side length of any order interval [z, y] inside the tube
/// Omega_R \ Omega_{R+eps} of [0,1]^d.
double boundary_tube_side_bound(double R, double eps, std::size_t d);

}  // namespace paretolab
