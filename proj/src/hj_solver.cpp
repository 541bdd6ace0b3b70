#include "paretolab/hj_solver.hpp"

#include <algorithm>
#include <cmath>

namespace paretolab {

double node_update(std::span<const double> a, double h, double rho_val, double tolerance) {
    if (!(rho_val >= 0.0)) throw std::invalid_argument("node_update: rho must be >= 0");
    if (!(h > 0.0)) throw std::invalid_argument("node_update: h must be positive");
    const double lo0 = *std::max_element(a.begin(), a.end());
    if (rho_val == 0.0) return lo0;

    const double dd = static_cast<double>(a.size());
    const double target = std::pow(h, dd) * rho_val;
    auto eval = [&](double t, double& deriv) {
        // prod (t - a_i) and its derivative.
        double prod = 1.0;
        deriv = 0.0;
        for (double ai : a) {
            const double f = t - ai;
            deriv = deriv * f + prod;
            prod *= f;
        }
        return prod - target;
    };

    double lo = lo0;
    double hi = lo0 + h * std::pow(rho_val, 1.0 / dd) * dd;
    double t = hi;
    for (int iter = 0; iter < 200; ++iter) {
        double deriv = 0.0;
        const double f = eval(t, deriv);
        if (f == 0.0) return t;
        if (f > 0.0) {
            hi = t;
        } else {
            lo = t;
        }
        double next = deriv > 0.0 ? t - f / deriv : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - t) <= tolerance || hi - lo <= tolerance) return next;
        t = next;
    }
    throw NumericFailure("node_update: root solve did not converge");
}

GridFunction solve_hj(const SolveSpec& spec, const Grid& grid) {
    if (spec.density == nullptr) throw std::invalid_argument("solve_hj: no density");
    if (!(spec.root_tolerance > 0.0)) {
        throw std::invalid_argument("solve_hj: root tolerance must be positive");
    }
    const DensityField& rho = *spec.density;
    const std::size_t d = grid.dim();
    if (rho.dim() != d) throw std::invalid_argument("solve_hj: density and grid dimensions differ");
    const std::size_t m = grid.nodes_per_axis();
    const double h = grid.spacing();

    GridFunction u(grid, 0.0);
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> x(d), a(d);
    for (std::size_t f = 0; f < grid.size(); ++f) {
        if (f > 0) {
            // Advance the multi-index (last axis fastest).
            for (std::size_t i = d; i-- > 0;) {
                if (++idx[i] < m) break;
                idx[i] = 0;
            }
        }
        bool on_face = false;
        for (std::size_t i = 0; i < d; ++i) {
            if (idx[i] == 0) on_face = true;
            x[i] = grid.coord(idx[i]);
        }
        if (on_face) continue;
        for (std::size_t i = 0; i < d; ++i) a[i] = u.values[f - grid.stride(i)];
        double r = rho(x);
        if (spec.mask && !spec.mask->contains(x)) r = 0.0;
        u.values[f] = node_update(a, h, r, spec.root_tolerance);
    }
    return u;
}

double exact_constant_solution(double rho0, double R, std::span<const double> x) {
    if (!(rho0 > 0.0)) throw std::invalid_argument("exact_constant_solution: rho0 must be positive");
    const double g = geometric_mean(x);
    if (g < R - MaskedDomain::kSurfaceTolerance) {
        throw std::domain_error("exact_constant_solution: x outside the closed domain");
    }
    const double dd = static_cast<double>(x.size());
    return std::max(0.0, dd * std::pow(rho0, 1.0 / dd) * (g - R));
}

BoundaryExpansion::BoundaryExpansion(Point x0, double a, std::vector<double> p)
    : x0_(std::move(x0)), a_(a), p_(std::move(p)) {
    if (p_.size() != x0_.dim()) throw std::invalid_argument("boundary expansion: p has wrong dimension");
    if (!(a_ > 0.0)) throw std::invalid_argument("boundary expansion: a must be positive");
    if (std::abs(geometric_mean(x0_) - 1.0) > 1e-9) {
        throw std::invalid_argument("boundary expansion: x0 must have geometric mean 1");
    }
    p_dot_x0_ = 0.0;
    for (std::size_t i = 0; i < p_.size(); ++i) p_dot_x0_ += p_[i] * x0_[i];
}

void BoundaryExpansion::check(std::span<const double> x) const {
    if (x.size() != dim()) throw std::invalid_argument("boundary expansion: dimension mismatch");
    for (double v : x) {
        if (!(v > 0.0)) throw std::domain_error("boundary expansion: coordinates must be positive");
    }
}

double BoundaryExpansion::w(std::span<const double> x) const {
    check(x);
    const double dd = static_cast<double>(dim());
    return std::pow(a_, 1.0 / dd) * dd * (geometric_mean(x) - 1.0);
}

double BoundaryExpansion::v(std::span<const double> x) const {
    check(x);
    const double dd = static_cast<double>(dim());
    const double k = 0.5 * std::pow(a_, -(dd - 1.0) / dd);
    const double G = geometric_mean(x);
    double s = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) s += p_[i] * x[i];
    return k * (s * (G - 1.0 / G) - 2.0 * p_dot_x0_ * (G - 1.0));
}

std::vector<double> BoundaryExpansion::gradient(std::span<const double> x) const {
    check(x);
    const std::size_t d = dim();
    const double dd = static_cast<double>(d);
    const double A = std::pow(a_, 1.0 / dd);
    const double k = 0.5 * std::pow(a_, -(dd - 1.0) / dd);
    const double G = geometric_mean(x);
    const double H = 1.0 / G;
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += p_[i] * x[i];
    std::vector<double> g(d);
    for (std::size_t i = 0; i < d; ++i) {
        const double Gi = G / (dd * x[i]);
        const double Hi = -H / (dd * x[i]);
        const double vi = k * (p_[i] * (G - H) + s * (Gi - Hi) - 2.0 * p_dot_x0_ * Gi);
        g[i] = A * dd * Gi + vi;
    }
    return g;
}

std::vector<double> BoundaryExpansion::hessian(std::span<const double> x) const {
    check(x);
    const std::size_t d = dim();
    const double dd = static_cast<double>(d);
    const double A = std::pow(a_, 1.0 / dd);
    const double k = 0.5 * std::pow(a_, -(dd - 1.0) / dd);
    const double G = geometric_mean(x);
    const double H = 1.0 / G;
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += p_[i] * x[i];
    std::vector<double> Gd(d), Hd(d);
    for (std::size_t i = 0; i < d; ++i) {
        Gd[i] = G / (dd * x[i]);
        Hd[i] = -H / (dd * x[i]);
    }
    std::vector<double> out(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const double diag = i == j ? 1.0 / (dd * x[i] * x[i]) : 0.0;
            const double cross = 1.0 / (dd * dd * x[i] * x[j]);
            const double Gij = G * (cross - diag);
            const double Hij = H * (cross + diag);
            const double vij = k * (p_[i] * (Gd[j] - Hd[j]) + p_[j] * (Gd[i] - Hd[i]) +
                                    s * (Gij - Hij) - 2.0 * p_dot_x0_ * Gij);
            out[i * d + j] = A * dd * Gij + vij;
        }
    }
    return out;
}

double BoundaryExpansion::residual(std::span<const double> x) const {
    const auto g = gradient(x);
    double prod = 1.0;
    for (double gi : g) prod *= gi;
    double lin = a_;
    for (std::size_t i = 0; i < dim(); ++i) lin += p_[i] * (x[i] - x0_[i]);
    return prod - lin;
}

double variational_value(const DensityField& density, const std::vector<Point>& polyline,
                         std::size_t quadrature_steps) {
    if (polyline.size() < 2) throw std::invalid_argument("variational_value: need two points");
    if (quadrature_steps < 2) throw std::invalid_argument("variational_value: need >= 2 steps");
    const std::size_t d = polyline.front().dim();
    const double dd = static_cast<double>(d);
    const std::size_t panels = quadrature_steps + (quadrature_steps % 2);
    double total = 0.0;
    std::vector<double> delta(d), y(d);
    for (std::size_t s = 0; s + 1 < polyline.size(); ++s) {
        const Point& p = polyline[s];
        const Point& q = polyline[s + 1];
        if (p.dim() != d || q.dim() != d) {
            throw std::invalid_argument("variational_value: dimension mismatch");
        }
        double prod = 1.0;
        for (std::size_t i = 0; i < d; ++i) {
            delta[i] = q[i] - p[i];
            if (delta[i] < 0.0) throw std::invalid_argument("variational_value: polyline not monotone");
            prod *= delta[i];
        }
        if (prod == 0.0) continue;
        const double speed = std::pow(prod, 1.0 / dd);
        double acc = 0.0;
        for (std::size_t k = 0; k <= panels; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(panels);
            for (std::size_t i = 0; i < d; ++i) y[i] = p[i] + t * delta[i];
            const double wgt = (k == 0 || k == panels) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
            acc += wgt * std::pow(density(y), 1.0 / dd);
        }
        total += speed * acc / (3.0 * static_cast<double>(panels));
    }
    return dd * total;
}

}  // namespace paretolab
