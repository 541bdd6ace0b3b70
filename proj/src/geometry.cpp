#include "paretolab/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace paretolab {

namespace {

void check_coords(const std::vector<double>& c) {
    if (c.size() < 2) {
        throw std::invalid_argument("point dimension must be at least 2");
    }
    for (double v : c) {
        if (!std::isfinite(v)) throw std::invalid_argument("point coordinate is not finite");
    }
}

void check_same_dim(std::size_t a, std::size_t b) {
    if (a != b) {
        throw std::invalid_argument("dimension mismatch: " + std::to_string(a) + " vs " +
                                    std::to_string(b));
    }
}

using Objective = std::function<double(const std::vector<double>&)>;

struct Minimum {
    std::vector<double> arg;
    double value;
};

// Plain Nelder-Mead with standard coefficients.
Minimum nelder_mead(const Objective& f, std::vector<double> start, double step,
                    double tol, int max_iter) {
    const std::size_t n = start.size();
    std::vector<std::vector<double>> simplex(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = f(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    for (int iter = 0; iter < max_iter; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[n - 1];

        double size = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                size = std::max(size, std::abs(simplex[i][k] - simplex[best][k]));
            }
        }
        if (size < tol) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / double(n);
        }
        auto along = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t k = 0; k < n; ++k) {
                p[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
            }
            return p;
        };

        auto xr = along(-1.0);
        const double fr = f(xr);
        if (fr < fv[best]) {
            auto xe = along(-2.0);
            const double fe = f(xe);
            if (fe < fr) {
                simplex[worst] = std::move(xe);
                fv[worst] = fe;
            } else {
                simplex[worst] = std::move(xr);
                fv[worst] = fr;
            }
            continue;
        }
        if (fr < fv[second]) {
            simplex[worst] = std::move(xr);
            fv[worst] = fr;
            continue;
        }
        auto xc = fr < fv[worst] ? along(-0.5) : along(0.5);
        const double fc = f(xc);
        if (fc < std::min(fr, fv[worst])) {
            simplex[worst] = std::move(xc);
            fv[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t k = 0; k < n; ++k) {
                simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
            }
            fv[i] = f(simplex[i]);
        }
    }
    const auto it = std::min_element(fv.begin(), fv.end());
    return {simplex[static_cast<std::size_t>(it - fv.begin())], *it};
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) { check_coords(coords_); }

Point::Point(std::initializer_list<double> coords) : coords_(coords) { check_coords(coords_); }

Point::Point(std::span<const double> coords) : coords_(coords.begin(), coords.end()) {
    check_coords(coords_);
}

bool dominates(std::span<const double> x, std::span<const double> y) {
    check_same_dim(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] <= y[i])) return false;
    }
    return true;
}

double geometric_mean(std::span<const double> x) {
    double prod = 1.0;
    for (double v : x) {
        if (v <= 0.0) return 0.0;
        prod *= v;
    }
    switch (x.size()) {
        case 1: return prod;
        case 2: return std::sqrt(prod);
        case 3: return std::cbrt(prod);
        default: return std::pow(prod, 1.0 / static_cast<double>(x.size()));
    }
}

MaskedDomain::MaskedDomain(double R, double M) : R_(R), M_(M) {
    if (!(R >= 0.0) || !std::isfinite(R)) throw std::invalid_argument("R must be >= 0");
    if (!(M >= 1.0) || !std::isfinite(M)) throw std::invalid_argument("M must be >= 1");
    if (!(R < M)) throw std::invalid_argument("R must be < M (domain would be empty)");
}

bool MaskedDomain::in_box(std::span<const double> x) const {
    return std::all_of(x.begin(), x.end(), [&](double v) { return v >= 0.0 && v <= M_; });
}

bool MaskedDomain::contains(std::span<const double> x) const {
    return in_box(x) && geometric_mean(x) > R_;
}

bool MaskedDomain::contains_closed(std::span<const double> x) const {
    return in_box(x) && geometric_mean(x) >= R_ - kSurfaceTolerance;
}

bool MaskedDomain::on_surface(std::span<const double> x) const {
    return in_box(x) && std::abs(geometric_mean(x) - R_) <= kSurfaceTolerance;
}

Simplex::Simplex(Point apex, std::vector<double> sides)
    : apex_(std::move(apex)), sides_(std::move(sides)) {
    check_same_dim(apex_.dim(), sides_.size());
    for (double p : sides_) {
        if (!(p > 0.0) || !std::isfinite(p)) {
            throw std::invalid_argument("simplex side lengths must be positive");
        }
    }
}

double Simplex::measure() const {
    const double d = static_cast<double>(dim());
    double m = 1.0;
    for (double p : sides_) m *= p / d;
    return m;
}

bool Simplex::contains(std::span<const double> x) const {
    check_same_dim(x.size(), dim());
    double s = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > apex_[i]) return false;
        s += (x[i] - apex_[i]) / sides_[i];
    }
    return s >= 0.0;
}

double Rect::volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
    return v;
}

bool Rect::contains(std::span<const double> x) const {
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (x[i] < lo[i] || x[i] > hi[i]) return false;
    }
    return true;
}

bool Rect::contains_interval(std::span<const double> a, std::span<const double> b) const {
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (a[i] < lo[i] || b[i] > hi[i]) return false;
    }
    return true;
}

bool RectCollection::covers(std::span<const double> x) const {
    return std::any_of(rects.begin(), rects.end(), [&](const Rect& r) { return r.contains(x); });
}

double dist_to_curved_boundary(const MaskedDomain& dom, std::span<const double> x) {
    const std::size_t d = x.size();
    if (d < 2) throw std::invalid_argument("dimension must be at least 2");
    if (!dom.contains_closed(x)) {
        throw std::domain_error("point is outside the closed domain");
    }
    const double R = dom.R();
    const double M = dom.M();
    if (dom.on_surface(x)) return 0.0;
    if (R == 0.0) {
        // The surface is the union of the coordinate faces.
        return *std::min_element(x.begin(), x.end());
    }

    // Surface points y with y_i in [R^d / M^{d-1}, M]; free parameters are
    // u_i = log y_i for i < d and y_d = R^d / prod(y_i).
    const double dd = static_cast<double>(d);
    const double log_hi = std::log(M);
    const double log_lo = dd * std::log(R) - (dd - 1.0) * std::log(M);
    const double log_Rd = dd * std::log(R);
    double xnorm = 0.0;
    for (double v : x) xnorm += v * v;
    const double penalty = 10.0 * dd * M * (1.0 + std::sqrt(xnorm));

    auto surface_point = [&](const std::vector<double>& u, std::vector<double>& y) {
        double s = 0.0;
        double viol = 0.0;
        for (std::size_t i = 0; i + 1 < d; ++i) {
            y[i] = std::exp(u[i]);
            s += u[i];
            viol += std::max(0.0, u[i] - log_hi) + std::max(0.0, log_lo - u[i]);
        }
        const double ud = log_Rd - s;
        y[d - 1] = std::exp(ud);
        viol += std::max(0.0, ud - log_hi) + std::max(0.0, log_lo - ud);
        return viol;
    };

    std::vector<double> y(d);
    Objective f = [&](const std::vector<double>& u) {
        const double viol = surface_point(u, y);
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
        return std::sqrt(s) + penalty * viol;
    };

    // Start 0: radial projection onto the surface. Starts 1..7: a low
    // discrepancy spread over the feasible log box.
    std::vector<std::vector<double>> starts;
    {
        const double g = geometric_mean(x);
        std::vector<double> u(d - 1);
        for (std::size_t i = 0; i + 1 < d; ++i) {
            u[i] = std::clamp(std::log(std::max(x[i], 1e-300) * R / g), log_lo, log_hi);
        }
        starts.push_back(std::move(u));
    }
    constexpr std::array<double, 4> kIrrational{0.6180339887498949, 0.4142135623730950,
                                                 0.7320508075688772, 0.2360679774997897};
    for (int j = 1; j < 8; ++j) {
        std::vector<double> u(d - 1);
        for (std::size_t i = 0; i + 1 < d; ++i) {
            const double frac = std::fmod(j * kIrrational[i % kIrrational.size()] + 0.5 * i, 1.0);
            u[i] = log_lo + (log_hi - log_lo) * (0.02 + 0.96 * frac);
        }
        starts.push_back(std::move(u));
    }

    Minimum best{{}, std::numeric_limits<double>::infinity()};
    const double step = 0.1 * std::max(log_hi - log_lo, 1e-3);
    for (const auto& s : starts) {
        auto m = nelder_mead(f, s, step, 1e-12, 4000);
        if (m.value < best.value) best = std::move(m);
    }
    // Polish from the best start with a fresh simplex.
    for (int round = 0; round < 3; ++round) {
        auto m = nelder_mead(f, best.arg, 1e-4 * step * std::pow(0.1, round), 1e-15, 4000);
        if (m.value <= best.value) best = std::move(m);
    }
    return best.value;
}

RectCollection cover_simplex(const Simplex& S, double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw std::invalid_argument("cover_simplex: eps must be positive");
    }
    const std::size_t d = S.dim();
    const auto& p = S.sides();
    const auto& y = S.apex().coords();

    // Unit-simplex box [0, u] becomes [y - p*u, y].
    auto mapped = [&](const std::vector<double>& upper) {
        Rect r;
        r.lo.resize(d);
        r.hi = y;
        for (std::size_t i = 0; i < d; ++i) r.lo[i] = y[i] - p[i] * upper[i];
        return r;
    };

    RectCollection out;
    out.d = d;
    if (eps >= 1.0) {
        out.rects.push_back(mapped(std::vector<double>(d, 1.0 + eps)));
        return out;
    }

    const double dd = static_cast<double>(d);
    const double x0 = 1.0 / dd;
    // Lattice x = x0 + eps k with sum(k) = 0 and x_i > -eps.
    const auto kmin = static_cast<long>(std::floor((-eps - x0) / eps));
    const auto kmax = static_cast<long>(std::ceil((1.0 + eps - x0) / eps));
    std::vector<long> k(d - 1, kmin);
    std::vector<double> upper(d);
    while (true) {
        long sum = 0;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < d; ++i) {
            const double xi = x0 + eps * static_cast<double>(k[i]);
            if (!(xi > -eps)) ok = false;
            upper[i] = std::max(xi, 0.0) + eps;
            sum += k[i];
        }
        const double xd = x0 + eps * static_cast<double>(-sum);
        if (!(xd > -eps)) ok = false;
        upper[d - 1] = std::max(xd, 0.0) + eps;
        if (ok) out.rects.push_back(mapped(upper));

        std::size_t i = 0;
        while (i + 1 < d && ++k[i] > kmax) {
            k[i] = kmin;
            ++i;
        }
        if (i + 1 == d) break;
    }
    return out;
}

double boundary_tube_spacing(double R, double eps, std::size_t d) {
    return eps * std::pow(R, static_cast<double>(d)) / (2.0 * (R + 2.0 * eps));
}

double boundary_tube_side_bound(double R, double eps, std::size_t d) {
    return static_cast<double>(d) * eps / R;
}

RectCollection cover_boundary_tube(double R, double eps, std::size_t d,
                                   std::optional<double> spacing) {
    if (!(R > 0.0 && R <= 0.5)) throw std::invalid_argument("cover_boundary_tube: R must be in (0, 1/2]");
    if (!(eps > 0.0 && eps <= 0.5 * R)) {
        throw std::invalid_argument("cover_boundary_tube: eps must be in (0, R/2]");
    }
    if (d < 2) throw std::invalid_argument("cover_boundary_tube: d must be >= 2");
    const double h = spacing.value_or(boundary_tube_spacing(R, eps, d));
    if (!(h > 0.0)) throw std::invalid_argument("cover_boundary_tube: spacing must be positive");

    const double shell_lo = R - eps;
    const double shell_hi = R + 2.0 * eps;
    const double max_side_sum =
        boundary_tube_side_bound(R, eps, d) + 2.0 * static_cast<double>(d) * h;
    const auto per_axis = static_cast<long>(std::floor(2.0 / h + 1e-9));
    const auto lower_axis = static_cast<long>(std::floor(1.0 / h + 1e-9));
    const auto max_cells = static_cast<long>(std::ceil(max_side_sum / h + 1e-9));

    auto node = [&](const std::vector<long>& idx, std::vector<double>& out) {
        for (std::size_t i = 0; i < d; ++i) out[i] = static_cast<double>(idx[i]) * h;
    };

    RectCollection result;
    result.d = d;
    std::vector<long> a(d, 0);
    std::vector<double> xa(d), xb(d);
    while (true) {
        node(a, xa);
        const double ga = geometric_mean(xa);
        if (ga >= shell_lo && ga <= R + eps) {
            // Upper corners b = a + offset, offset >= 1 cell per axis.
            std::vector<long> off(d, 1);
            while (true) {
                long total = 0;
                bool inside = true;
                std::vector<long> b(d);
                for (std::size_t i = 0; i < d; ++i) {
                    b[i] = a[i] + off[i];
                    total += off[i];
                    if (b[i] > per_axis) inside = false;
                }
                if (inside && total <= max_cells) {
                    node(b, xb);
                    const double gb = geometric_mean(xb);
                    if (gb > R && gb <= shell_hi) result.rects.push_back(Rect{xa, xb});
                }
                std::size_t i = 0;
                while (i < d && ++off[i] > max_cells) {
                    off[i] = 1;
                    ++i;
                }
                if (i == d) break;
            }
        }
        std::size_t i = 0;
        while (i < d && ++a[i] > lower_axis) {
            a[i] = 0;
            ++i;
        }
        if (i == d) break;
    }
    return result;
}

}  // namespace paretolab
