#include "paretolab/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "paretolab/fit.hpp"
#include "paretolab/hj_solver.hpp"
#include "paretolab/parallel.hpp"

namespace paretolab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

InfConvolution brute_force(const GridFunction& f, double alpha) {
    const Grid& g = f.grid;
    const std::size_t n = g.size();
    const std::size_t d = g.dim();
    InfConvolution out{GridFunction(g, kInf), std::vector<std::size_t>(n, 0)};
    std::vector<std::size_t> xi(d), yi(d);
    for (std::size_t x = 0; x < n; ++x) {
        g.multi_index(x, xi);
        double best = kInf;
        std::size_t arg = x;
        for (std::size_t y = 0; y < n; ++y) {
            const double fy = f.values[y];
            if (!std::isfinite(fy)) continue;
            g.multi_index(y, yi);
            double dist2 = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                const double diff = g.coord(xi[i]) - g.coord(yi[i]);
                dist2 += diff * diff;
            }
            const double v = fy + dist2 / (2.0 * alpha);
            if (v < best) {
                best = v;
                arg = y;
            }
        }
        out.values.values[x] = best;
        out.argmin[x] = arg;
    }
    return out;
}

// One-dimensional lower envelope of the parabolas c (q - p)^2 + v[p].
void envelope_1d(const std::vector<double>& v, double c, std::vector<double>& out,
                 std::vector<std::size_t>& which) {
    const std::size_t m = v.size();
    std::vector<std::size_t> apex;
    std::vector<double> z;
    apex.reserve(m);
    z.reserve(m + 1);
    auto key = [&](std::size_t p) {
        const double pd = static_cast<double>(p);
        return v[p] + c * pd * pd;
    };
    for (std::size_t q = 0; q < m; ++q) {
        if (!std::isfinite(v[q])) continue;
        if (apex.empty()) {
            apex.push_back(q);
            z.assign({-kInf, kInf});
            continue;
        }
        double s = 0.0;
        while (true) {
            const std::size_t p = apex.back();
            s = (key(q) - key(p)) / (2.0 * c * static_cast<double>(q - p));
            // z[0] is -inf, so the first parabola is never removed.
            if (s > z[apex.size() - 1]) break;
            apex.pop_back();
            z.pop_back();
        }
        z.back() = s;
        apex.push_back(q);
        z.push_back(kInf);
    }
    if (apex.empty()) {
        std::fill(out.begin(), out.end(), kInf);
        return;
    }
    std::size_t k = 0;
    for (std::size_t q = 0; q < m; ++q) {
        const double qd = static_cast<double>(q);
        while (z[k + 1] < qd) ++k;
        const double diff = qd - static_cast<double>(apex[k]);
        out[q] = v[apex[k]] + c * diff * diff;
        which[q] = apex[k];
    }
}

InfConvolution separable(const GridFunction& f, double alpha) {
    const Grid& g = f.grid;
    const std::size_t n = g.size();
    const std::size_t d = g.dim();
    const std::size_t m = g.nodes_per_axis();
    const double h = g.spacing();
    const double c = h * h / (2.0 * alpha);

    std::vector<double> cur(f.values);
    for (auto& v : cur) {
        if (!std::isfinite(v)) v = kInf;
    }
    std::vector<std::size_t> arg(n);
    std::iota(arg.begin(), arg.end(), 0);

    std::vector<double> line(m), res(m);
    std::vector<std::size_t> which(m), line_arg(m);
    std::vector<std::size_t> idx(d);
    for (std::size_t axis = 0; axis < d; ++axis) {
        const std::size_t stride = g.stride(axis);
        for (std::size_t start = 0; start < n; ++start) {
            if ((start / stride) % m != 0) continue;
            for (std::size_t q = 0; q < m; ++q) {
                line[q] = cur[start + q * stride];
                line_arg[q] = arg[start + q * stride];
            }
            envelope_1d(line, c, res, which);
            for (std::size_t q = 0; q < m; ++q) {
                cur[start + q * stride] = res[q];
                if (std::isfinite(res[q])) arg[start + q * stride] = line_arg[which[q]];
            }
        }
    }
    InfConvolution out{GridFunction(g), std::move(arg)};
    out.values.values = std::move(cur);
    return out;
}

SecondDifferenceReport second_differences(const GridFunction& f, const NodePredicate& domain,
                                          const std::vector<GridOffset>& offsets, double sign) {
    const Grid& g = f.grid;
    const std::size_t d = g.dim();
    const std::size_t m = g.nodes_per_axis();
    const double h = g.spacing();

    std::vector<char> inside(g.size());
    std::vector<double> x(d);
    for (std::size_t k = 0; k < g.size(); ++k) {
        g.node(k, x);
        inside[k] = domain(x) ? 1 : 0;
    }

    SecondDifferenceReport rep;
    double worst = -kInf;
    std::size_t worst_node = 0;
    std::size_t worst_offset = 0;
    std::vector<std::size_t> idx(d);
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!inside[k]) continue;
        g.multi_index(k, idx);
        for (std::size_t o = 0; o < offsets.size(); ++o) {
            const auto& off = offsets[o];
            std::ptrdiff_t shift = 0;
            bool ok = true;
            double norm2 = 0.0;
            for (std::size_t i = 0; i < d && ok; ++i) {
                const auto lo = static_cast<std::ptrdiff_t>(idx[i]) - off[i];
                const auto hi = static_cast<std::ptrdiff_t>(idx[i]) + off[i];
                if (lo < 0 || hi < 0 || lo >= static_cast<std::ptrdiff_t>(m) ||
                    hi >= static_cast<std::ptrdiff_t>(m)) {
                    ok = false;
                }
                shift += off[i] * static_cast<std::ptrdiff_t>(g.stride(i));
                norm2 += static_cast<double>(off[i]) * off[i] * h * h;
            }
            if (!ok) continue;
            const std::size_t up = k + static_cast<std::size_t>(shift);
            const std::size_t down = k - static_cast<std::size_t>(shift);
            if (!inside[up] || !inside[down]) continue;
            const double dd = f.values[up] - 2.0 * f.values[k] + f.values[down];
            const double ratio = sign * dd / norm2;
            ++rep.samples;
            if (ratio > worst) {
                worst = ratio;
                worst_node = k;
                worst_offset = o;
            }
        }
    }
    if (rep.samples == 0) throw std::invalid_argument("second differences: no admissible pair");
    rep.worst_value = std::max(0.0, worst);
    g.node(worst_node, x);
    rep.arg_x = Point(x);
    rep.arg_h.resize(d);
    for (std::size_t i = 0; i < d; ++i) rep.arg_h[i] = offsets[worst_offset][i] * h;
    return rep;
}

}  // namespace

InfConvolution inf_convolution(const GridFunction& f, double alpha, InfConvolutionMethod method) {
    if (!(alpha > 0.0)) throw std::invalid_argument("inf_convolution: alpha must be positive");
    return method == InfConvolutionMethod::brute_force ? brute_force(f, alpha) : separable(f, alpha);
}

std::vector<GridOffset> default_offsets(std::size_t d) {
    std::vector<GridOffset> out;
    for (int k : {1, 2, 4}) {
        for (std::size_t i = 0; i < d; ++i) {
            GridOffset e(d, 0);
            e[i] = k;
            out.push_back(e);
            for (std::size_t j = i + 1; j < d; ++j) {
                GridOffset plus = e;
                GridOffset minus = e;
                plus[j] = k;
                minus[j] = -k;
                out.push_back(plus);
                out.push_back(minus);
            }
        }
    }
    return out;
}

SecondDifferenceReport semiconvexity_constant(const GridFunction& f, const NodePredicate& domain,
                                              const std::vector<GridOffset>& offsets) {
    return second_differences(f, domain, offsets, -1.0);
}

SecondDifferenceReport semiconcavity_constant(const GridFunction& f, const NodePredicate& domain,
                                              const std::vector<GridOffset>& offsets) {
    return second_differences(f, domain, offsets, 1.0);
}

double lipschitz_constant(const GridFunction& f, const NodePredicate& domain) {
    const Grid& g = f.grid;
    const std::size_t d = g.dim();
    const std::size_t m = g.nodes_per_axis();
    std::vector<char> inside(g.size());
    std::vector<double> x(d);
    for (std::size_t k = 0; k < g.size(); ++k) {
        g.node(k, x);
        inside[k] = domain(x) ? 1 : 0;
    }
    double best = 0.0;
    bool any = false;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!inside[k]) continue;
        for (std::size_t a = 0; a < d; ++a) {
            if ((k / g.stride(a)) % m == m - 1) continue;
            const std::size_t nb = k + g.stride(a);
            if (!inside[nb]) continue;
            any = true;
            best = std::max(best, std::abs(f.values[nb] - f.values[k]));
        }
    }
    if (!any) throw std::invalid_argument("lipschitz_constant: no adjacent node pair in domain");
    return best / g.spacing();
}

BlowupFit semiconvexity_blowup_fit(const DensityField& density, const std::vector<double>& radii,
                                   const Grid& grid, std::size_t workers) {
    if (radii.size() < 2) throw std::invalid_argument("blowup fit: need at least two radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw std::invalid_argument("blowup fit: radii must be positive");
        if (i > 0 && !(radii[i] < radii[i - 1])) {
            throw std::invalid_argument("blowup fit: radii must be strictly decreasing");
        }
    }
    const double h = grid.spacing();
    const double dd = static_cast<double>(grid.dim());
    if (std::pow(radii.back(), dd) / h < 8.0) {
        throw std::invalid_argument("blowup fit: grid too coarse for smallest R");
    }

    BlowupFit fit;
    fit.radii = radii;
    fit.constants.assign(radii.size(), 0.0);
    fit.samples.assign(radii.size(), 0);
    const auto offsets = default_offsets(grid.dim());
    parallel_for(radii.size(), workers, [&](std::size_t i) {
        const double R = radii[i];
        SolveSpec spec{&density, MaskedDomain(R, grid.box_side()), 1e-12};
        const GridFunction u = solve_hj(spec, grid);
        const double margin = R + 2.0 * h;
        const auto rep = semiconvexity_constant(
            u, [margin](std::span<const double> x) { return geometric_mean(x) > margin; }, offsets);
        fit.constants[i] = rep.worst_value;
        fit.samples[i] = rep.samples;
    });
    const auto ll = fit_loglog(fit.radii, fit.constants);
    fit.slope = ll.slope;
    fit.intercept = ll.intercept;
    fit.r2 = ll.r2;
    return fit;
}

}  // namespace paretolab
