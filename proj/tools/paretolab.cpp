// Command-line entry point. Exit codes: 0 success, 2 configuration error,
// 3 numeric failure, 1 any other runtime error (I/O and the like).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "paretolab/chains.hpp"
#include "paretolab/config.hpp"
#include "paretolab/csv_io.hpp"
#include "paretolab/experiments.hpp"
#include "paretolab/geometry.hpp"
#include "paretolab/hj_solver.hpp"
#include "paretolab/regularity.hpp"
#include "paretolab/rng.hpp"
#include "paretolab/sampling.hpp"
#include "paretolab/svg_plot.hpp"

namespace fs = std::filesystem;
using namespace paretolab;
using nlohmann::json;

namespace {

ExperimentOptions experiment_options(const RunConfig& cfg, const std::string& name) {
    ExperimentOptions o;
    o.workers = cfg.workers;
    o.out_dir = fs::path(cfg.output_dir);
    o.name = name;
    o.config = serialize(cfg);
    return o;
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

PointCloud obtain_cloud(const RunConfig& cfg) {
    if (cfg.input) return read_cloud_csv(*cfg.input);
    const auto rho = make_density(cfg);
    SampleConfig sc;
    sc.n = cfg.ns.back();
    sc.seed = cfg.seed;
    sc.mode = parse_sample_mode(cfg.mode);
    sc.region = Region{*cfg.d, 1.0, cfg.R && *cfg.R > 0.0 ? cfg.R : std::nullopt};
    return sc.mode == SampleMode::poisson ? sample_poisson(rho, sc) : sample_iid(rho, sc);
}

std::vector<double> as_doubles(const std::vector<std::uint64_t>& v) {
    return {v.begin(), v.end()};
}

int run_sort(const RunConfig& cfg, const fs::path& out) {
    const auto cloud = obtain_cloud(cfg);
    const auto depths = pareto_depths(cloud);
    const auto fronts = nondominated_sort(cloud);
    write_cloud_csv(cloud, out / "cloud.csv");
    write_labels_csv(cloud, depths, fronts, out / "fronts.csv");
    std::cout << "points " << cloud.size() << ", fronts " << fronts.fronts.size() << '\n';
    return 0;
}

int run_depth(const RunConfig& cfg, const fs::path& out) {
    const auto cloud = obtain_cloud(cfg);
    const auto depths = pareto_depths(cloud);
    const auto fronts = nondominated_sort(cloud);
    write_labels_csv(cloud, depths, fronts, out / "depths.csv");
    if (cfg.grid) {
        const Grid grid(cloud.dim(), *cfg.grid);
        const auto U = depth_on_grid(cloud, grid);
        write_grid_csv(U, out / "depth_grid.csv");
        write_grid_binary(U, out / "depth_grid.bin");
    }
    std::cout << "points " << cloud.size() << '\n';
    return 0;
}

int run_chain(const RunConfig& cfg, const fs::path& out) {
    const auto cloud = obtain_cloud(cfg);
    const auto len = longest_chain(cloud);
    json j{{"points", cloud.size()}, {"longest_chain", len}};
    if (cfg.d && !cfg.input) {
        const double n = static_cast<double>(cfg.ns.back());
        j["scaled"] = std::pow(n, -1.0 / static_cast<double>(*cfg.d)) * static_cast<double>(len);
    }
    write_json(out / "chain.json", j);
    std::cout << "longest chain " << len << '\n';
    return 0;
}

int run_cell(const RunConfig& cfg) {
    const std::size_t d = *cfg.d;
    const auto sides = cfg.sides.empty() ? std::vector<double>(d, 1.0) : cfg.sides;
    const double rho0 = cfg.density_params.empty() ? 1.0 : cfg.density_params[0];
    if (cfg.density != "constant") throw ConfigError("invalid value for key density: cell needs constant");
    const auto r = cell_problem_experiment(d, rho0, sides, cfg.ns, *cfg.trials, cfg.seed,
                                           experiment_options(cfg, "cell"), cfg.c_d);
    std::vector<double> gaps;
    for (double m : r.spread.means) gaps.push_back(std::abs(m - r.limit));
    emit_plot({{"std", as_doubles(r.spread.ns), r.spread.stds}, {"|mean - limit|", as_doubles(r.bias.ns), gaps}},
              PlotStyle::loglog, fs::path(cfg.output_dir) / "cell.svg", "cell problem");
    std::cout << "limit " << r.limit << ", std slope " << r.spread.slope << '\n';
    return 0;
}

int run_solve(const RunConfig& cfg, const fs::path& out) {
    const auto rho = make_density(cfg);
    const Grid grid(*cfg.d, *cfg.grid);
    SolveSpec spec{&rho, std::nullopt, 1e-12};
    if (cfg.R && *cfg.R > 0.0) spec.mask = MaskedDomain(*cfg.R);
    const auto u = solve_hj(spec, grid);
    write_grid_csv(u, out / "solution.csv");
    write_grid_binary(u, out / "solution.bin");
    std::cout << "u(1,...,1) = " << u.values.back() << '\n';
    return 0;
}

void plot_rates(const RateExperimentResult& r, const fs::path& path, const std::string& title) {
    emit_plot({{"sup (u_n - u)+", as_doubles(r.upper.ns), r.upper.means},
               {"sup (u - u_n)+", as_doubles(r.lower.ns), r.lower.means}},
              PlotStyle::loglog, path, title);
}

int run_rates(const RunConfig& cfg) {
    const auto rho = make_density(cfg);
    const Grid grid(*cfg.d, *cfg.grid);
    const auto r = rate_experiment(*cfg.d, *cfg.R, rho, cfg.ns, *cfg.trials, grid, cfg.seed,
                                   experiment_options(cfg, "rates"), cfg.c_d);
    plot_rates(r, fs::path(cfg.output_dir) / "rates.svg", "one-sided rates on the rounded domain");
    std::cout << "slopes " << r.upper.slope << " / " << r.lower.slope << '\n';
    return 0;
}

int run_rates_full(const RunConfig& cfg) {
    const auto rho = make_density(cfg);
    const Grid grid(*cfg.d, *cfg.grid);
    const auto r = full_domain_rate_experiment(*cfg.d, rho, cfg.ns, *cfg.trials, grid, cfg.seed,
                                               experiment_options(cfg, "rates-full"), cfg.c_d);
    plot_rates(r, fs::path(cfg.output_dir) / "rates-full.svg", "one-sided rates on the cube");
    std::cout << "slopes " << r.upper.slope << " / " << r.lower.slope << '\n';
    return 0;
}

int run_cd(const RunConfig& cfg) {
    const auto est = estimate_cd(*cfg.d, cfg.ns.back(), *cfg.trials, cfg.seed,
                                 experiment_options(cfg, "cd"));
    std::cout << "c_" << *cfg.d << " ~ " << est.estimate << " +- " << est.ci_halfwidth << '\n';
    return 0;
}

int run_semiconvexity(const RunConfig& cfg) {
    const auto rho = make_density(cfg);
    const Grid grid(*cfg.d, *cfg.grid);
    const auto t0 = std::chrono::steady_clock::now();
    const auto fit = semiconvexity_blowup_fit(rho, cfg.radii, grid, cfg.workers);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_blowup_outputs(fit, experiment_options(cfg, "semiconvexity"), wall);
    emit_plot({{"semiconvexity constant", fit.radii, fit.constants}}, PlotStyle::loglog,
              fs::path(cfg.output_dir) / "semiconvexity.svg", "semiconvexity blow-up");
    std::cout << "slope " << fit.slope << ", r2 " << fit.r2 << '\n';
    if (cfg.radii.size() >= 3) {
        const auto lip = lipschitz_scaling(rho, cfg.radii, grid, cfg.workers);
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < lip.radii.size(); ++i) {
            rows.push_back({format_double(lip.radii[i]), format_double(lip.constants[i])});
        }
        write_table(fs::path(cfg.output_dir) / "lipschitz.csv", {"R", "lipschitz"}, rows);
        std::cout << "lipschitz slope " << lip.slope << '\n';
    }
    return 0;
}

int run_boundary(const RunConfig& cfg) {
    const auto rho = make_density(cfg);
    const Grid grid(*cfg.d, *cfg.grid);
    const auto r = boundary_sup_experiment(*cfg.d, *cfg.R, *cfg.eps, rho, cfg.ns.back(), *cfg.trials,
                                           grid, cfg.seed, experiment_options(cfg, "boundary"), cfg.c_d);
    std::cout << "tube sup " << r.mean << " (pde " << r.pde_sup << " <= " << r.pde_bound << ")\n";
    return 0;
}

int run_cover_check(const RunConfig& cfg, const fs::path& out) {
    const std::size_t d = *cfg.d;
    const double eps = *cfg.eps;
    const std::vector<double> ones(d, 1.0);
    const Simplex S(Point(ones), ones);
    const auto cover = cover_simplex(S, eps);
    Rng rng(substream_seed(cfg.seed, 0, "cover-check"));
    std::size_t hits = 0;
    std::size_t drawn = 0;
    std::vector<double> x(d);
    while (drawn < 10000) {
        for (auto& v : x) v = rng.uniform();
        if (!S.contains(x)) continue;
        ++drawn;
        if (cover.covers(x)) ++hits;
    }
    json j{{"simplex_rectangles", cover.size()}, {"samples", drawn}, {"hits", hits}};
    if (cfg.R) {
        const double R = *cfg.R;
        const auto tube = cover_boundary_tube(R, eps, d);
        std::size_t contained = 0;
        std::size_t intervals = 0;
        std::vector<double> z(d), y(d);
        while (intervals < 1000) {
            for (auto& v : z) v = rng.uniform();
            const double gz = geometric_mean(z);
            if (!(gz > R && gz <= R + eps)) continue;
            for (std::size_t i = 0; i < d; ++i) y[i] = z[i] + rng.uniform() * (1.0 - z[i]);
            if (geometric_mean(y) > R + eps) continue;
            ++intervals;
            for (const auto& r : tube.rects) {
                if (r.contains_interval(z, y)) {
                    ++contained;
                    break;
                }
            }
        }
        j["tube_rectangles"] = tube.size();
        j["tube_intervals"] = intervals;
        j["tube_contained"] = contained;
    }
    write_json(out / "cover_check.json", j);
    std::cout << j.dump() << '\n';
    return 0;
}

int dispatch(const RunConfig& cfg) {
    const fs::path out(cfg.output_dir);
    fs::create_directories(out);
    write_json(out / "config.echo.json", serialize(cfg));
    switch (cfg.command) {
        case Command::sort: return run_sort(cfg, out);
        case Command::depth: return run_depth(cfg, out);
        case Command::chain: return run_chain(cfg, out);
        case Command::cell: return run_cell(cfg);
        case Command::solve: return run_solve(cfg, out);
        case Command::rates: return run_rates(cfg);
        case Command::rates_full: return run_rates_full(cfg);
        case Command::cd: return run_cd(cfg);
        case Command::semiconvexity: return run_semiconvexity(cfg);
        case Command::boundary: return run_boundary(cfg);
        case Command::cover_check: return run_cover_check(cfg, out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return dispatch(parse_config(args));
    } catch (const HelpRequested& h) {
        std::cout << h.text;
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericFailure& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
