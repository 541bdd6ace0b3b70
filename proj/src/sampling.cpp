#include "paretolab/sampling.hpp"

#include <boost/random/poisson_distribution.hpp>
#include <cmath>
#include <stdexcept>

#include "paretolab/geometry.hpp"
#include "paretolab/rng.hpp"

namespace paretolab {

std::string to_string(SampleMode mode) {
    return mode == SampleMode::poisson ? "poisson" : "iid";
}

SampleMode parse_sample_mode(const std::string& s) {
    if (s == "poisson") return SampleMode::poisson;
    if (s == "iid") return SampleMode::iid;
    throw std::invalid_argument("unknown sample mode: " + s);
}

bool Region::contains(std::span<const double> x) const {
    for (double v : x) {
        if (v < 0.0 || v > M) return false;
    }
    return !R || geometric_mean(x) > *R;
}

double Region::box_volume() const { return std::pow(M, static_cast<double>(d)); }

PointCloud::PointCloud(std::size_t d, std::vector<double> coords, CloudMeta meta)
    : d_(d), coords_(std::move(coords)), meta_(std::move(meta)) {
    if (d_ == 0 || coords_.size() % d_ != 0) {
        throw std::invalid_argument("point cloud: coordinate count not a multiple of d");
    }
}

PointCloud PointCloud::from_points(const std::vector<std::vector<double>>& pts) {
    if (pts.empty()) return PointCloud(2);
    PointCloud c(pts.front().size());
    for (const auto& p : pts) c.push_back(p);
    return c;
}

void PointCloud::push_back(std::span<const double> x) {
    if (x.size() != d_) throw std::invalid_argument("point cloud: dimension mismatch");
    coords_.insert(coords_.end(), x.begin(), x.end());
}

namespace {

void check_config(const DensityField& rho, const SampleConfig& cfg) {
    if (cfg.n < 1) throw std::invalid_argument("sample config: n must be >= 1");
    if (cfg.region.d != rho.dim()) {
        throw std::invalid_argument("sample config: region and density dimensions differ");
    }
    if (!(cfg.region.M > 0.0) || !std::isfinite(cfg.region.M)) {
        throw std::invalid_argument("sample config: region is not finite");
    }
}

CloudMeta meta_for(const SampleConfig& cfg, SampleMode mode) {
    return CloudMeta{cfg.n, cfg.seed, mode, cfg.region};
}

}  // namespace

std::uint64_t poisson_count(double mean, std::uint64_t seed) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw std::invalid_argument("poisson_count: mean must be finite and >= 0");
    }
    if (mean == 0.0) return 0;
    Rng rng(seed);
    boost::random::poisson_distribution<std::uint64_t, double> dist(mean);
    return dist(rng);
}

PointCloud sample_poisson(const DensityField& rho, const SampleConfig& cfg) {
    check_config(rho, cfg);
    const std::size_t d = cfg.region.d;
    const double M = cfg.region.M;
    const double rho_max = rho.rho_max();
    const double mean = static_cast<double>(cfg.n) * rho_max * cfg.region.box_volume();
    const std::uint64_t count = poisson_count(mean, substream_seed(cfg.seed, 0, "poisson-count"));

    Rng rng(substream_seed(cfg.seed, 0, "poisson-points"));
    PointCloud cloud(d, meta_for(cfg, SampleMode::poisson));
    cloud.reserve(static_cast<std::size_t>(count));
    std::vector<double> x(d);
    for (std::uint64_t k = 0; k < count; ++k) {
        for (auto& xi : x) xi = rng.uniform(0.0, M);
        const double mark = rng.uniform();
        if (!cfg.region.contains(x)) continue;
        if (mark * rho_max <= rho(x)) cloud.push_back(x);
    }
    return cloud;
}

PointCloud sample_iid(const DensityField& rho, const SampleConfig& cfg) {
    check_config(rho, cfg);
    const std::size_t d = cfg.region.d;
    const double M = cfg.region.M;
    const double rho_max = rho.rho_max();
    Rng rng(substream_seed(cfg.seed, 0, "iid-points"));
    PointCloud cloud(d, meta_for(cfg, SampleMode::iid));
    cloud.reserve(static_cast<std::size_t>(cfg.n));
    std::vector<double> x(d);
    std::uint64_t accepted = 0;
    std::uint64_t attempts = 0;
    const std::uint64_t max_attempts = 1000 * cfg.n + 1000000;
    while (accepted < cfg.n) {
        if (++attempts > max_attempts) {
            throw std::runtime_error("sample_iid: acceptance rate too low for the region");
        }
        for (auto& xi : x) xi = rng.uniform(0.0, M);
        const double mark = rng.uniform();
        if (!cfg.region.contains(x)) continue;
        if (mark * rho_max < rho(x)) {
            cloud.push_back(x);
            ++accepted;
        }
    }
    return cloud;
}

std::tuple<PointCloud, PointCloud, PointCloud> couple_thinning(const DensityField& rho,
                                                               const DensityField& g1,
                                                               const DensityField& g2,
                                                               const SampleConfig& cfg) {
    check_config(rho, cfg);
    check_config(g1, cfg);
    check_config(g2, cfg);
    const std::size_t d = cfg.region.d;
    const double M = cfg.region.M;

    {
        Rng check(substream_seed(cfg.seed, 0, "coupling-check"));
        std::vector<double> x(d);
        for (int k = 0; k < 1000; ++k) {
            for (auto& xi : x) xi = check.uniform(0.0, M);
            const double r = rho(x);
            if (!(g1(x) <= r && r <= g2(x))) {
                throw std::invalid_argument("couple_thinning: g1 <= rho <= g2 violated");
            }
        }
    }

    const double top = g2.rho_max();
    const double mean = static_cast<double>(cfg.n) * top * cfg.region.box_volume();
    const std::uint64_t count = poisson_count(mean, substream_seed(cfg.seed, 0, "coupling-count"));
    Rng rng(substream_seed(cfg.seed, 0, "coupling-points"));
    PointCloud c1(d, meta_for(cfg, SampleMode::poisson));
    PointCloud cr(d, meta_for(cfg, SampleMode::poisson));
    PointCloud c2(d, meta_for(cfg, SampleMode::poisson));
    std::vector<double> x(d);
    for (std::uint64_t k = 0; k < count; ++k) {
        for (auto& xi : x) xi = rng.uniform(0.0, M);
        const double mark = rng.uniform() * top;
        if (!cfg.region.contains(x)) continue;
        if (mark <= g2(x)) c2.push_back(x);
        if (mark <= rho(x)) cr.push_back(x);
        if (mark <= g1(x)) c1.push_back(x);
    }
    return {std::move(c1), std::move(cr), std::move(c2)};
}

}  // namespace paretolab
