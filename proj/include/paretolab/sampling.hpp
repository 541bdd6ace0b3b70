#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "paretolab/density.hpp"

namespace paretolab {

enum class SampleMode { poisson, iid };

std::string to_string(SampleMode mode);
SampleMode parse_sample_mode(const std::string& s);

/// Sampling region: the box [0,M]^d, optionally intersected with the
/// rounded domain { geomean > R }.
struct Region {
    std::size_t d = 2;
    double M = 1.0;
    std::optional<double> R;

    bool contains(std::span<const double> x) const;
    double box_volume() const;
};

struct SampleConfig {
    std::uint64_t n = 1;
    std::uint64_t seed = 0;
    SampleMode mode = SampleMode::poisson;
    Region region;
};

struct CloudMeta {
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    SampleMode mode = SampleMode::poisson;
    Region region;
};

/// Points stored contiguously, point i at coords[i*d .. i*d + d).
class PointCloud {
public:
    PointCloud() = default;
    explicit PointCloud(std::size_t d, CloudMeta meta = {}) : d_(d), meta_(std::move(meta)) {}
    PointCloud(std::size_t d, std::vector<double> coords, CloudMeta meta = {});

    /// Convenience constructor for small hand-written clouds.
    static PointCloud from_points(const std::vector<std::vector<double>>& pts);

    std::size_t dim() const noexcept { return d_; }
    std::size_t size() const noexcept { return d_ == 0 ? 0 : coords_.size() / d_; }
    bool empty() const noexcept { return coords_.empty(); }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * d_, d_};
    }
    void push_back(std::span<const double> x);
    void reserve(std::size_t n) { coords_.reserve(n * d_); }

    const std::vector<double>& coords() const noexcept { return coords_; }
    const CloudMeta& meta() const noexcept { return meta_; }
    CloudMeta& meta() noexcept { return meta_; }

private:
    std::size_t d_ = 0;
    std::vector<double> coords_;
    CloudMeta meta_;
};

/// Poisson process with intensity n*rho on the region: N ~ Poisson(n rho_max
/// |box|) uniform points in the box, each kept with probability
/// rho(x)/rho_max and only if it lies in the region.
PointCloud sample_poisson(const DensityField& rho, const SampleConfig& cfg);

/// Exactly n i.i.d. points with density proportional to rho on the region,
/// by rejection against rho_max.
PointCloud sample_iid(const DensityField& rho, const SampleConfig& cfg);

/// Nested Poisson processes X_{g1} in X_rho in X_{g2} built from one marked
/// master process of intensity n sup(g2); a master point x with mark m
/// survives into X_f iff m <= f(x) / sup(g2). Throws std::invalid_argument
/// if g1 <= rho <= g2 fails at one of 1000 spot-check points.
std::tuple<PointCloud, PointCloud, PointCloud> couple_thinning(const DensityField& rho,
                                                               const DensityField& g1,
                                                               const DensityField& g2,
                                                               const SampleConfig& cfg);

/// Draws a Poisson(mean) count from the substream. Portable across platforms.
std::uint64_t poisson_count(double mean, std::uint64_t seed);

}  // namespace paretolab
