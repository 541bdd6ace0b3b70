#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace paretolab {

/// Uniform grid on [0,M]^d with m nodes per axis and spacing h = M/(m-1).
/// Nodes are stored row-major: the last axis varies fastest.
class Grid {
public:
    Grid(std::size_t d, std::size_t m, double M = 1.0);

    std::size_t dim() const noexcept { return d_; }
    std::size_t nodes_per_axis() const noexcept { return m_; }
    double box_side() const noexcept { return M_; }
    double spacing() const noexcept { return h_; }
    std::size_t size() const noexcept { return size_; }

    /// Stride of axis i in the flat index.
    std::size_t stride(std::size_t axis) const noexcept { return strides_[axis]; }

    void multi_index(std::size_t flat, std::span<std::size_t> idx) const;
    std::size_t flat_index(std::span<const std::size_t> idx) const;

    /// Coordinate i*h of the node along each axis.
    double coord(std::size_t i) const noexcept { return static_cast<double>(i) * h_; }
    void node(std::size_t flat, std::span<double> x) const;

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.d_ == b.d_ && a.m_ == b.m_ && a.M_ == b.M_;
    }

private:
    std::size_t d_;
    std::size_t m_;
    double M_;
    double h_;
    std::size_t size_;
    std::vector<std::size_t> strides_;
};

struct GridFunction {
    Grid grid;
    std::vector<double> values;

    explicit GridFunction(const Grid& g, double fill = 0.0) : grid(g), values(g.size(), fill) {}

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
};

/// One line per node: i_1..i_d, x_1..x_d, value.
void write_grid_csv(const GridFunction& f, const std::filesystem::path& path);

/// 16-byte header (d, m as int64) followed by m^d doubles in row-major order.
/// The box side is not stored; read_grid_binary takes it as an argument.
void write_grid_binary(const GridFunction& f, const std::filesystem::path& path);
GridFunction read_grid_binary(const std::filesystem::path& path, double M = 1.0);

}  // namespace paretolab
