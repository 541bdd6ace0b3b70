#include "paretolab/grid.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "paretolab/csv_io.hpp"

namespace paretolab {

Grid::Grid(std::size_t d, std::size_t m, double M) : d_(d), m_(m), M_(M) {
    if (d_ < 1) throw std::invalid_argument("grid: dimension must be >= 1");
    if (m_ < 2) throw std::invalid_argument("grid: m must be >= 2");
    if (!(M_ > 0.0) || !std::isfinite(M_)) throw std::invalid_argument("grid: M must be positive");
    h_ = M_ / static_cast<double>(m_ - 1);
    strides_.assign(d_, 1);
    size_ = 1;
    for (std::size_t i = d_; i-- > 0;) {
        strides_[i] = size_;
        size_ *= m_;
    }
}

void Grid::multi_index(std::size_t flat, std::span<std::size_t> idx) const {
    for (std::size_t i = d_; i-- > 0;) {
        idx[i] = flat % m_;
        flat /= m_;
    }
}

std::size_t Grid::flat_index(std::span<const std::size_t> idx) const {
    std::size_t f = 0;
    for (std::size_t i = 0; i < d_; ++i) f = f * m_ + idx[i];
    return f;
}

void Grid::node(std::size_t flat, std::span<double> x) const {
    for (std::size_t i = d_; i-- > 0;) {
        x[i] = coord(flat % m_);
        flat /= m_;
    }
}

void write_grid_csv(const GridFunction& f, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    const Grid& g = f.grid;
    const std::size_t d = g.dim();
    for (std::size_t i = 0; i < d; ++i) out << "i" << i + 1 << ',';
    for (std::size_t i = 0; i < d; ++i) out << "x" << i + 1 << ',';
    out << "value\n";
    std::vector<std::size_t> idx(d);
    std::string line;
    for (std::size_t k = 0; k < g.size(); ++k) {
        g.multi_index(k, idx);
        line.clear();
        for (std::size_t i = 0; i < d; ++i) line += std::to_string(idx[i]) + ',';
        for (std::size_t i = 0; i < d; ++i) line += format_double(g.coord(idx[i])) + ',';
        line += format_double(f.values[k]);
        out << line << '\n';
    }
}

void write_grid_binary(const GridFunction& f, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    const std::int64_t header[2] = {static_cast<std::int64_t>(f.grid.dim()),
                                    static_cast<std::int64_t>(f.grid.nodes_per_axis())};
    out.write(reinterpret_cast<const char*>(header), sizeof header);
    out.write(reinterpret_cast<const char*>(f.values.data()),
              static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

GridFunction read_grid_binary(const std::filesystem::path& path, double M) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::int64_t header[2];
    in.read(reinterpret_cast<char*>(header), sizeof header);
    if (!in || header[0] < 1 || header[1] < 2) {
        throw std::runtime_error("bad grid header in " + path.string());
    }
    GridFunction f(Grid(static_cast<std::size_t>(header[0]), static_cast<std::size_t>(header[1]), M));
    in.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!in) throw std::runtime_error("truncated grid data in " + path.string());
    return f;
}

}  // namespace paretolab
