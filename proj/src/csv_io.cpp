#include "paretolab/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace paretolab {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_cloud_csv(const PointCloud& cloud, const std::filesystem::path& path) {
    auto out = open_out(path);
    const auto& meta = cloud.meta();
    out << "# d=" << cloud.dim() << " n=" << meta.n << " seed=" << meta.seed
        << " mode=" << to_string(meta.mode) << '\n';
    std::string line;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        line.clear();
        const auto p = cloud.point(i);
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (k) line += ',';
            line += format_double(p[k]);
        }
        out << line << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

PointCloud read_cloud_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
        throw std::runtime_error(path.string() + ": missing '# d=... n=... seed=... mode=...' header");
    }
    CloudMeta meta;
    std::size_t d = 0;
    std::istringstream hs(line.substr(2));
    std::string field;
    while (hs >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) continue;
        const auto key = field.substr(0, eq);
        const auto val = field.substr(eq + 1);
        if (key == "d") d = std::stoul(val);
        else if (key == "n") meta.n = std::stoull(val);
        else if (key == "seed") meta.seed = std::stoull(val);
        else if (key == "mode") meta.mode = parse_sample_mode(val);
    }
    if (d < 2) throw std::runtime_error(path.string() + ": header has no valid d");
    meta.region.d = d;
    PointCloud cloud(d, meta);
    std::vector<double> p;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        p.clear();
        std::istringstream ls(line);
        std::string tok;
        while (std::getline(ls, tok, ',')) p.push_back(std::stod(tok));
        if (p.size() != d) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected " +
                                     std::to_string(d) + " coordinates");
        }
        cloud.push_back(p);
    }
    return cloud;
}

void write_labels_csv(const PointCloud& cloud, const DepthLabeling& depths,
                      const FrontPartition& fronts, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "point_index";
    for (std::size_t k = 0; k < cloud.dim(); ++k) out << ",x" << k + 1;
    out << ",depth,front\n";
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        out << i;
        for (double v : cloud.point(i)) out << ',' << format_double(v);
        out << ',' << depths.depth[i] << ',' << fronts.front_index[i] << '\n';
    }
}

void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
    auto out = open_out(path);
    for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << row[k];
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace paretolab
