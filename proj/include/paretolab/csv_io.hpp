#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "paretolab/chains.hpp"
#include "paretolab/sampling.hpp"

namespace paretolab {

/// Shortest round-trip-safe text for a double: 17 significant digits.
std::string format_double(double v);

/// Header `# d=<d> n=<n> seed=<seed> mode=<mode>`, then one point per line.
void write_cloud_csv(const PointCloud& cloud, const std::filesystem::path& path);
PointCloud read_cloud_csv(const std::filesystem::path& path);

/// Columns point_index, x1..xd, depth, front.
void write_labels_csv(const PointCloud& cloud, const DepthLabeling& depths,
                      const FrontPartition& fronts, const std::filesystem::path& path);

/// Plain comma-separated table with a header row.
void write_table(const std::filesystem::path& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows);

}  // namespace paretolab
