#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "paretolab/density.hpp"

namespace paretolab {

enum class Command {
    sort,
    depth,
    chain,
    cell,
    solve,
    rates,
    rates_full,
    cd,
    semiconvexity,
    boundary,
    cover_check,
};

std::string to_string(Command c);
Command parse_command(const std::string& s);

/// Invalid or incomplete configuration. The message is one line naming the
/// offending key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown by parse_config for --help; carries the usage text.
struct HelpRequested {
    std::string text;
};

struct RunConfig {
    Command command = Command::cd;
    std::optional<std::size_t> d;
    /// n ladder; a single entry for commands that take one n.
    std::vector<std::uint64_t> ns;
    std::optional<std::size_t> trials;
    std::optional<double> R;
    std::optional<double> eps;
    /// Nodes per axis.
    std::optional<std::size_t> grid;
    std::string density = "constant";
    std::vector<double> density_params;
    std::vector<double> radii;
    /// Simplex side lengths for the cell problem.
    std::vector<double> sides;
    std::optional<double> c_d;
    std::string mode = "poisson";
    std::optional<std::string> input;
    std::uint64_t seed = 0;
    std::string output_dir;
    std::size_t workers = 1;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses `<command> [--key value ...] [--config file.json]`. Values from
/// the file are read first and flags override them. The command may come
/// from the file. Missing required keys raise ConfigError("missing key: k").
RunConfig parse_config(const std::vector<std::string>& args);

/// Validates a JSON record with the keys written by serialize.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json serialize(const RunConfig& cfg);

/// Default output directory: $PARETOLAB_OUT, else "out".
std::string default_output_dir();

/// The density named in the config on [0,1]^d:
///   constant  [c]                      (default 1)
///   affine    [c0, c_1, ..., c_d]
///   bump      [base, amp, width, center_1, ..., center_d]
DensityField make_density(const RunConfig& cfg);

}  // namespace paretolab
