#include "paretolab/config.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "CLI11.hpp"

namespace paretolab {

namespace {

using nlohmann::json;

constexpr std::array<std::pair<Command, const char*>, 11> kCommands{{
    {Command::sort, "sort"},
    {Command::depth, "depth"},
    {Command::chain, "chain"},
    {Command::cell, "cell"},
    {Command::solve, "solve"},
    {Command::rates, "rates"},
    {Command::rates_full, "rates-full"},
    {Command::cd, "cd"},
    {Command::semiconvexity, "semiconvexity"},
    {Command::boundary, "boundary"},
    {Command::cover_check, "cover-check"},
}};

[[noreturn]] void invalid(const std::string& key, const std::string& why) {
    throw ConfigError("invalid value for key " + key + ": " + why);
}

double parse_number(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        invalid(key, "'" + text + "' is not a number");
    }
    if (used != text.size() || !std::isfinite(v)) invalid(key, "'" + text + "' is not a number");
    return v;
}

std::uint64_t to_count(const std::string& key, double v) {
    if (!(v >= 0.0) || v != std::floor(v) || v > 1.8e19) {
        invalid(key, "expected a nonnegative integer");
    }
    return static_cast<std::uint64_t>(v);
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(parse_number(key, tok));
    }
    if (out.empty()) invalid(key, "empty list");
    return out;
}

double get_number(const json& j, const std::string& key) {
    const auto& v = j.at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_number(key, v.get<std::string>());
    invalid(key, "expected a number");
}

std::uint64_t get_count(const json& j, const std::string& key) {
    return to_count(key, get_number(j, key));
}

std::vector<double> get_list(const json& j, const std::string& key) {
    const auto& v = j.at(key);
    if (v.is_string()) return parse_list(key, v.get<std::string>());
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array()) invalid(key, "expected a list of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (e.is_number()) out.push_back(e.get<double>());
        else if (e.is_string()) out.push_back(parse_number(key, e.get<std::string>()));
        else invalid(key, "expected a list of numbers");
    }
    return out;
}

std::string get_string(const json& j, const std::string& key) {
    const auto& v = j.at(key);
    if (!v.is_string()) invalid(key, "expected a string");
    return v.get<std::string>();
}

void require(bool present, const char* key) {
    if (!present) throw ConfigError(std::string("missing key: ") + key);
}

}  // namespace

std::string to_string(Command c) {
    for (const auto& [cmd, name] : kCommands) {
        if (cmd == c) return name;
    }
    return "unknown";
}

Command parse_command(const std::string& s) {
    for (const auto& [cmd, name] : kCommands) {
        if (s == name) return cmd;
    }
    throw ConfigError("unknown command: " + s);
}

std::string default_output_dir() {
    const char* env = std::getenv("PARETOLAB_OUT");
    return env && *env ? env : "out";
}

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    require(j.contains("command"), "command");
    RunConfig cfg;
    cfg.command = parse_command(get_string(j, "command"));

    if (j.contains("d")) cfg.d = get_count(j, "d");
    if (j.contains("ns")) {
        for (double v : get_list(j, "ns")) cfg.ns.push_back(to_count("ns", v));
    } else if (j.contains("n")) {
        cfg.ns.push_back(get_count(j, "n"));
    }
    if (j.contains("trials")) cfg.trials = get_count(j, "trials");
    if (j.contains("R")) cfg.R = get_number(j, "R");
    if (j.contains("eps")) cfg.eps = get_number(j, "eps");
    if (j.contains("grid")) cfg.grid = get_count(j, "grid");
    if (j.contains("density")) cfg.density = get_string(j, "density");
    if (j.contains("density_params")) cfg.density_params = get_list(j, "density_params");
    if (j.contains("radii")) cfg.radii = get_list(j, "radii");
    if (j.contains("sides")) cfg.sides = get_list(j, "sides");
    if (j.contains("c_d")) cfg.c_d = get_number(j, "c_d");
    if (j.contains("mode")) cfg.mode = get_string(j, "mode");
    if (j.contains("input")) cfg.input = get_string(j, "input");
    if (j.contains("seed")) cfg.seed = get_count(j, "seed");
    cfg.output_dir = j.contains("output_dir") ? get_string(j, "output_dir") : default_output_dir();
    if (j.contains("workers")) cfg.workers = get_count(j, "workers");

    // Per-command requirements.
    const Command c = cfg.command;
    const bool reads_cloud = c == Command::sort || c == Command::depth || c == Command::chain;
    if (!(reads_cloud && cfg.input)) require(cfg.d.has_value(), "d");
    switch (c) {
        case Command::sort:
        case Command::depth:
        case Command::chain:
            if (!cfg.input) require(!cfg.ns.empty(), "n");
            break;
        case Command::cell:
            require(!cfg.ns.empty(), "ns");
            break;
        case Command::solve:
            require(cfg.grid.has_value(), "grid");
            break;
        case Command::rates:
            require(cfg.R.has_value(), "R");
            require(!cfg.ns.empty(), "ns");
            require(cfg.grid.has_value(), "grid");
            break;
        case Command::rates_full:
            require(!cfg.ns.empty(), "ns");
            require(cfg.grid.has_value(), "grid");
            break;
        case Command::cd:
            require(!cfg.ns.empty(), "n");
            break;
        case Command::semiconvexity:
            require(!cfg.radii.empty(), "radii");
            require(cfg.grid.has_value(), "grid");
            break;
        case Command::boundary:
            require(cfg.R.has_value(), "R");
            require(cfg.eps.has_value(), "eps");
            require(!cfg.ns.empty(), "n");
            require(cfg.grid.has_value(), "grid");
            break;
        case Command::cover_check:
            require(cfg.eps.has_value(), "eps");
            break;
    }

    // Ranges.
    if (cfg.d && *cfg.d < 2) invalid("d", "must be >= 2");
    for (auto n : cfg.ns) {
        if (n < 1) invalid("ns", "entries must be >= 1");
    }
    if (cfg.trials && *cfg.trials < 1) invalid("trials", "must be >= 1");
    if (cfg.R && !(*cfg.R >= 0.0 && *cfg.R < 1.0)) invalid("R", "must be in [0, 1)");
    if (cfg.eps && !(*cfg.eps > 0.0)) invalid("eps", "must be positive");
    if (cfg.grid && *cfg.grid < 2) invalid("grid", "must be >= 2");
    if (cfg.workers < 1) invalid("workers", "must be >= 1");
    if (cfg.mode != "poisson" && cfg.mode != "iid") invalid("mode", "expected poisson or iid");
    if (cfg.density != "constant" && cfg.density != "affine" && cfg.density != "bump") {
        invalid("density", "expected constant, affine or bump");
    }
    for (double r : cfg.radii) {
        if (!(r > 0.0 && r < 1.0)) invalid("radii", "entries must be in (0, 1)");
    }
    for (double p : cfg.sides) {
        if (!(p > 0.0)) invalid("sides", "entries must be positive");
    }
    if (!cfg.sides.empty() && cfg.d && cfg.sides.size() != *cfg.d) invalid("sides", "need d entries");

    if (!cfg.trials) {
        if (c == Command::cd) cfg.trials = 20;
        else if (c == Command::rates || c == Command::rates_full || c == Command::cell ||
                 c == Command::boundary) cfg.trials = 10;
    }
    return cfg;
}

json serialize(const RunConfig& cfg) {
    json j;
    j["command"] = to_string(cfg.command);
    if (cfg.d) j["d"] = *cfg.d;
    if (!cfg.ns.empty()) j["ns"] = cfg.ns;
    if (cfg.trials) j["trials"] = *cfg.trials;
    if (cfg.R) j["R"] = *cfg.R;
    if (cfg.eps) j["eps"] = *cfg.eps;
    if (cfg.grid) j["grid"] = *cfg.grid;
    j["density"] = cfg.density;
    if (!cfg.density_params.empty()) j["density_params"] = cfg.density_params;
    if (!cfg.radii.empty()) j["radii"] = cfg.radii;
    if (!cfg.sides.empty()) j["sides"] = cfg.sides;
    if (cfg.c_d) j["c_d"] = *cfg.c_d;
    j["mode"] = cfg.mode;
    if (cfg.input) j["input"] = *cfg.input;
    j["seed"] = cfg.seed;
    j["output_dir"] = cfg.output_dir;
    j["workers"] = cfg.workers;
    return j;
}

RunConfig parse_config(const std::vector<std::string>& args) {
    CLI::App app{"Pareto depth and longest-chain laboratory"};
    app.name("paretolab");
    std::string command;
    std::string config_path;
    app.add_option("command", command,
                   "sort | depth | chain | cell | solve | rates | rates-full | cd | "
                   "semiconvexity | boundary | cover-check");
    app.add_option("--config", config_path, "JSON config file; flags override its values");

    struct Flag {
        const char* flag;
        const char* key;
        const char* help;
        enum Kind { number, list, text } kind;
    };
    static constexpr std::array<Flag, 17> kFlags{{
        {"--d", "d", "dimension", Flag::number},
        {"--n", "n", "intensity scale or sample count", Flag::number},
        {"--ns", "ns", "comma-separated n ladder, e.g. 1e3,1e4,1e5", Flag::list},
        {"--trials", "trials", "independent trials per n", Flag::number},
        {"--R", "R", "rounding radius of the domain", Flag::number},
        {"--eps", "eps", "tube width or cover resolution", Flag::number},
        {"--grid", "grid", "grid nodes per axis", Flag::number},
        {"--density", "density", "constant | affine | bump", Flag::text},
        {"--density-params", "density_params", "comma-separated density parameters", Flag::list},
        {"--radii", "radii", "comma-separated decreasing radii", Flag::list},
        {"--sides", "sides", "comma-separated simplex side lengths", Flag::list},
        {"--c_d", "c_d", "chain constant to use for d >= 3", Flag::number},
        {"--mode", "mode", "poisson | iid", Flag::text},
        {"--input", "input", "point cloud CSV to read", Flag::text},
        {"--seed", "seed", "master seed (default 0)", Flag::number},
        {"--out", "output_dir", "output directory (default $PARETOLAB_OUT or ./out)", Flag::text},
        {"--workers", "workers", "worker threads (results do not depend on this)", Flag::number},
    }};
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    for (const auto& f : kFlags) options[f.key] = app.add_option(f.flag, values[f.key], f.help);

    std::vector<const char*> argv{"paretolab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    json j = json::object();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw ConfigError("cannot read config file: " + config_path);
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError("config file " + config_path + " is not valid JSON");
        }
        if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    }
    if (!command.empty()) j["command"] = command;
    for (const auto& f : kFlags) {
        if (options[f.key]->count() == 0) continue;
        const std::string& v = values[f.key];
        switch (f.kind) {
            case Flag::number: j[f.key] = parse_number(f.key, v); break;
            case Flag::list: j[f.key] = parse_list(f.key, v); break;
            case Flag::text: j[f.key] = v; break;
        }
        if (std::string(f.key) == "n") j.erase("ns");
        if (std::string(f.key) == "ns") j.erase("n");
    }
    return config_from_json(j);
}

DensityField make_density(const RunConfig& cfg) {
    if (!cfg.d) throw ConfigError("missing key: d");
    const std::size_t d = *cfg.d;
    const auto& p = cfg.density_params;
    try {
        if (cfg.density == "constant") {
            return DensityField::constant(d, p.empty() ? 1.0 : p[0]);
        }
        if (cfg.density == "affine") {
            if (p.size() != d + 1) invalid("density_params", "affine needs c0 and d slopes");
            return DensityField::affine(d, p[0], std::vector<double>(p.begin() + 1, p.end()));
        }
        if (cfg.density == "bump") {
            if (p.size() != d + 3) invalid("density_params", "bump needs base, amp, width and d center coordinates");
            return DensityField::smooth_bump(d, p[0], p[1], std::vector<double>(p.begin() + 3, p.end()), p[2]);
        }
    } catch (const std::invalid_argument& e) {
        invalid("density_params", e.what());
    }
    invalid("density", "unknown density " + cfg.density);
}

}  // namespace paretolab
