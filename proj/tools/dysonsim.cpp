#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dyson.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dyson::ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dysonsim: long-range Ising chain kernels, decimation constraints, "
                 "and the conditional-magnetization probe"};
    app.set_version_flag("--version", dyson::build_id());

    std::string command;
    app.add_option("command", command, "exact | sample | probe | scan | check")->required();
    std::string config_path;
    app.add_option("--config", config_path, "flat key = value run configuration");
    unsigned long long seed = 0;
    const auto* seed_opt = app.add_option("--seed", seed, "chain seed (>= 1), overrides config");
    std::string out_path;
    const auto* out_opt = app.add_option("--out", out_path, "output path ('-' = stdout)");
    std::string format;
    const auto* format_opt =
        app.add_option("--format", format, "csv | json, overrides config")
            ->check(CLI::IsMember({"csv", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        dyson::RunConfig cfg;
        if (!config_path.empty()) {
            // the command positional overrides a command key in the file
            cfg = dyson::parse_run_config(read_file(config_path) + "\ncommand = " + command);
        } else {
            cfg = dyson::parse_run_config("command = " + command);
        }
        if (seed_opt->count() > 0) cfg.seed = seed;
        if (out_opt->count() > 0) cfg.out = out_path;
        if (format_opt->count() > 0) cfg.format = format;
        return dyson::run_command(cfg);
    } catch (const dyson::ConfigError& err) {
        std::cerr << "configuration error: " << err.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& err) {
        std::cerr << "configuration error: " << err.what() << '\n';
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
}
