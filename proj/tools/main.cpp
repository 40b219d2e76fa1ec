#include <spdlog/spdlog.h>

#include <iostream>

#include "CLI11.hpp"
#include "blowup/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Blow-up and global-existence laboratory for the isentropic Euler system"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, theorem, out_dir;
    std::vector<std::string> overrides;
    bool quiet = false;
    app.add_flag("-q,--quiet", quiet, "Only print errors");

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"gen-data", "Generate an initial datum and write it as a snapshot"},
        {"check", "Evaluate every blow-up / global-existence hypothesis on a datum"},
        {"burgers", "Blow-up time and velocity of the pressureless comparison flow"},
        {"simulate", "Run the finite-volume solver and record diagnostics"},
        {"verify-theorem", "Check a theorem's hypotheses, simulate, and compare with its bound"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("-c,--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
        sub->add_option("-s,--set", overrides, "Override a key: section.key=value (repeatable)");
        sub->add_option("-o,--out", out_dir, "Output directory (same as output.dir)");
        if (name == "verify-theorem")
            sub->add_option("-t,--theorem", theorem, "thm2.2 | prop2.3 | thm2.5 | prop2.7");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : blowup::cli::kExitConfig;
    }
    spdlog::set_level(quiet ? spdlog::level::err : spdlog::level::warn);

    const std::string command = app.get_subcommands().front()->get_name();
    if (!theorem.empty()) overrides.push_back("theorem.name=" + theorem);
    if (!out_dir.empty()) overrides.push_back("output.dir=" + out_dir);
    try {
        const auto cfg = blowup::cli::load_config(
            command, config_path.empty() ? std::nullopt : std::optional<std::filesystem::path>(config_path),
            overrides);
        return blowup::cli::run_command(cfg);
    } catch (const blowup::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return blowup::cli::kExitConfig;
    }
}
