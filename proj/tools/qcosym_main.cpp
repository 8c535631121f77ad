#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qcosym/qcosym.hpp"

namespace {

struct CommandSpec {
    const char* name;
    const char* description;
};

constexpr CommandSpec kCommands[] = {
    {"validate", "check the structure axioms at sampled points and print a report"},
    {"simulate", "integrate the full fast-slow system and write trajectory.csv"},
    {"average", "integrate the averaged slow system and write trajectory.csv"},
    {"compare", "run full and averaged systems at two eps values and write deviations"},
    {"brackets", "evaluate configured Poisson bracket pairs at sampled points"},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-cosymplectic geometry and fast-slow averaging toolkit"};
    app.require_subcommand(1);
    std::string config_path;
    std::string out_dir;
    bool svg = false;
    for (const auto& spec : kCommands) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.description);
        sub->add_option("--config", config_path, "JSON configuration file")->required();
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        sub->add_flag("--svg", svg, "also emit SVG plots (overrides config)");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    const std::string command = app.get_subcommands().front()->get_name();

    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read config file '" << config_path << "'\n";
        return 2;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    try {
        qcosym::cli::CliConfig cfg = qcosym::cli::parse_config(buffer.str());
        if (qcosym::cli::command_name(cfg.command) != command)
            throw qcosym::ConfigValidationError("config command '" + qcosym::cli::command_name(cfg.command) +
                                                "' does not match subcommand '" + command + "'");
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (svg) cfg.emit_svg = true;
        return qcosym::cli::execute(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
