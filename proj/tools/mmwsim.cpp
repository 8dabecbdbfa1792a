#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mmw/error.hpp"
#include "mmw/runner.hpp"
#include "mmw/scenario.hpp"

namespace {

constexpr const char* kVersion = "mmwsim 1.0.0";

int run_command(const std::string& config_path, const std::string& preset,
                const std::vector<std::string>& sets, const std::string& out_dir,
                const std::string& seed) {
    mmw::ScenarioConfig cfg;
    bool have_base = false;
    if (!preset.empty()) {
        cfg = mmw::expand_preset(preset);
        have_base = true;
    }
    if (!config_path.empty()) {
        if (have_base) {
            std::ifstream in(config_path);
            if (!in) mmw::throw_config("cannot open config file '" + config_path + "'");
            std::stringstream ss;
            ss << in.rdbuf();
            mmw::apply_config_text(cfg, ss.str(), config_path);
        } else {
            cfg = mmw::parse_config_file(config_path);
        }
        have_base = true;
    }
    if (!have_base)
        mmw::throw_config("run needs a config file or --preset NAME");
    for (const std::string& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            mmw::throw_config("--set expects key=value, got '" + kv + "'");
        mmw::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!seed.empty()) mmw::apply_override(cfg, "computation.seed", seed);

    const mmw::RunReport report = mmw::run_scenario(cfg);
    std::cout << report.to_text();
    std::cout << "report written to " << (std::filesystem::path(cfg.out_dir) / "report.txt").string()
              << "\n";
    return 0;
}

int presets_command() {
    for (const mmw::PresetInfo& p : mmw::presets())
        std::cout << p.name << "  -  " << p.description << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-mode waveguide intensity and photon-correlation simulator"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(0, 1);

    std::string config_path, preset, out_dir, seed;
    std::vector<std::string> sets;

    CLI::App* run = app.add_subcommand("run", "run a scenario and write maps and a report");
    run->add_option("config", config_path, "configuration file (key = value sections)");
    run->add_option("--preset", preset, "named scenario preset (see 'presets')");
    run->add_option("--set", sets, "override a config key: section.key=value")
        ->take_all();
    run->add_option("--out", out_dir, "output directory override");
    run->add_option("--seed", seed, "seed override");

    CLI::App* pres = app.add_subcommand("presets", "list the named scenario presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed()) return run_command(config_path, preset, sets, out_dir, seed);
        if (pres->parsed()) return presets_command();
        std::cerr << app.help();
        return 2;
    } catch (const mmw::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
