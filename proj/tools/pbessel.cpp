#include "commands.hpp"
#include "run_config.hpp"

#include "pbessel/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <thread>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitQuality = 3;
constexpr int kExitIo = 4;

std::filesystem::path default_output(const std::string& subcommand) {
    const char* root = std::getenv("PBESSEL_OUTPUT_ROOT");
    return std::filesystem::path(root && *root ? root : "pbessel-runs") / subcommand;
}

} // namespace

int main(int argc, char** argv) {
    using namespace pbessel::cli;

    CLI::App app{"Bessel heat semigroup, Riesz transforms and boundedness experiments"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    std::string output;
    int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    app.add_option("--config", config_path, "JSON config file; flags override its keys");
    app.add_option("--output", output, "artifact directory (default $PBESSEL_OUTPUT_ROOT/<subcommand>)");
    app.add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);

    std::map<std::string, std::map<std::string, std::string>> raw;
    std::map<std::string, std::map<std::string, CLI::Option*>> options;
    for (const Command& cmd : commands()) {
        CLI::App* sub = app.add_subcommand(cmd.name, cmd.description);
        for (const Param& p : cmd.params) {
            const std::string shown = p.fallback.empty() ? " (required)" : " [" + p.fallback + "]";
            options[cmd.name][p.key] = sub->add_option("--" + p.key, raw[cmd.name][p.key], p.help + shown);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    const CLI::App* chosen = app.get_subcommands().front();
    const Command* cmd = nullptr;
    for (const Command& c : commands()) {
        if (c.name == chosen->get_name()) cmd = &c;
    }

    try {
        std::map<std::string, std::string> given;
        for (const auto& [key, opt] : options[cmd->name]) {
            if (opt->count() > 0) given[key] = raw[cmd->name][key];
        }
        RunConfig config(cmd->name, cmd->params);
        config.resolve(given, load_config_file(config_path));

        RunContext ctx;
        ctx.workers = workers;
        const RunResult result = cmd->run(config, ctx);
        const std::filesystem::path dir = output.empty() ? default_output(cmd->name) : std::filesystem::path(output);
        write_artifacts(dir, config, result);

        for (const Check& c : result.checks) {
            std::cout << (c.passed ? "ok    " : "FAIL  ") << c.name << " = " << format_number(c.value)
                      << " (tolerance " << format_number(c.tolerance) << ")\n";
        }
        std::cout << "artifacts: " << (dir / result.csv_name).string() << ", " << (dir / "report.json").string()
                  << "\n";
        return result.passed() ? kExitOk : kExitQuality;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    } catch (const pbessel::DomainError& e) {
        std::cerr << "config: " << e.what() << "\n";
        return kExitConfig;
    } catch (const pbessel::NumericalError& e) {
        std::cerr << "numerical: " << e.what() << "\n";
        return kExitQuality;
    } catch (const OutputError& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "io: " << e.what() << "\n";
        return kExitIo;
    }
}
