#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
    using namespace cexpr::cli;

    CLI::App app{"Build, sample and verify constrained expressions"};
    app.require_subcommand(1);
    app.fallthrough();

    CommandOptions options;
    std::string format = "csv";
    app.add_option("--seed", options.seed, "Seed for random draws")->capture_default_str();
    app.add_option("--tolerance", options.tolerance, "Residual threshold factor")->capture_default_str();
    app.add_option("--format", format, "Output format (csv)")->capture_default_str();

    std::string spec;
    std::string output;
    std::string name;

    auto* build = app.add_subcommand("build", "Print support matrix, rank, rcond and beta coefficients");
    build->add_option("spec", spec, "Problem spec (JSON)")->required();

    auto* sample = app.add_subcommand("sample", "Sample a problem to CSV");
    sample->add_option("spec", spec, "Problem spec (JSON)")->required();
    sample->add_option("-o,--output", output, "CSV output path")->required();

    auto* verify = app.add_subcommand("verify", "Check constraint residuals");
    verify->add_option("spec", spec, "Problem spec (JSON)")->required();

    auto* repro = app.add_subcommand("repro", "Reproduce a worked example");
    repro->add_option("name", name, "Example name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    if (format != "csv") {
        std::cerr << "error: unsupported format '" << format << "' (only csv)\n";
        return kExitInputError;
    }
    if (!(options.tolerance > 0.0)) {
        std::cerr << "error: tolerance must be positive\n";
        return kExitInputError;
    }

    if (*build) {
        return cmd_build(spec, std::cout, std::cerr, options);
    }
    if (*sample) {
        return cmd_sample(spec, output, std::cout, std::cerr, options);
    }
    if (*verify) {
        return cmd_verify(spec, std::cout, std::cerr, options);
    }
    return cmd_repro(name, std::cout, std::cerr, options);
}
