#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include <pdens/cli.hpp>

int main(int argc, char** argv) {
    using pdens::cli::Command;
    using pdens::cli::Format;

    CLI::App app{"pdens: exact density functions of periodic sequences"};
    app.require_subcommand(1);

    pdens::cli::RunConfig cfg;
    long k_max = -1;
    bool no_primitive = false;
    bool no_rescale = false;
    std::uint64_t seed = 0;
    std::string out_path;

    const std::map<std::string, Format> formats{{"json", Format::json}, {"csv", Format::csv}, {"svg", Format::svg}};
    const std::map<std::string, Command> commands{
        {"compute", Command::compute},       {"compare", Command::compare}, {"rho", Command::rho},
        {"reconstruct", Command::reconstruct}, {"oracle-check", Command::oracle_check}, {"plot", Command::plot},
    };
    const std::map<std::string, std::string> help{
        {"compute", "density fingerprint of a sequence file"},
        {"compare", "decide whether two sequences have equal fingerprints"},
        {"rho", "areas under psi_k, closed form and integrated"},
        {"reconstruct", "rebuild a generic sequence from psi_1 of a fingerprint or sequence file"},
        {"oracle-check", "check closed forms against the coverage definition"},
        {"plot", "SVG plot of psi_k"},
    };

    for (const auto& [name, command] : commands) {
        CLI::App* sub = app.add_subcommand(name, help.at(name));
        sub->add_option("files", cfg.inputs, "input JSON file(s)")->required();
        sub->add_option("--k-max", k_max, "highest k to emit")->check(CLI::NonNegativeNumber);
        sub->add_flag("--no-primitive-reduce", no_primitive, "keep non-primitive cells as given");
        sub->add_flag("--no-rescale", no_rescale, "keep radii in units of the input period");
        sub->add_option("--format", cfg.format, "json, csv or svg")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
        sub->add_option("--out", out_path, "write output to PATH instead of stdout");
        sub->add_option("--seed", seed, "seed for extra random radii in oracle-check");
        sub->callback([&cfg, command = command] { cfg.command = command; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : pdens::cli::exit_usage;
    }

    for (CLI::App* sub : app.get_subcommands()) {
        if (sub->count("--k-max") > 0) cfg.k_max = k_max;
        if (sub->count("--seed") > 0) cfg.seed = seed;
        if (sub->count("--out") > 0) cfg.out_path = out_path;
    }
    cfg.primitive_reduce = !no_primitive;
    cfg.rescale = !no_rescale;
    if (cfg.command == Command::plot) cfg.format = Format::svg;

    return pdens::cli::run(cfg, std::cout, std::cerr);
}
