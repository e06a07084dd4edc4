#include "CLI11.hpp"
#include "bdc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Z2-equivariant Floer cohomology of branched double covers of braid closures"};
    app.require_subcommand(1);
    bdc::CliOptions opt;
    std::string braid, stage, suite;

    auto common = [&](CLI::App* c) {
        c->add_option("--strands", opt.strands, "number of strands (default: 1 + largest generator)");
        c->add_option("--budget", opt.budget, "finger-move budget for nicification");
        c->add_option("--theta-width", opt.theta_width, "grading window for spectral pages");
        c->add_flag("--json", opt.json, "machine-readable output");
    };

    auto* report = app.add_subcommand("report", "run the full pipeline on a braid word");
    report->add_option("braid", braid, "braid word, e.g. \"1 1 -2\"")->required();
    report->add_flag("!--no-timing", opt.timing, "omit timing (byte-stable output)");
    common(report);

    auto* dump = app.add_subcommand("dump", "print one pipeline stage as JSON");
    dump->add_option("stage", stage, "arcs | bridge | cover | complex | theta")->required()
        ->check(CLI::IsMember({"arcs", "bridge", "cover", "complex", "theta"}));
    dump->add_option("braid", braid, "braid word");
    dump->add_option("--complex", opt.complex_file, "theta stage: read a complex JSON instead");
    common(dump);

    auto* verify = app.add_subcommand("verify", "run a property suite");
    verify->add_option("suite", suite, "fuzz | towers | theorems")->required();
    verify->add_option("--seed", opt.seed, "random seed");
    verify->add_option("--size", opt.size, "number of random cases");
    common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : bdc::kInputError;
    }
    if (*report) return bdc::cmd_report(braid, opt, std::cout, std::cerr);
    if (*dump) return bdc::cmd_dump(stage, braid, opt, std::cout, std::cerr);
    return bdc::cmd_verify(suite, opt, std::cout, std::cerr);
}
