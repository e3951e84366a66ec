#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "dhkappa/cli.hpp"

int main(int argc, char** argv) {
    using namespace dhkappa;

    CLI::App app{"Chance-corrected agreement (DH kappa, Fleiss kappa) for annotated datasets"};
    CliConfig config;

    const std::map<std::string, Layout> layouts{{"counts", Layout::Counts}, {"raw", Layout::Raw}};
    const std::map<std::string, Metric> metrics{{"dh", Metric::Dh}, {"fleiss", Metric::Fleiss}, {"both", Metric::Both}};
    const std::map<std::string, OutputFormat> formats{{"text", OutputFormat::Text}, {"json", OutputFormat::Json}};

    app.add_option("--input", config.input_path, "Dataset CSV file")->required();
    app.add_option("--layout", config.layout, "counts|raw")
        ->transform(CLI::CheckedTransformer(layouts, CLI::ignore_case));
    app.add_option("--metric", config.metric, "dh|fleiss|both")
        ->transform(CLI::CheckedTransformer(metrics, CLI::ignore_case));
    app.add_option("--output", config.output_format, "text|json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    app.add_flag("--check-oracle", config.check_oracle,
                 "Cross-check against brute-force pair enumeration (raw layout only)");
    app.add_flag("--per-item", config.per_item, "Include per-item agreement rates");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input_error;
    }
    return run(config, std::cout, std::cerr);
}
