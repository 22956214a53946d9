#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "smaa/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"SMAA-PROMETHEE: stochastic multicriteria acceptability analysis for (bipolar) PROMETHEE"};
    smaa::RunConfig config;
    std::string mode = "auto";
    std::string formats = "json,text,csv";

    app.add_option("--problem", config.problem, "Performance table (.json or .csv)")->required()->check(CLI::ExistingFile);
    app.add_option("--statements", config.statements, "Preference statements (JSON lines)")->check(CLI::ExistingFile);
    app.add_option("--samples", config.sampler.sample_count, "Number of sampled parameter vectors")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", config.sampler.seed, "Sampler seed");
    app.add_option("--mode", mode, "auto, classical or bipolar")->check(CLI::IsMember({"auto", "classical", "bipolar"}));
    app.add_flag("--exact-ror", config.exact_ror, "Also compute exact necessary/possible relations by LP");
    app.add_option("--out", config.output_dir, "Output directory");
    app.add_option("--format", formats, "Comma-separated subset of json,text,csv");
    app.add_option("--delta-strict", config.sampler.delta_strict, "Epsilon value fixed while sampling")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--burn-in", config.sampler.burn_in, "Hit-and-run burn-in steps");
    app.add_option("--thin", config.sampler.thinning, "Keep every N-th step")->check(CLI::PositiveNumber);
    app.add_flag("--dump-samples", config.dump_samples, "Write samples.bin and its samples.json sidecar");
    CLI11_PARSE(app, argc, argv);

    try {
        config.mode = smaa::mode_policy_from_string(mode);
        config.formats.clear();
        std::stringstream ss(formats);
        for (std::string item; std::getline(ss, item, ',');) {
            if (item == "json") {
                config.formats.insert(smaa::ReportFormat::json);
            } else if (item == "text") {
                config.formats.insert(smaa::ReportFormat::text);
            } else if (item == "csv") {
                config.formats.insert(smaa::ReportFormat::csv);
            } else {
                throw smaa::ValidationError("unknown report format '" + item + "'");
            }
        }
        return smaa::run(config, std::cout, std::cerr);
    } catch (const smaa::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return smaa::kExitInputError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return smaa::kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
