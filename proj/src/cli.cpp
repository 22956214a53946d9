#include "smaa/cli.hpp"

#include <fstream>
#include <ostream>

#include <json.hpp>

#include "smaa/report.hpp"

namespace smaa {

using ojson = nlohmann::ordered_json;

ModePolicy mode_policy_from_string(const std::string& s) {
    if (s == "auto") return ModePolicy::automatic;
    if (s == "classical") return ModePolicy::classical;
    if (s == "bipolar") return ModePolicy::bipolar;
    throw ValidationError("unknown mode '" + s + "' (expected auto, classical or bipolar)");
}

Compatibility check_compatibility(const ConstraintSystem& system, double delta_strict, const LpOptions& options) {
    Compatibility c;
    c.outcome = max_epsilon(system, options);
    if (c.outcome.status == LpStatus::optimal) {
        c.epsilon_star = c.outcome.epsilon_star;
        c.compatible = c.outcome.epsilon_star > delta_strict + options.feasibility_tolerance;
    }
    return c;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot write '" + path.string() + "'");
    f << content;
}

ojson binding_rows(const ConstraintSystem& system, const LpOutcome& outcome) {
    ojson rows = ojson::array();
    for (std::size_t i : outcome.binding_rows) {
        const bool cap = i >= system.row_count();
        rows.push_back({{"row", i},
                        {"provenance", cap ? std::string("epsilon cap") : system.row(i).provenance},
                        {"multiplier", outcome.duals[static_cast<Eigen::Index>(i)]}});
    }
    return rows;
}

ojson compatibility_json(const std::string& model, const ConstraintSystem& system, const Compatibility& c) {
    ojson j;
    j["model"] = model;
    j["status"] = to_string(c.outcome.status);
    j["epsilon_star"] = c.epsilon_star ? ojson(*c.epsilon_star) : ojson(nullptr);
    j["compatible"] = c.compatible;
    if (!c.compatible) j["binding_rows"] = binding_rows(system, c.outcome);
    return j;
}

void print_binding(std::ostream& err, const ConstraintSystem& system, const LpOutcome& outcome) {
    for (std::size_t i : outcome.binding_rows) {
        err << "  binding: " << (i >= system.row_count() ? std::string("epsilon cap") : system.row(i).provenance)
            << "\n";
    }
}

std::string describe_epsilon(const Compatibility& c) {
    return c.epsilon_star ? fixed(*c.epsilon_star, 9) : std::string("infeasible");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    PerformanceTable table = [&] {
        try {
            return load_problem(config.problem);
        } catch (const std::exception& e) {
            throw ValidationError(config.problem.string() + ": " + e.what());
        }
    }();
    std::vector<PreferenceStatement> statements;
    if (!config.statements.empty()) {
        try {
            statements = parse_statements(read_text_file(config.statements), table);
        } catch (const std::exception& e) {
            throw ValidationError(config.statements.string() + ": " + e.what());
        }
    }
    if (config.formats.empty()) throw ValidationError("at least one report format is required");

    const ConstraintSystem bipolar = compile(statements, table);
    const ConstraintSystem classical = restrict_classical(bipolar);
    const double delta = config.sampler.delta_strict;
    const LpOptions& lp = config.sampler.lp;

    const Compatibility c1 = check_compatibility(classical, delta, lp);
    const Compatibility c2 = check_compatibility(bipolar, delta, lp);

    std::optional<FlowMode> chosen;
    switch (config.mode) {
        case ModePolicy::automatic:
            if (c1.compatible) {
                chosen = FlowMode::classical;
            } else if (c2.compatible) {
                chosen = FlowMode::bipolar;
            }
            break;
        case ModePolicy::classical:
            if (c1.compatible) chosen = FlowMode::classical;
            break;
        case ModePolicy::bipolar:
            if (c2.compatible) chosen = FlowMode::bipolar;
            break;
    }

    std::filesystem::create_directories(config.output_dir);
    ojson feas;
    feas["policy"] = config.mode == ModePolicy::automatic ? "auto" : config.mode == ModePolicy::classical ? "classical" : "bipolar";
    feas["delta_strict"] = delta;
    feas["epsilon_1"] = c1.epsilon_star ? ojson(*c1.epsilon_star) : ojson(nullptr);
    feas["epsilon_2"] = c2.epsilon_star ? ojson(*c2.epsilon_star) : ojson(nullptr);
    feas["classical"] = compatibility_json("classical", classical, c1);
    feas["bipolar"] = compatibility_json("bipolar", bipolar, c2);
    feas["mode"] = chosen ? ojson(to_string(*chosen)) : ojson(nullptr);
    write_file(config.output_dir / "feasibility.json", feas.dump(2) + "\n");

    out << "epsilon_1 (classical) = " << describe_epsilon(c1) << "\n";
    out << "epsilon_2 (bipolar)   = " << describe_epsilon(c2) << "\n";
    if (!chosen) {
        err << "preference information is incompatible with the requested model(s)\n";
        if (config.mode != ModePolicy::bipolar && !c1.compatible) {
            err << "classical model, epsilon_1 = " << describe_epsilon(c1) << "\n";
            print_binding(err, classical, c1.outcome);
        }
        if (config.mode != ModePolicy::classical && !c2.compatible) {
            err << "bipolar model, epsilon_2 = " << describe_epsilon(c2) << "\n";
            print_binding(err, bipolar, c2.outcome);
        }
        return kExitIncompatible;
    }
    out << "mode: " << to_string(*chosen) << "\n";

    const ConstraintSystem& system = *chosen == FlowMode::classical ? classical : bipolar;
    const SampleBatch batch = sample_compatible(system, config.sampler);
    if (config.dump_samples) save_batch(batch, config.output_dir / "samples.bin", config.output_dir / "samples.json");

    AggregateOptions agg;
    agg.threads = config.threads;
    const SmaaResults results = aggregate(table, batch, *chosen, agg);
    const double convexity = max_convexity_violation(results, system, delta);
    if (convexity > 1e-9) {
        throw std::logic_error("barycenter or central weights leave the compatible set by " + std::to_string(convexity));
    }

    if (config.formats.count(ReportFormat::json)) write_file(config.output_dir / "smaa_report.json", smaa_report_json(results));
    if (config.formats.count(ReportFormat::text)) write_file(config.output_dir / "smaa_report.txt", smaa_report_text(results));
    if (config.formats.count(ReportFormat::csv)) write_file(config.output_dir / "smaa_report.csv", smaa_report_csv(results));

    if (config.exact_ror) {
        RorOptions ror;
        ror.delta_strict = delta;
        ror.lp = lp;
        const RorValidation v = validate_against_exact_ror(results, system, table, ror);
        write_file(config.output_dir / "ror_report.json", ror_report_json(results, v));
        out << "exact ROR: " << v.violations.size() << " implication violations, " << v.converse.size()
            << " converse gaps\n";
    }
    out << "wrote reports to " << config.output_dir.string() << "\n";
    return kExitOk;
}

}  // namespace smaa
