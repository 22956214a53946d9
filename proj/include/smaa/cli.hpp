#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>

#include "smaa/sampler.hpp"
#include "smaa/smaa.hpp"

namespace smaa {

enum class ModePolicy { automatic, classical, bipolar };

ModePolicy mode_policy_from_string(const std::string& s);

enum class ReportFormat { json, text, csv };

struct RunConfig {
    std::filesystem::path problem;
    /// Empty path: no statements, structural constraints only.
    std::filesystem::path statements;
    SamplerConfig sampler;
    ModePolicy mode = ModePolicy::automatic;
    std::filesystem::path output_dir = ".";
    std::set<ReportFormat> formats{ReportFormat::json, ReportFormat::text, ReportFormat::csv};
    bool exact_ror = false;
    bool dump_samples = false;
    std::size_t threads = 0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitIncompatible = 2;

/// Compatibility of one model: max epsilon, or nothing when the system is infeasible outright.
struct Compatibility {
    std::optional<double> epsilon_star;
    bool compatible = false;
    LpOutcome outcome;
};

Compatibility check_compatibility(const ConstraintSystem& system, double delta_strict, const LpOptions& options = {});

/// Full pipeline: load, compile, check the classical model then the bipolar one, sample,
/// aggregate and write reports into output_dir. Returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace smaa
