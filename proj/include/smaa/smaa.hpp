#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smaa/elicitation.hpp"
#include "smaa/linear_forms.hpp"
#include "smaa/lp.hpp"
#include "smaa/model.hpp"
#include "smaa/sampler.hpp"

namespace smaa {

enum class FlowMode { classical, bipolar };

std::string to_string(FlowMode mode);

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Monte-Carlo SMAA statistics. Counts are exact; fractions are count / sample_count.
struct SmaaResults {
    FlowMode mode = FlowMode::classical;
    ParamLayout layout = ParamLayout::generic(0);
    std::vector<std::string> alternatives;
    std::int64_t sample_count = 0;

    CountMatrix rank_counts;       ///< [i][r-1]: samples giving alternative i rank r
    CountMatrix p1_pref_counts;    ///< PROMETHEE I: i P j
    CountMatrix p1_indiff_counts;  ///< PROMETHEE I: i I j (symmetric)
    CountMatrix p1_incomp_counts;  ///< PROMETHEE I: i R j (symmetric)
    CountMatrix p2_pref_counts;    ///< PROMETHEE II: i P j
    CountMatrix p2_indiff_counts;  ///< PROMETHEE II: i I j (symmetric)

    /// Mean of the samples ranking i first; absent when no sample does.
    std::vector<std::optional<Vector>> central_weights;
    Vector barycenter;

    /// i P j or i I j in every sample.
    BoolMatrix ror_necessary_approx;
    /// i P j or i I j in at least one sample (weak preference, like the exact relation).
    BoolMatrix ror_possible_approx;

    std::size_t alternative_count() const { return alternatives.size(); }
    Matrix fraction(const CountMatrix& counts) const;
    Matrix rank_acceptability() const { return fraction(rank_counts); }
    Matrix p1_pref() const { return fraction(p1_pref_counts); }
    Matrix p1_indiff() const { return fraction(p1_indiff_counts); }
    Matrix p1_incomp() const { return fraction(p1_incomp_counts); }
    Matrix p2_pref() const { return fraction(p2_pref_counts); }
    Matrix p2_indiff() const { return fraction(p2_indiff_counts); }
};

struct AggregateOptions {
    /// 0 uses SMAA_THREADS when set, else the hardware concurrency.
    std::size_t threads = 0;
    double tie_tolerance = kFlowTolerance;
    /// Flow identities (net = positive - negative, sum of net = 0) checked on every sample.
    double identity_tolerance = 1e-9;
};

/// Worker count from SMAA_THREADS (if set and positive) capped by the hardware concurrency.
std::size_t default_thread_count();

/// Per-sample flows, PROMETHEE I relation and PROMETHEE II ranks, accumulated in fixed-size
/// blocks reduced in block order, so the result is independent of the worker count.
/// Throws on an empty batch, a mode/layout mismatch or a violated count invariant.
SmaaResults aggregate(const PerformanceTable& table, const SampleBatch& batch, FlowMode mode,
                      const AggregateOptions& options = {});

/// Count invariants: rank rows, relation partitions, symmetry, approximate ROR inclusion.
/// Returns the first violation found, or an empty string.
std::string check_count_invariants(const SmaaResults& results);

/// Largest row violation of the barycenter and central weights against the system, with
/// epsilon fixed at delta (convexity of the compatible set).
double max_convexity_violation(const SmaaResults& results, const ConstraintSystem& system, double delta);

/// Weight columns of a bipolar batch as a classical batch.
SampleBatch classical_projection(const SampleBatch& batch);

struct RorDiscrepancy {
    std::size_t i;
    std::size_t j;
    std::string kind;
};

struct RorValidation {
    RorRelations exact;
    /// Broken implications: exact-necessary without frequency sum 1, or positive frequency without exact-possible.
    std::vector<RorDiscrepancy> violations;
    /// Converse gaps, which sampling is allowed to show.
    std::vector<RorDiscrepancy> converse;

    bool consistent() const { return violations.empty(); }
};

/// Exact ROR by LP for every ordered pair, compared with the SMAA approximation.
RorValidation validate_against_exact_ror(const SmaaResults& results, const ConstraintSystem& system,
                                         const PerformanceTable& table, const RorOptions& options = {});

}  // namespace smaa
