#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "smaa/elicitation.hpp"
#include "smaa/linear_forms.hpp"
#include "smaa/model.hpp"

namespace smaa {

struct LpOptions {
    double feasibility_tolerance = 1e-8;
    double pivot_tolerance = 1e-10;
    /// Upper bound on the epsilon column; keeps max-epsilon problems bounded.
    double epsilon_cap = 1.0;
    /// Consecutive degenerate pivots before switching to Bland's rule for good.
    std::size_t degenerate_pivot_limit = 50;
    std::size_t max_pivots = 200000;
};

enum class LpStatus { optimal, infeasible, unbounded };

std::string to_string(LpStatus status);

struct LpOutcome {
    LpStatus status = LpStatus::infeasible;
    double objective = 0.0;
    double epsilon_star = 0.0;
    /// Parameters followed by epsilon (empty unless optimal).
    Vector solution;
    /// Smallest worst-row infeasibility reached by phase 1 (0 when feasible).
    double certificate = 0.0;
    /// One multiplier per system row, then one for the epsilon cap row. With these signs
    /// sum_i dual_i * row_i = objective and sum_i dual_i * rhs_i is the dual bound;
    /// <= rows have dual >= 0, >= rows dual <= 0. Phase-1 multipliers when infeasible.
    Vector duals;
    /// Rows with a non-zero multiplier (index row_count() denotes the epsilon cap).
    std::vector<std::size_t> binding_rows;
    bool used_bland = false;
    std::size_t pivots = 0;
};

/// Maximizes objective . [theta, eps] over the system (all columns free) with eps <= epsilon_cap.
LpOutcome maximize(const ConstraintSystem& system, const RowVector& objective, const LpOptions& options = {});

/// Maximizes the epsilon column: the compatibility test of the classical (E^B') or bipolar (E^B) model.
LpOutcome max_epsilon(const ConstraintSystem& system, const LpOptions& options = {});

struct RorOptions {
    /// Epsilon value defining the compatible set (same as the sampler's delta_strict).
    double delta_strict = 0.0;
    /// Margin for the strict side of the necessary test.
    double epsilon_min = 1e-6;
    LpOptions lp;
};

struct RorPair {
    bool necessary;
    bool possible;
};

/// Copy of the system with the epsilon column pinned to delta.
ConstraintSystem with_fixed_epsilon(const ConstraintSystem& system, double delta);

/// Largest net(i) - net(j) over the compatible set; throws when that set is empty.
double max_net_difference(const ConstraintSystem& system, const FlowOperator& flows, std::size_t i, std::size_t j,
                          const RorOptions& options = {});

/// possible(i,j): some compatible parameter gives net(i) >= net(j).
/// necessary(i,j): no compatible parameter gives net(j) >= net(i) + epsilon_min.
RorPair exact_ror_pair(const ConstraintSystem& system, const FlowOperator& flows, std::size_t i, std::size_t j,
                       const RorOptions& options = {});
RorPair exact_ror_pair(const ConstraintSystem& system, const PerformanceTable& table, std::size_t i, std::size_t j,
                       const RorOptions& options = {});

/// Both relations for every ordered pair (m(m-1) LPs).
struct RorRelations {
    std::vector<std::vector<bool>> necessary;
    std::vector<std::vector<bool>> possible;
};
RorRelations exact_ror(const ConstraintSystem& system, const FlowOperator& flows, const RorOptions& options = {});

}  // namespace smaa
