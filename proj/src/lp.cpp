#include "smaa/lp.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace smaa {

std::string to_string(LpStatus status) {
    switch (status) {
        case LpStatus::optimal: return "optimal";
        case LpStatus::infeasible: return "infeasible";
        case LpStatus::unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

/// Dense dictionary simplex for  max c.x  s.t.  A x <= b, x >= 0.
///
/// Slacks are implicit (basic variable `cols + i` is the slack of row i). Phase 1 adds a
/// single artificial column (index -1) subtracted from every row and minimizes it.
/// Entering column follows Dantzig's rule until a run of degenerate pivots, then Bland's.
class DictionarySimplex {
public:
    DictionarySimplex(const Matrix& a, const Vector& b, const RowVector& c, const LpOptions& options)
        : rows_(a.rows()), cols_(a.cols()), options_(options), basic_(rows_), nonbasic_(cols_ + 1),
          table_(Matrix::Zero(rows_ + 2, cols_ + 2)) {
        table_.topLeftCorner(rows_, cols_) = a;
        for (Eigen::Index i = 0; i < rows_; ++i) {
            basic_[i] = cols_ + i;
            table_(i, cols_) = -1.0;
            table_(i, cols_ + 1) = b[i];
        }
        for (Eigen::Index j = 0; j < cols_; ++j) {
            nonbasic_[j] = j;
            table_(rows_, j) = -c[j];
        }
        nonbasic_[cols_] = -1;
        table_(rows_ + 1, cols_) = 1.0;
    }

    LpStatus solve() {
        Eigen::Index r = 0;
        for (Eigen::Index i = 1; i < rows_; ++i) {
            if (table_(i, cols_ + 1) < table_(r, cols_ + 1)) r = i;
        }
        if (rows_ > 0 && table_(r, cols_ + 1) < -options_.pivot_tolerance) {
            pivot(r, cols_);
            if (!iterate(2)) throw std::runtime_error("phase 1 reported an unbounded ray");
            certificate_ = std::max(0.0, -table_(rows_ + 1, cols_ + 1));
            phase1_duals_ = slack_multipliers(rows_ + 1);
            if (certificate_ > options_.feasibility_tolerance) return LpStatus::infeasible;
            for (Eigen::Index i = 0; i < rows_; ++i) {
                if (basic_[i] != -1) continue;
                Eigen::Index s = -1;
                for (Eigen::Index j = 0; j <= cols_; ++j) {
                    if (nonbasic_[j] == -1) continue;
                    if (s == -1 || std::abs(table_(i, j)) > std::abs(table_(i, s))) s = j;
                }
                pivot(i, s);
            }
        }
        return iterate(1) ? LpStatus::optimal : LpStatus::unbounded;
    }

    Vector primal() const {
        Vector x = Vector::Zero(cols_);
        for (Eigen::Index i = 0; i < rows_; ++i) {
            if (basic_[i] >= 0 && basic_[i] < cols_) x[basic_[i]] = table_(i, cols_ + 1);
        }
        return x;
    }

    double objective() const { return table_(rows_, cols_ + 1); }
    Vector duals() const { return slack_multipliers(rows_); }
    const Vector& phase1_duals() const { return phase1_duals_; }
    double certificate() const { return certificate_; }
    bool used_bland() const { return bland_; }
    std::size_t pivots() const { return pivots_; }

private:
    Vector slack_multipliers(Eigen::Index objective_row) const {
        Vector y = Vector::Zero(rows_);
        for (Eigen::Index j = 0; j <= cols_; ++j) {
            if (nonbasic_[j] >= cols_) y[nonbasic_[j] - cols_] = table_(objective_row, j);
        }
        return y;
    }

    void pivot(Eigen::Index r, Eigen::Index s) {
        const double inv = 1.0 / table_(r, s);
        for (Eigen::Index i = 0; i < rows_ + 2; ++i) {
            if (i == r || std::abs(table_(i, s)) <= options_.pivot_tolerance * 1e-3) continue;
            const double factor = table_(i, s) * inv;
            table_.row(i) -= factor * table_.row(r);
            table_(i, s) = table_(r, s) * factor;
        }
        for (Eigen::Index j = 0; j < cols_ + 2; ++j) {
            if (j != s) table_(r, j) *= inv;
        }
        for (Eigen::Index i = 0; i < rows_ + 2; ++i) {
            if (i != r) table_(i, s) *= -inv;
        }
        table_(r, s) = inv;
        std::swap(basic_[r], nonbasic_[s]);
        ++pivots_;
    }

    /// phase 2 here means the artificial-variable problem (objective row rows_+1).
    bool iterate(int phase) {
        const Eigen::Index obj = rows_ + phase - 1;
        std::size_t degenerate_run = 0;
        for (;;) {
            if (pivots_ > options_.max_pivots) throw std::runtime_error("simplex pivot limit exceeded");
            Eigen::Index s = -1;
            for (Eigen::Index j = 0; j <= cols_; ++j) {
                if (nonbasic_[j] == -phase) continue;
                const double reduced = table_(obj, j);
                if (reduced >= -options_.pivot_tolerance) continue;
                if (s == -1) {
                    s = j;
                } else if (bland_) {
                    if (nonbasic_[j] < nonbasic_[s]) s = j;
                } else if (reduced < table_(obj, s) ||
                           (reduced == table_(obj, s) && nonbasic_[j] < nonbasic_[s])) {
                    s = j;
                }
            }
            if (s == -1) return true;

            Eigen::Index r = -1;
            double best = 0.0;
            for (Eigen::Index i = 0; i < rows_; ++i) {
                const double coef = table_(i, s);
                if (coef <= options_.pivot_tolerance) continue;
                const double ratio = table_(i, cols_ + 1) / coef;
                if (r == -1 || ratio < best - 1e-12 ||
                    (std::abs(ratio - best) <= 1e-12 && basic_[i] < basic_[r])) {
                    r = i;
                    best = ratio;
                }
            }
            if (r == -1) return false;

            if (std::abs(table_(r, cols_ + 1)) <= options_.pivot_tolerance) {
                if (++degenerate_run >= options_.degenerate_pivot_limit) bland_ = true;
            } else {
                degenerate_run = 0;
            }
            pivot(r, s);
        }
    }

    Eigen::Index rows_;
    Eigen::Index cols_;
    LpOptions options_;
    std::vector<Eigen::Index> basic_;
    std::vector<Eigen::Index> nonbasic_;
    Matrix table_;
    Vector phase1_duals_;
    double certificate_ = 0.0;
    bool bland_ = false;
    std::size_t pivots_ = 0;
};

struct StandardRow {
    std::size_t source;  ///< system row, or row_count() for the cap
    double sign;         ///< +1 when the standard row is the source row, -1 when negated
};

}  // namespace

LpOutcome maximize(const ConstraintSystem& system, const RowVector& objective, const LpOptions& options) {
    const auto cols = static_cast<Eigen::Index>(system.column_count());
    if (objective.size() != cols) throw ValidationError("objective has the wrong number of columns");
    const std::size_t cap_index = system.row_count();

    // Merge duplicated rows; they cannot change the optimum.
    std::map<std::pair<std::vector<double>, double>, std::size_t> seen;
    std::vector<RowVector> le_rows;
    std::vector<double> le_rhs;
    std::vector<StandardRow> origin;
    auto push = [&](const RowVector& a, double b, std::size_t source, double sign) {
        std::pair key{std::vector<double>(a.data(), a.data() + a.size()), b};
        if (!seen.emplace(std::move(key), le_rows.size()).second) return;
        le_rows.push_back(a);
        le_rhs.push_back(b);
        origin.push_back({source, sign});
    };
    for (std::size_t i = 0; i < system.row_count(); ++i) {
        const ConstraintRow& r = system.row(i);
        if (r.sense != Sense::greater_equal) push(r.coefficients, r.rhs, i, 1.0);
        if (r.sense != Sense::less_equal) push(-r.coefficients, -r.rhs, i, -1.0);
    }
    RowVector cap = RowVector::Zero(cols);
    cap[static_cast<Eigen::Index>(system.epsilon_column())] = 1.0;
    push(cap, options.epsilon_cap, cap_index, 1.0);

    // Free columns split as x = u - v.
    const auto m = static_cast<Eigen::Index>(le_rows.size());
    Matrix a(m, 2 * cols);
    Vector b(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        a.row(i) << le_rows[static_cast<std::size_t>(i)], -le_rows[static_cast<std::size_t>(i)];
        b[i] = le_rhs[static_cast<std::size_t>(i)];
    }
    RowVector c(2 * cols);
    c << objective, -objective;

    DictionarySimplex simplex(a, b, c, options);
    LpOutcome out;
    out.status = simplex.solve();
    out.certificate = simplex.certificate();
    out.used_bland = simplex.used_bland();
    out.pivots = simplex.pivots();

    const Vector standard_duals = out.status == LpStatus::infeasible ? simplex.phase1_duals() : simplex.duals();
    out.duals = Vector::Zero(static_cast<Eigen::Index>(cap_index + 1));
    for (Eigen::Index i = 0; i < m && i < standard_duals.size(); ++i) {
        const StandardRow& o = origin[static_cast<std::size_t>(i)];
        out.duals[static_cast<Eigen::Index>(o.source)] += o.sign * standard_duals[i];
    }
    for (Eigen::Index i = 0; i < out.duals.size(); ++i) {
        if (std::abs(out.duals[i]) > 1e-12) out.binding_rows.push_back(static_cast<std::size_t>(i));
    }

    if (out.status == LpStatus::optimal) {
        const Vector split = simplex.primal();
        out.solution = split.head(cols) - split.tail(cols);
        out.objective = objective.dot(out.solution);
        out.epsilon_star = out.solution[static_cast<Eigen::Index>(system.epsilon_column())];
    }
    return out;
}

LpOutcome max_epsilon(const ConstraintSystem& system, const LpOptions& options) {
    if (system.column_count() == 0) throw ValidationError("empty constraint system");
    RowVector objective = RowVector::Zero(static_cast<Eigen::Index>(system.column_count()));
    objective[static_cast<Eigen::Index>(system.epsilon_column())] = 1.0;
    return maximize(system, objective, options);
}

// ---------------------------------------------------------------------------

ConstraintSystem with_fixed_epsilon(const ConstraintSystem& system, double delta) {
    ConstraintSystem out = system;
    RowVector pin = RowVector::Zero(static_cast<Eigen::Index>(system.column_count()));
    pin[static_cast<Eigen::Index>(system.epsilon_column())] = 1.0;
    out.add_row(std::move(pin), Sense::equal, delta, "epsilon fixed");
    return out;
}

namespace {

double max_difference_on(const ConstraintSystem& pinned, const Matrix& net, std::size_t i, std::size_t j,
                         const LpOptions& options) {
    RowVector objective = RowVector::Zero(static_cast<Eigen::Index>(pinned.column_count()));
    objective.head(net.cols()) = net.row(static_cast<Eigen::Index>(i)) - net.row(static_cast<Eigen::Index>(j));
    const LpOutcome lp = maximize(pinned, objective, options);
    if (lp.status == LpStatus::infeasible) {
        throw ValidationError("compatible parameter set is empty (phase-1 residual " + std::to_string(lp.certificate) +
                              ")");
    }
    if (lp.status == LpStatus::unbounded) throw ValidationError("compatible parameter set is unbounded");
    return lp.objective;
}

void check_operator(const ConstraintSystem& system, const FlowOperator& flows) {
    if (!(flows.layout == system.layout())) throw ValidationError("flow operator layout does not match the system");
}

}  // namespace

double max_net_difference(const ConstraintSystem& system, const FlowOperator& flows, std::size_t i, std::size_t j,
                          const RorOptions& options) {
    check_operator(system, flows);
    return max_difference_on(with_fixed_epsilon(system, options.delta_strict), flows.net(), i, j, options.lp);
}

RorPair exact_ror_pair(const ConstraintSystem& system, const FlowOperator& flows, std::size_t i, std::size_t j,
                       const RorOptions& options) {
    check_operator(system, flows);
    const auto m = static_cast<std::size_t>(flows.positive.rows());
    if (i >= m || j >= m) throw std::out_of_range("alternative index out of range");
    if (i == j) return {true, true};
    const ConstraintSystem pinned = with_fixed_epsilon(system, options.delta_strict);
    const Matrix net = flows.net();
    const double forward = max_difference_on(pinned, net, i, j, options.lp);
    const double backward = max_difference_on(pinned, net, j, i, options.lp);
    return {backward < options.epsilon_min, forward >= -options.lp.feasibility_tolerance};
}

RorPair exact_ror_pair(const ConstraintSystem& system, const PerformanceTable& table, std::size_t i, std::size_t j,
                       const RorOptions& options) {
    return exact_ror_pair(system, make_flow_operator(table, system.layout()), i, j, options);
}

RorRelations exact_ror(const ConstraintSystem& system, const FlowOperator& flows, const RorOptions& options) {
    check_operator(system, flows);
    const auto m = static_cast<std::size_t>(flows.positive.rows());
    const ConstraintSystem pinned = with_fixed_epsilon(system, options.delta_strict);
    const Matrix net = flows.net();
    RorRelations rel{std::vector<std::vector<bool>>(m, std::vector<bool>(m, true)),
                     std::vector<std::vector<bool>>(m, std::vector<bool>(m, true))};
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            const double best = max_difference_on(pinned, net, i, j, options.lp);
            rel.possible[i][j] = best >= -options.lp.feasibility_tolerance;
            rel.necessary[j][i] = best < options.epsilon_min;
        }
    }
    return rel;
}

}  // namespace smaa
