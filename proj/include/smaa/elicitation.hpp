#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "smaa/bipolar.hpp"
#include "smaa/model.hpp"

namespace smaa {

/// The criteria count exceeds the P(J) enumeration cap.
class CapacityError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

enum class Judgement { preference, indifference };   // P | I
enum class Comparison { greater, equal };             // > | =
enum class InteractionKind { synergy, redundancy, none };  // + | - | 0

namespace statement {

/// a P b or a I b on the comprehensive bipolar preference of the pair.
struct LocalPair {
    std::size_t a, b;
    Judgement kind;
};
/// a versus b under (bipolar) PROMETHEE I flows.
struct GlobalP1 {
    std::size_t a, b;
    Judgement kind;
};
/// a versus b under (bipolar) PROMETHEE II net flows.
struct GlobalP2 {
    std::size_t a, b;
    Judgement kind;
};
/// Preference of a over b is larger than (equal to) that of c over d.
struct Intensity {
    std::size_t a, b, c, d;
    Judgement kind;
};
struct CriterionImportance {
    std::size_t j, k;
    Comparison kind;
};
struct InteractionSign {
    std::size_t j, k;
    InteractionKind sign;
};
/// |a_jk| versus |a_pq| with the sign of each interaction stated.
struct InteractionMagnitude {
    std::size_t j, k, p, q;
    Comparison kind;
    InteractionKind first, second;
};
/// Variant a: against criterion j (in favour), g_k opposes more strongly than g_h:
///   a+_{j|k} < a+_{j|h}.
/// Variant b: the opposing power of g_k is larger against g_j than against g_h:
///   a+_{j|k} < a+_{h|k}.
struct OpposingPower {
    char variant;
    std::size_t j, k, h;
};

}  // namespace statement

using PreferenceStatement =
    std::variant<statement::LocalPair, statement::GlobalP1, statement::GlobalP2, statement::Intensity,
                 statement::CriterionImportance, statement::InteractionSign, statement::InteractionMagnitude,
                 statement::OpposingPower>;

std::string describe(const PreferenceStatement& s, const PerformanceTable& table);

enum class Sense { less_equal, equal, greater_equal };

struct ConstraintRow {
    RowVector coefficients;  ///< parameter columns followed by the epsilon column
    Sense sense;
    double rhs;
    std::string provenance;
};

/// Dense linear constraints over [parameters | epsilon].
class ConstraintSystem {
public:
    explicit ConstraintSystem(ParamLayout layout) : layout_(layout) {}

    const ParamLayout& layout() const { return layout_; }
    std::size_t parameter_count() const { return layout_.dimension(); }
    std::size_t column_count() const { return layout_.dimension() + 1; }
    std::size_t epsilon_column() const { return layout_.dimension(); }
    std::size_t row_count() const { return rows_.size(); }
    const std::vector<ConstraintRow>& rows() const { return rows_; }
    const ConstraintRow& row(std::size_t i) const { return rows_[i]; }

    /// Parameter names followed by "eps".
    std::vector<std::string> variable_names() const;

    void add_row(RowVector coefficients, Sense sense, double rhs, std::string provenance);
    /// Row over the parameters only, with the given epsilon coefficient.
    void add_row(const RowVector& parameters, double epsilon_coefficient, Sense sense, double rhs,
                 std::string provenance);

    /// Amount by which row i is violated at (theta, eps); zero when satisfied.
    double violation(std::size_t i, const Vector& theta, double eps) const;
    double max_violation(const Vector& theta, double eps) const;

private:
    ParamLayout layout_;
    std::vector<ConstraintRow> rows_;
};

struct CompileOptions {
    std::size_t max_criteria = kDefaultMaxCriteria;
};

/// Statements plus symmetry, sign, boundary and monotonicity conditions, in the bipolar layout.
/// Strict statements carry -1 in the epsilon column ("expression >= eps").
ConstraintSystem compile(std::span<const PreferenceStatement> statements, const PerformanceTable& table,
                         const CompileOptions& options = {});

/// Classical restriction: interaction and opposing-power columns are fixed at zero and removed.
/// Rows left without any non-zero coefficient are dropped when trivially satisfied; duplicate
/// rows are merged (first provenance kept).
ConstraintSystem restrict_classical(const ConstraintSystem& system);

/// JSON-lines statement file. Alternatives are referenced by label, criteria by name or 1-based index.
/// Blank lines and lines starting with '#' are skipped.
std::vector<PreferenceStatement> parse_statements(const std::string& text, const PerformanceTable& table);
std::string statements_to_json_lines(std::span<const PreferenceStatement> statements, const PerformanceTable& table);

}  // namespace smaa
