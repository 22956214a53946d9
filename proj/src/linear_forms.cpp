#include "smaa/linear_forms.hpp"

namespace smaa {

ChoquetForm pair_form(const PreferenceDegrees& degrees, const ParamLayout& layout, std::size_t a, std::size_t b) {
    const std::size_t n = degrees.criterion_count();
    if (layout.criteria() != n) throw ValidationError("layout does not match the criteria");
    switch (layout.kind()) {
        case LayoutKind::classical: {
            ChoquetForm form{RowVector(static_cast<Eigen::Index>(n)), RowVector(static_cast<Eigen::Index>(n))};
            for (std::size_t j = 0; j < n; ++j) {
                form.positive[static_cast<Eigen::Index>(j)] = degrees(j, a, b);
                form.negative[static_cast<Eigen::Index>(j)] = degrees(j, b, a);
            }
            return form;
        }
        case LayoutKind::bipolar:
            return choquet_linear_form(bipolar_preference_vector(degrees, a, b), layout);
        case LayoutKind::generic: break;
    }
    throw ValidationError("pairwise forms need a classical or bipolar layout");
}

Flows FlowOperator::evaluate(const Vector& theta) const {
    Flows f;
    f.positive = positive * theta;
    f.negative = negative * theta;
    f.net = f.positive - f.negative;
    return f;
}

FlowOperator make_flow_operator(const PerformanceTable& table, const ParamLayout& layout) {
    const PreferenceDegrees degrees(table);
    const std::size_t m = table.alternative_count();
    const auto dim = static_cast<Eigen::Index>(layout.dimension());
    FlowOperator op{layout, Matrix::Zero(static_cast<Eigen::Index>(m), dim),
                    Matrix::Zero(static_cast<Eigen::Index>(m), dim)};
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            if (a == b) continue;
            const ChoquetForm form = pair_form(degrees, layout, a, b);
            op.positive.row(static_cast<Eigen::Index>(a)) += form.positive;
            op.negative.row(static_cast<Eigen::Index>(a)) += form.negative;
        }
    }
    const double scale = 1.0 / static_cast<double>(m - 1);
    op.positive *= scale;
    op.negative *= scale;
    return op;
}

}  // namespace smaa
