#pragma once

#include <cstddef>

#include "smaa/bipolar.hpp"
#include "smaa/model.hpp"
#include "smaa/promethee.hpp"

namespace smaa {

/// Comprehensive preference of a over b as linear forms in the parameter vector.
/// classical: positive = P(a,b), negative = P(b,a) per criterion (so total = pi(a,b) - pi(b,a)).
/// bipolar:   Choquet forms of the bipolar preference vector.
ChoquetForm pair_form(const PreferenceDegrees& degrees, const ParamLayout& layout, std::size_t a, std::size_t b);

/// Flows of every alternative as linear maps of the parameter vector: flows = operator * theta.
struct FlowOperator {
    ParamLayout layout;
    Matrix positive;  ///< m x dimension
    Matrix negative;  ///< m x dimension

    Matrix net() const { return positive - negative; }
    Flows evaluate(const Vector& theta) const;
};

FlowOperator make_flow_operator(const PerformanceTable& table, const ParamLayout& layout);

}  // namespace smaa
