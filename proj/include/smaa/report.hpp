#pragma once

#include <string>

#include "smaa/smaa.hpp"

namespace smaa {

/// Value as rendered in reports: parsed back from its fixed-point text, so text and JSON agree
/// exactly. Negative zero is normalised to zero.
double rounded(double value, int decimals);
std::string fixed(double value, int decimals);

/// count / sample_count as a percentage with 3 decimals.
double percentage(std::int64_t count, std::int64_t sample_count);

inline constexpr int kPercentDecimals = 3;
inline constexpr int kWeightDecimals = 6;

/// Counts, percentages, central weights, barycenter and approximate ROR.
std::string smaa_report_json(const SmaaResults& results);

/// Aligned tables: PROMETHEE I preference / indifference / incomparability, PROMETHEE II
/// preference, rank acceptability, central weight vectors, barycenter.
std::string smaa_report_text(const SmaaResults& results);

/// Long format: section,row,column,count,value.
std::string smaa_report_csv(const SmaaResults& results);

std::string ror_report_json(const SmaaResults& results, const RorValidation& validation);

}  // namespace smaa
