#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace smaa {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using RowVector = Eigen::RowVectorXd;

/// Raised for malformed problems, statements and configuration.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Direction { maximize, minimize };

struct Criterion {
    std::string name;
    Direction direction = Direction::maximize;
    double q = 0.0;  ///< indifference threshold
    double p = 0.0;  ///< preference threshold; q == p selects the usual 0/1 criterion
};

/// Alternatives x criteria evaluation matrix with per-criterion thresholds.
/// Immutable once constructed.
class PerformanceTable {
public:
    PerformanceTable(std::vector<Criterion> criteria,
                     std::vector<std::string> alternatives,
                     Matrix evaluations);

    std::size_t alternative_count() const { return alternatives_.size(); }
    std::size_t criterion_count() const { return criteria_.size(); }

    const std::vector<Criterion>& criteria() const { return criteria_; }
    const Criterion& criterion(std::size_t j) const;
    const std::vector<std::string>& alternatives() const { return alternatives_; }
    const Matrix& evaluations() const { return evaluations_; }
    double evaluation(std::size_t a, std::size_t j) const;

    /// Index lookup by label / name; throws ValidationError when absent.
    std::size_t alternative_index(const std::string& label) const;
    std::size_t criterion_index(const std::string& name) const;

private:
    std::vector<Criterion> criteria_;
    std::vector<std::string> alternatives_;
    Matrix evaluations_;
};

/// g_j(a) - g_j(b), negated for minimized criteria so that larger is always better.
/// Throws std::out_of_range on bad indices.
double difference(const PerformanceTable& table, std::size_t j, std::size_t a, std::size_t b);

std::string to_string(Direction d);
Direction direction_from_string(const std::string& s);

// JSON problem files: {"criteria":[{"name","direction","q","p"}], "alternatives":[...], "evaluations":[[...]]}
PerformanceTable problem_from_json_text(const std::string& text);
std::string problem_to_json_text(const PerformanceTable& table);

/// CSV evaluation matrix: header row holds criterion names, first column the
/// alternative labels. Criteria default to maximize with q = p = 0.
PerformanceTable problem_from_csv_text(const std::string& text);

/// Dispatches on extension (.csv, otherwise JSON).
PerformanceTable load_problem(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace smaa
