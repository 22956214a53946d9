#include "smaa/model.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace smaa {

using nlohmann::json;

PerformanceTable::PerformanceTable(std::vector<Criterion> criteria,
                                   std::vector<std::string> alternatives,
                                   Matrix evaluations)
    : criteria_(std::move(criteria)),
      alternatives_(std::move(alternatives)),
      evaluations_(std::move(evaluations)) {
    if (alternatives_.size() < 2) throw ValidationError("at least two alternatives are required");
    if (criteria_.size() < 2) throw ValidationError("at least two criteria are required");
    if (static_cast<std::size_t>(evaluations_.rows()) != alternatives_.size() ||
        static_cast<std::size_t>(evaluations_.cols()) != criteria_.size()) {
        throw ValidationError("evaluation matrix is " + std::to_string(evaluations_.rows()) + "x" +
                              std::to_string(evaluations_.cols()) + ", expected " +
                              std::to_string(alternatives_.size()) + "x" +
                              std::to_string(criteria_.size()));
    }
    if (!evaluations_.allFinite()) throw ValidationError("evaluations must be finite");

    std::set<std::string> seen;
    for (const auto& label : alternatives_) {
        if (!seen.insert(label).second) throw ValidationError("duplicate alternative label '" + label + "'");
    }
    seen.clear();
    for (const auto& c : criteria_) {
        if (!seen.insert(c.name).second) throw ValidationError("duplicate criterion name '" + c.name + "'");
        if (!std::isfinite(c.q) || !std::isfinite(c.p) || c.q < 0.0 || c.p < c.q) {
            throw ValidationError("criterion '" + c.name + "' needs 0 <= q <= p");
        }
    }
}

const Criterion& PerformanceTable::criterion(std::size_t j) const {
    if (j >= criteria_.size()) throw std::out_of_range("criterion index out of range");
    return criteria_[j];
}

double PerformanceTable::evaluation(std::size_t a, std::size_t j) const {
    if (a >= alternatives_.size()) throw std::out_of_range("alternative index out of range");
    if (j >= criteria_.size()) throw std::out_of_range("criterion index out of range");
    return evaluations_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(j));
}

std::size_t PerformanceTable::alternative_index(const std::string& label) const {
    for (std::size_t i = 0; i < alternatives_.size(); ++i) {
        if (alternatives_[i] == label) return i;
    }
    throw ValidationError("unknown alternative '" + label + "'");
}

std::size_t PerformanceTable::criterion_index(const std::string& name) const {
    for (std::size_t j = 0; j < criteria_.size(); ++j) {
        if (criteria_[j].name == name) return j;
    }
    throw ValidationError("unknown criterion '" + name + "'");
}

double difference(const PerformanceTable& table, std::size_t j, std::size_t a, std::size_t b) {
    const double d = table.evaluation(a, j) - table.evaluation(b, j);
    return table.criterion(j).direction == Direction::maximize ? d : -d;
}

std::string to_string(Direction d) { return d == Direction::maximize ? "maximize" : "minimize"; }

Direction direction_from_string(const std::string& s) {
    if (s == "maximize" || s == "max") return Direction::maximize;
    if (s == "minimize" || s == "min") return Direction::minimize;
    throw ValidationError("unknown direction '" + s + "'");
}

PerformanceTable problem_from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("problem file: ") + e.what());
    }
    try {
        std::vector<Criterion> criteria;
        for (const auto& c : doc.at("criteria")) {
            Criterion crit;
            crit.name = c.at("name").get<std::string>();
            crit.direction = direction_from_string(c.value("direction", std::string("maximize")));
            crit.q = c.value("q", 0.0);
            crit.p = c.value("p", 0.0);
            criteria.push_back(std::move(crit));
        }
        auto alternatives = doc.at("alternatives").get<std::vector<std::string>>();
        const auto& rows = doc.at("evaluations");
        Matrix evaluations(static_cast<Eigen::Index>(rows.size()),
                           static_cast<Eigen::Index>(criteria.size()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& row = rows[i];
            if (row.size() != criteria.size()) {
                throw ValidationError("problem file: evaluations[" + std::to_string(i) + "] has " +
                                      std::to_string(row.size()) + " entries, expected " +
                                      std::to_string(criteria.size()));
            }
            for (std::size_t j = 0; j < row.size(); ++j) {
                evaluations(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j].get<double>();
            }
        }
        return PerformanceTable(std::move(criteria), std::move(alternatives), std::move(evaluations));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("problem file: ") + e.what());
    }
}

std::string problem_to_json_text(const PerformanceTable& table) {
    json doc;
    doc["criteria"] = json::array();
    for (const auto& c : table.criteria()) {
        doc["criteria"].push_back({{"name", c.name}, {"direction", to_string(c.direction)}, {"q", c.q}, {"p", c.p}});
    }
    doc["alternatives"] = table.alternatives();
    doc["evaluations"] = json::array();
    const Matrix& g = table.evaluations();
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < g.cols(); ++j) row.push_back(g(i, j));
        doc["evaluations"].push_back(std::move(row));
    }
    return doc.dump(2) + "\n";
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        const auto first = cell.find_first_not_of(" \t\r\"");
        const auto last = cell.find_last_not_of(" \t\r\"");
        cells.push_back(first == std::string::npos ? std::string() : cell.substr(first, last - first + 1));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

PerformanceTable problem_from_csv_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<std::string>> rows;
    std::size_t line_no = 0;
    std::vector<std::size_t> line_numbers;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        rows.push_back(split_csv_line(line));
        line_numbers.push_back(line_no);
    }
    if (rows.empty()) throw ValidationError("csv: empty file");

    const auto& header = rows.front();
    if (header.size() < 2) throw ValidationError("csv line 1: header needs a label column and criteria");
    std::vector<Criterion> criteria;
    for (std::size_t j = 1; j < header.size(); ++j) criteria.push_back(Criterion{header[j], Direction::maximize, 0.0, 0.0});

    std::vector<std::string> labels;
    Matrix g(static_cast<Eigen::Index>(rows.size() - 1), static_cast<Eigen::Index>(criteria.size()));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != header.size()) {
            throw ValidationError("csv line " + std::to_string(line_numbers[i]) + ": expected " +
                                  std::to_string(header.size()) + " fields, found " + std::to_string(row.size()));
        }
        labels.push_back(row[0]);
        for (std::size_t j = 1; j < row.size(); ++j) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(row[j], &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != row[j].size()) {
                throw ValidationError("csv line " + std::to_string(line_numbers[i]) + ", field " +
                                      std::to_string(j + 1) + ": '" + row[j] + "' is not a number");
            }
            g(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1)) = v;
        }
    }
    return PerformanceTable(std::move(criteria), std::move(labels), std::move(g));
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

PerformanceTable load_problem(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    if (path.extension() == ".csv") return problem_from_csv_text(text);
    return problem_from_json_text(text);
}

}  // namespace smaa
