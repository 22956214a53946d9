#include "smaa/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

namespace smaa {

using ojson = nlohmann::ordered_json;

std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    std::string s = buf;
    if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
    return s;
}

double rounded(double value, int decimals) {
    const double v = std::strtod(fixed(value, decimals).c_str(), nullptr);
    return v == 0.0 ? 0.0 : v;
}

double percentage(std::int64_t count, std::int64_t sample_count) {
    return rounded(100.0 * static_cast<double>(count) / static_cast<double>(sample_count), kPercentDecimals);
}

namespace {

struct Section {
    const char* key;
    const char* title;
    const CountMatrix* counts;
};

std::vector<Section> pair_sections(const SmaaResults& r) {
    return {
        {"p1_preference", "PROMETHEE I preference", &r.p1_pref_counts},
        {"p1_indifference", "PROMETHEE I indifference", &r.p1_indiff_counts},
        {"p1_incomparability", "PROMETHEE I incomparability", &r.p1_incomp_counts},
        {"p2_preference", "PROMETHEE II preference", &r.p2_pref_counts},
        {"p2_indifference", "PROMETHEE II indifference", &r.p2_indiff_counts},
    };
}

ojson count_block(const CountMatrix& counts, std::int64_t n) {
    ojson c = ojson::array();
    ojson p = ojson::array();
    for (Eigen::Index i = 0; i < counts.rows(); ++i) {
        ojson crow = ojson::array();
        ojson prow = ojson::array();
        for (Eigen::Index j = 0; j < counts.cols(); ++j) {
            crow.push_back(counts(i, j));
            prow.push_back(percentage(counts(i, j), n));
        }
        c.push_back(std::move(crow));
        p.push_back(std::move(prow));
    }
    return ojson{{"counts", std::move(c)}, {"percent", std::move(p)}};
}

ojson weight_array(const Vector& v) {
    ojson a = ojson::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(rounded(v[k], kWeightDecimals));
    return a;
}

ojson bool_block(const BoolMatrix& b) {
    ojson out = ojson::array();
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
        ojson row = ojson::array();
        for (Eigen::Index j = 0; j < b.cols(); ++j) row.push_back(static_cast<bool>(b(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<std::string> rank_labels(std::size_t m) {
    std::vector<std::string> labels;
    for (std::size_t r = 1; r <= m; ++r) labels.push_back("b" + std::to_string(r));
    return labels;
}

/// Right-aligned table with a left label column.
void write_table(std::ostream& os, const std::string& title, const std::vector<std::string>& columns,
                 const std::vector<std::string>& row_labels, const std::vector<std::vector<std::string>>& cells) {
    std::size_t label_w = 0;
    for (const auto& l : row_labels) label_w = std::max(label_w, l.size());
    std::vector<std::size_t> widths(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        widths[c] = columns[c].size();
        for (const auto& row : cells) widths[c] = std::max(widths[c], row[c].size());
    }
    os << title << "\n";
    os << std::string(label_w, ' ');
    for (std::size_t c = 0; c < columns.size(); ++c) {
        os << "  " << std::string(widths[c] - columns[c].size(), ' ') << columns[c];
    }
    os << "\n";
    for (std::size_t r = 0; r < cells.size(); ++r) {
        os << row_labels[r] << std::string(label_w - row_labels[r].size(), ' ');
        for (std::size_t c = 0; c < columns.size(); ++c) {
            os << "  " << std::string(widths[c] - cells[r][c].size(), ' ') << cells[r][c];
        }
        os << "\n";
    }
    os << "\n";
}

std::vector<std::vector<std::string>> percent_cells(const CountMatrix& counts, std::int64_t n) {
    std::vector<std::vector<std::string>> cells;
    for (Eigen::Index i = 0; i < counts.rows(); ++i) {
        std::vector<std::string> row;
        for (Eigen::Index j = 0; j < counts.cols(); ++j) {
            row.push_back(fixed(percentage(counts(i, j), n), kPercentDecimals));
        }
        cells.push_back(std::move(row));
    }
    return cells;
}

std::vector<std::string> weight_cells(const Vector& v) {
    std::vector<std::string> row;
    for (Eigen::Index k = 0; k < v.size(); ++k) row.push_back(fixed(rounded(v[k], kWeightDecimals), kWeightDecimals));
    return row;
}

}  // namespace

std::string smaa_report_json(const SmaaResults& r) {
    ojson j;
    j["mode"] = to_string(r.mode);
    j["sample_count"] = r.sample_count;
    j["alternatives"] = r.alternatives;
    j["parameters"] = r.layout.names();
    j["rank_acceptability"] = count_block(r.rank_counts, r.sample_count);
    for (const Section& s : pair_sections(r)) j[s.key] = count_block(*s.counts, r.sample_count);
    ojson central = ojson::object();
    for (std::size_t i = 0; i < r.alternative_count(); ++i) {
        central[r.alternatives[i]] = r.central_weights[i] ? weight_array(*r.central_weights[i]) : ojson(nullptr);
    }
    j["central_weights"] = std::move(central);
    j["barycenter"] = weight_array(r.barycenter);
    j["ror_necessary_approx"] = bool_block(r.ror_necessary_approx);
    j["ror_possible_approx"] = bool_block(r.ror_possible_approx);
    return j.dump(2) + "\n";
}

std::string smaa_report_text(const SmaaResults& r) {
    std::ostringstream os;
    os << "SMAA-PROMETHEE (" << to_string(r.mode) << "), " << r.sample_count << " samples\n";
    os << "Frequencies in percent; row versus column.\n\n";
    for (const Section& s : pair_sections(r)) {
        write_table(os, s.title, r.alternatives, r.alternatives, percent_cells(*s.counts, r.sample_count));
    }
    write_table(os, "Rank acceptability", rank_labels(r.alternative_count()), r.alternatives,
                percent_cells(r.rank_counts, r.sample_count));

    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> cells;
    for (std::size_t i = 0; i < r.alternative_count(); ++i) {
        if (!r.central_weights[i]) continue;
        labels.push_back(r.alternatives[i]);
        cells.push_back(weight_cells(*r.central_weights[i]));
    }
    write_table(os, "Central weight vectors", r.layout.names(), labels, cells);
    write_table(os, "Barycenter", r.layout.names(), {"all"}, {weight_cells(r.barycenter)});
    return os.str();
}

std::string smaa_report_csv(const SmaaResults& r) {
    std::ostringstream os;
    os << "section,row,column,count,value\n";
    auto emit_counts = [&](const std::string& key, const CountMatrix& counts, const std::vector<std::string>& cols) {
        for (Eigen::Index i = 0; i < counts.rows(); ++i) {
            for (Eigen::Index c = 0; c < counts.cols(); ++c) {
                os << key << "," << r.alternatives[static_cast<std::size_t>(i)] << "," << cols[static_cast<std::size_t>(c)]
                   << "," << counts(i, c) << "," << fixed(percentage(counts(i, c), r.sample_count), kPercentDecimals)
                   << "\n";
            }
        }
    };
    emit_counts("rank_acceptability", r.rank_counts, rank_labels(r.alternative_count()));
    for (const Section& s : pair_sections(r)) emit_counts(s.key, *s.counts, r.alternatives);
    const auto names = r.layout.names();
    for (std::size_t i = 0; i < r.alternative_count(); ++i) {
        if (!r.central_weights[i]) continue;
        const auto cells = weight_cells(*r.central_weights[i]);
        for (std::size_t k = 0; k < names.size(); ++k) {
            os << "central_weight," << r.alternatives[i] << "," << names[k] << "," << r.rank_counts(static_cast<Eigen::Index>(i), 0)
               << "," << cells[k] << "\n";
        }
    }
    const auto bary = weight_cells(r.barycenter);
    for (std::size_t k = 0; k < names.size(); ++k) {
        os << "barycenter,all," << names[k] << "," << r.sample_count << "," << bary[k] << "\n";
    }
    return os.str();
}

std::string ror_report_json(const SmaaResults& r, const RorValidation& v) {
    ojson j;
    j["alternatives"] = r.alternatives;
    auto to_block = [](const std::vector<std::vector<bool>>& m) {
        ojson out = ojson::array();
        for (const auto& row : m) {
            ojson jr = ojson::array();
            for (bool b : row) jr.push_back(b);
            out.push_back(std::move(jr));
        }
        return out;
    };
    j["exact_necessary"] = to_block(v.exact.necessary);
    j["exact_possible"] = to_block(v.exact.possible);
    j["approx_necessary"] = bool_block(r.ror_necessary_approx);
    j["approx_possible"] = bool_block(r.ror_possible_approx);
    auto list = [&](const std::vector<RorDiscrepancy>& ds) {
        ojson out = ojson::array();
        for (const auto& d : ds) out.push_back({{"row", r.alternatives[d.i]}, {"column", r.alternatives[d.j]}, {"kind", d.kind}});
        return out;
    };
    j["consistent"] = v.consistent();
    j["violations"] = list(v.violations);
    j["converse_gaps"] = list(v.converse);
    return j.dump(2) + "\n";
}

}  // namespace smaa
