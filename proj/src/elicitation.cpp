#include "smaa/elicitation.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "smaa/linear_forms.hpp"

namespace smaa {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const char* judgement_symbol(Judgement k) { return k == Judgement::preference ? "P" : "I"; }
const char* comparison_symbol(Comparison k) { return k == Comparison::greater ? ">" : "="; }
const char* interaction_symbol(InteractionKind k) {
    switch (k) {
        case InteractionKind::synergy: return "+";
        case InteractionKind::redundancy: return "-";
        case InteractionKind::none: return "0";
    }
    return "?";
}

}  // namespace

std::string describe(const PreferenceStatement& s, const PerformanceTable& table) {
    const auto& alt = table.alternatives();
    auto crit = [&](std::size_t j) { return table.criterion(j).name; };
    return std::visit(
        overloaded{
            [&](const statement::LocalPair& st) {
                return "local " + alt[st.a] + " " + judgement_symbol(st.kind) + " " + alt[st.b];
            },
            [&](const statement::GlobalP1& st) {
                return "PROMETHEE I " + alt[st.a] + " " + judgement_symbol(st.kind) + " " + alt[st.b];
            },
            [&](const statement::GlobalP2& st) {
                return "PROMETHEE II " + alt[st.a] + " " + judgement_symbol(st.kind) + " " + alt[st.b];
            },
            [&](const statement::Intensity& st) {
                return "intensity (" + alt[st.a] + "," + alt[st.b] + ") " + judgement_symbol(st.kind) + " (" +
                       alt[st.c] + "," + alt[st.d] + ")";
            },
            [&](const statement::CriterionImportance& st) {
                return "importance " + crit(st.j) + " " + comparison_symbol(st.kind) + " " + crit(st.k);
            },
            [&](const statement::InteractionSign& st) {
                return std::string("interaction sign {") + crit(st.j) + "," + crit(st.k) + "} " +
                       interaction_symbol(st.sign);
            },
            [&](const statement::InteractionMagnitude& st) {
                return "interaction |{" + crit(st.j) + "," + crit(st.k) + "}" + interaction_symbol(st.first) + "| " +
                       comparison_symbol(st.kind) + " |{" + crit(st.p) + "," + crit(st.q) + "}" +
                       interaction_symbol(st.second) + "|";
            },
            [&](const statement::OpposingPower& st) {
                if (st.variant == 'a') {
                    return "opposing power against " + crit(st.j) + ": " + crit(st.k) + " > " + crit(st.h);
                }
                return "opposing power of " + crit(st.k) + ": against " + crit(st.j) + " > against " + crit(st.h);
            },
        },
        s);
}

// ---------------------------------------------------------------------------

std::vector<std::string> ConstraintSystem::variable_names() const {
    auto names = layout_.names();
    names.emplace_back("eps");
    return names;
}

void ConstraintSystem::add_row(RowVector coefficients, Sense sense, double rhs, std::string provenance) {
    if (static_cast<std::size_t>(coefficients.size()) != column_count()) {
        throw ValidationError("constraint row has " + std::to_string(coefficients.size()) + " columns, expected " +
                              std::to_string(column_count()));
    }
    if (!coefficients.allFinite() || !std::isfinite(rhs)) throw ValidationError("constraint row is not finite");
    rows_.push_back(ConstraintRow{std::move(coefficients), sense, rhs, std::move(provenance)});
}

void ConstraintSystem::add_row(const RowVector& parameters, double epsilon_coefficient, Sense sense, double rhs,
                               std::string provenance) {
    RowVector full(static_cast<Eigen::Index>(column_count()));
    full.head(parameters.size()) = parameters;
    full[static_cast<Eigen::Index>(epsilon_column())] = epsilon_coefficient;
    add_row(std::move(full), sense, rhs, std::move(provenance));
}

double ConstraintSystem::violation(std::size_t i, const Vector& theta, double eps) const {
    const ConstraintRow& r = rows_.at(i);
    const auto dim = static_cast<Eigen::Index>(parameter_count());
    const double lhs = r.coefficients.head(dim).dot(theta) + r.coefficients[dim] * eps;
    switch (r.sense) {
        case Sense::less_equal: return std::max(0.0, lhs - r.rhs);
        case Sense::greater_equal: return std::max(0.0, r.rhs - lhs);
        case Sense::equal: return std::abs(lhs - r.rhs);
    }
    return 0.0;
}

double ConstraintSystem::max_violation(const Vector& theta, double eps) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < rows_.size(); ++i) worst = std::max(worst, violation(i, theta, eps));
    return worst;
}

// ---------------------------------------------------------------------------

namespace {

class Compiler {
public:
    Compiler(const PerformanceTable& table, ConstraintSystem& system)
        : table_(table), degrees_(table), layout_(system.layout()), system_(system),
          flows_(make_flow_operator(table, layout_)) {}

    void emit(const PreferenceStatement& s, const std::string& origin) {
        std::visit(overloaded{
                       [&](const statement::LocalPair& st) { local_pair(st, origin); },
                       [&](const statement::GlobalP1& st) { global_p1(st, origin); },
                       [&](const statement::GlobalP2& st) { global_p2(st, origin); },
                       [&](const statement::Intensity& st) { intensity(st, origin); },
                       [&](const statement::CriterionImportance& st) { importance(st, origin); },
                       [&](const statement::InteractionSign& st) { interaction_sign(st, origin); },
                       [&](const statement::InteractionMagnitude& st) { magnitude(st, origin); },
                       [&](const statement::OpposingPower& st) { opposing(st, origin); },
                   },
                   s);
    }

    void structural(std::size_t max_criteria) {
        const std::size_t n = layout_.criteria();
        const auto dim = static_cast<Eigen::Index>(layout_.dimension());

        RowVector boundary = RowVector::Zero(dim);
        for (std::size_t j = 0; j < n; ++j) {
            boundary[col(layout_.weight(j))] = 1.0;
            for (std::size_t k = j + 1; k < n; ++k) boundary[col(layout_.pair(j, k))] = 1.0;
        }
        system_.add_row(boundary, 0.0, Sense::equal, 1.0, "boundary");

        for (std::size_t j = 0; j < n; ++j) {
            system_.add_row(unit(layout_.weight(j)), 0.0, Sense::greater_equal, 0.0,
                            "sign " + layout_.name(layout_.weight(j)) + " >= 0");
        }
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                system_.add_row(unit(layout_.opp_plus(j, k)), 0.0, Sense::less_equal, 0.0,
                                "sign " + layout_.name(layout_.opp_plus(j, k)) + " <= 0");
            }
        }

        if (n > max_criteria) {
            throw CapacityError("criteria count " + std::to_string(n) + " exceeds the P(J) enumeration cap " +
                                std::to_string(max_criteria));
        }
        // Positive side: a_j + sum_{k in C} a_jk + sum_{k in D} a+_{j|k} >= 0 for (C u {j}, D).
        for_each_disjoint_pair(n, [&](std::size_t j, unsigned c, unsigned d) {
            RowVector row = unit(layout_.weight(j));
            for (std::size_t k = 0; k < n; ++k) {
                if (c & (1u << k)) row[col(layout_.pair(j, k))] += 1.0;
                if (d & (1u << k)) row[col(layout_.opp_plus(j, k))] += 1.0;
            }
            system_.add_row(row, 0.0, Sense::greater_equal, 0.0,
                            "monotonicity+ j=" + std::to_string(j + 1) + " " + masks(c, d));
        });
        // Negative side: a_j + sum_{k in D} a_jk + sum_{h in C} a-_{h|j} >= 0 for (C, D u {j}),
        // with a-_{h|j} = a+_{j|h}.
        for_each_disjoint_pair(n, [&](std::size_t j, unsigned c, unsigned d) {
            RowVector row = unit(layout_.weight(j));
            for (std::size_t k = 0; k < n; ++k) {
                if (d & (1u << k)) row[col(layout_.pair(j, k))] += 1.0;
                if (c & (1u << k)) row[col(layout_.opp_plus(j, k))] += 1.0;
            }
            system_.add_row(row, 0.0, Sense::greater_equal, 0.0,
                            "monotonicity- j=" + std::to_string(j + 1) + " " + masks(c, d));
        });
    }

private:
    static Eigen::Index col(std::size_t c) { return static_cast<Eigen::Index>(c); }

    RowVector unit(std::size_t c) const {
        RowVector r = RowVector::Zero(static_cast<Eigen::Index>(layout_.dimension()));
        r[col(c)] = 1.0;
        return r;
    }

    std::string masks(unsigned c, unsigned d) const {
        auto set = [&](unsigned mask) {
            std::string out = "{";
            bool first = true;
            for (std::size_t k = 0; k < layout_.criteria(); ++k) {
                if (!(mask & (1u << k))) continue;
                if (!first) out += ",";
                out += std::to_string(k + 1);
                first = false;
            }
            return out + "}";
        };
        return "C=" + set(c) + " D=" + set(d);
    }

    RowVector chb(std::size_t a, std::size_t b) const { return pair_form(degrees_, layout_, a, b).total(); }
    RowVector positive_flow(std::size_t a) const { return flows_.positive.row(col(a)); }
    RowVector negative_flow(std::size_t a) const { return flows_.negative.row(col(a)); }
    RowVector net_flow(std::size_t a) const { return positive_flow(a) - negative_flow(a); }

    void strict_or_equal(const RowVector& expr, Judgement kind, const std::string& origin) {
        if (kind == Judgement::preference) {
            system_.add_row(expr, -1.0, Sense::greater_equal, 0.0, origin);
        } else {
            system_.add_row(expr, 0.0, Sense::equal, 0.0, origin);
        }
    }

    void local_pair(const statement::LocalPair& st, const std::string& origin) {
        strict_or_equal(chb(st.a, st.b), st.kind, origin);
    }

    void global_p1(const statement::GlobalP1& st, const std::string& origin) {
        const RowVector pos = positive_flow(st.a) - positive_flow(st.b);
        const RowVector neg = negative_flow(st.a) - negative_flow(st.b);
        if (st.kind == Judgement::preference) {
            system_.add_row(pos, 0.0, Sense::greater_equal, 0.0, origin + " [positive flow]");
            system_.add_row(neg, 0.0, Sense::less_equal, 0.0, origin + " [negative flow]");
            system_.add_row(pos - neg, -1.0, Sense::greater_equal, 0.0, origin + " [net flow]");
        } else {
            system_.add_row(pos, 0.0, Sense::equal, 0.0, origin + " [positive flow]");
            system_.add_row(neg, 0.0, Sense::equal, 0.0, origin + " [negative flow]");
        }
    }

    void global_p2(const statement::GlobalP2& st, const std::string& origin) {
        strict_or_equal(net_flow(st.a) - net_flow(st.b), st.kind, origin);
    }

    void intensity(const statement::Intensity& st, const std::string& origin) {
        strict_or_equal(chb(st.a, st.b) - chb(st.c, st.d), st.kind, origin);
    }

    void importance(const statement::CriterionImportance& st, const std::string& origin) {
        const RowVector expr = unit(layout_.weight(st.j)) - unit(layout_.weight(st.k));
        strict_or_equal(expr, st.kind == Comparison::greater ? Judgement::preference : Judgement::indifference, origin);
    }

    void interaction_sign(const statement::InteractionSign& st, const std::string& origin) {
        const RowVector a = unit(layout_.pair(st.j, st.k));
        switch (st.sign) {
            case InteractionKind::synergy: system_.add_row(a, -1.0, Sense::greater_equal, 0.0, origin); break;
            case InteractionKind::redundancy: system_.add_row(a, 1.0, Sense::less_equal, 0.0, origin); break;
            case InteractionKind::none: system_.add_row(a, 0.0, Sense::equal, 0.0, origin); break;
        }
    }

    void magnitude(const statement::InteractionMagnitude& st, const std::string& origin) {
        const RowVector first = unit(layout_.pair(st.j, st.k));
        const RowVector second = unit(layout_.pair(st.p, st.q));
        const bool syn1 = st.first == InteractionKind::synergy;
        const bool syn2 = st.second == InteractionKind::synergy;
        if (st.kind == Comparison::greater) {
            // |a_jk| - |a_pq| >= eps with the stated signs substituted
            const RowVector expr = (syn1 ? first : RowVector(-first)) - (syn2 ? second : RowVector(-second));
            system_.add_row(expr, -1.0, Sense::greater_equal, 0.0, origin);
        } else {
            const RowVector expr = syn1 == syn2 ? RowVector(first - second) : RowVector(first + second);
            system_.add_row(expr, 0.0, Sense::equal, 0.0, origin);
        }
    }

    void opposing(const statement::OpposingPower& st, const std::string& origin) {
        RowVector expr;
        if (st.variant == 'a') {
            expr = unit(layout_.opp_plus(st.j, st.h)) - unit(layout_.opp_plus(st.j, st.k));
        } else {
            expr = unit(layout_.opp_plus(st.h, st.k)) - unit(layout_.opp_plus(st.j, st.k));
        }
        system_.add_row(expr, -1.0, Sense::greater_equal, 0.0, origin);
    }

    const PerformanceTable& table_;
    PreferenceDegrees degrees_;
    ParamLayout layout_;
    ConstraintSystem& system_;
    FlowOperator flows_;
};

void check_statement(const PreferenceStatement& s, const PerformanceTable& table) {
    const std::size_t m = table.alternative_count();
    const std::size_t n = table.criterion_count();
    auto alt = [&](std::size_t i) {
        if (i >= m) throw ValidationError("statement references alternative index " + std::to_string(i) + " out of range");
    };
    auto crit = [&](std::size_t j) {
        if (j >= n) throw ValidationError("statement references criterion index " + std::to_string(j) + " out of range");
    };
    auto distinct = [](std::size_t x, std::size_t y, const char* what) {
        if (x == y) throw ValidationError(std::string(what) + " needs two distinct criteria");
    };
    auto pair = [&](std::size_t a, std::size_t b) {
        alt(a), alt(b);
        if (a == b) throw ValidationError("statement compares alternative " + table.alternatives()[a] + " with itself");
    };
    std::visit(overloaded{
                   [&](const statement::LocalPair& st) { pair(st.a, st.b); },
                   [&](const statement::GlobalP1& st) { pair(st.a, st.b); },
                   [&](const statement::GlobalP2& st) { pair(st.a, st.b); },
                   [&](const statement::Intensity& st) { pair(st.a, st.b), pair(st.c, st.d); },
                   [&](const statement::CriterionImportance& st) {
                       crit(st.j), crit(st.k);
                       distinct(st.j, st.k, "criterion importance");
                   },
                   [&](const statement::InteractionSign& st) {
                       crit(st.j), crit(st.k);
                       distinct(st.j, st.k, "interaction sign");
                   },
                   [&](const statement::InteractionMagnitude& st) {
                       crit(st.j), crit(st.k), crit(st.p), crit(st.q);
                       distinct(st.j, st.k, "interaction magnitude");
                       distinct(st.p, st.q, "interaction magnitude");
                       if (std::minmax(st.j, st.k) == std::minmax(st.p, st.q)) {
                           throw ValidationError("interaction magnitude compares a pair with itself");
                       }
                       if (st.first == InteractionKind::none || st.second == InteractionKind::none) {
                           throw ValidationError("interaction magnitude needs synergy or redundancy signs");
                       }
                   },
                   [&](const statement::OpposingPower& st) {
                       crit(st.j), crit(st.k), crit(st.h);
                       if (st.variant != 'a' && st.variant != 'b') throw ValidationError("opposing power variant must be a or b");
                       distinct(st.j, st.k, "opposing power");
                       distinct(st.k, st.h, "opposing power");
                       distinct(st.j, st.h, "opposing power");
                   },
               },
               s);
}

}  // namespace

ConstraintSystem compile(std::span<const PreferenceStatement> statements, const PerformanceTable& table,
                         const CompileOptions& options) {
    const std::size_t n = table.criterion_count();
    if (n > options.max_criteria) {
        throw CapacityError("criteria count " + std::to_string(n) + " exceeds the P(J) enumeration cap " +
                            std::to_string(options.max_criteria));
    }
    ConstraintSystem system(ParamLayout::bipolar(n));
    Compiler compiler(table, system);
    for (std::size_t i = 0; i < statements.size(); ++i) {
        const std::string origin = "statement " + std::to_string(i + 1);
        try {
            check_statement(statements[i], table);
        } catch (const ValidationError& e) {
            throw ValidationError(origin + ": " + e.what());
        }
        compiler.emit(statements[i], origin + ": " + describe(statements[i], table));
    }
    compiler.structural(options.max_criteria);
    return system;
}

ConstraintSystem restrict_classical(const ConstraintSystem& system) {
    const ParamLayout& source = system.layout();
    if (source.kind() != LayoutKind::bipolar) throw ValidationError("classical restriction needs a bipolar system");
    const std::size_t n = source.criteria();
    ConstraintSystem out(ParamLayout::classical(n));
    const auto eps_in = static_cast<Eigen::Index>(system.epsilon_column());
    const auto eps_out = static_cast<Eigen::Index>(out.epsilon_column());

    std::map<std::tuple<std::vector<double>, int, double>, bool> seen;
    for (const ConstraintRow& r : system.rows()) {
        RowVector reduced(eps_out + 1);
        for (std::size_t j = 0; j < n; ++j) {
            reduced[static_cast<Eigen::Index>(j)] = r.coefficients[static_cast<Eigen::Index>(source.weight(j))];
        }
        reduced[eps_out] = r.coefficients[eps_in];
        if ((reduced.array() == 0.0).all()) {
            const bool holds = (r.sense == Sense::equal && r.rhs == 0.0) ||
                               (r.sense == Sense::less_equal && 0.0 <= r.rhs) ||
                               (r.sense == Sense::greater_equal && 0.0 >= r.rhs);
            if (holds) continue;
        }
        auto key = std::make_tuple(std::vector<double>(reduced.data(), reduced.data() + reduced.size()),
                                   static_cast<int>(r.sense), r.rhs);
        if (!seen.emplace(std::move(key), true).second) continue;
        out.add_row(std::move(reduced), r.sense, r.rhs, r.provenance);
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

Judgement parse_judgement(const json& j) {
    const auto s = j.get<std::string>();
    if (s == "P") return Judgement::preference;
    if (s == "I") return Judgement::indifference;
    throw ValidationError("kind must be \"P\" or \"I\", got \"" + s + "\"");
}

Comparison parse_comparison(const json& j) {
    const auto s = j.get<std::string>();
    if (s == ">") return Comparison::greater;
    if (s == "=") return Comparison::equal;
    throw ValidationError("kind must be \">\" or \"=\", got \"" + s + "\"");
}

InteractionKind parse_interaction(const json& j) {
    const auto s = j.get<std::string>();
    if (s == "+") return InteractionKind::synergy;
    if (s == "-") return InteractionKind::redundancy;
    if (s == "0") return InteractionKind::none;
    throw ValidationError("sign must be \"+\", \"-\" or \"0\", got \"" + s + "\"");
}

std::size_t parse_alternative(const json& j, const PerformanceTable& table) {
    return table.alternative_index(j.get<std::string>());
}

std::size_t parse_criterion(const json& j, const PerformanceTable& table) {
    if (j.is_number_integer()) {
        const auto idx = j.get<long long>();
        if (idx < 1 || static_cast<std::size_t>(idx) > table.criterion_count()) {
            throw ValidationError("criterion index " + std::to_string(idx) + " out of range");
        }
        return static_cast<std::size_t>(idx - 1);
    }
    return table.criterion_index(j.get<std::string>());
}

std::pair<std::size_t, std::size_t> parse_alt_pair(const json& j, const PerformanceTable& table) {
    if (!j.is_array() || j.size() != 2) throw ValidationError("expected a two-element alternative pair");
    return {parse_alternative(j[0], table), parse_alternative(j[1], table)};
}

std::pair<std::size_t, std::size_t> parse_crit_pair(const json& j, const PerformanceTable& table) {
    if (!j.is_array() || j.size() != 2) throw ValidationError("expected a two-element criterion pair");
    return {parse_criterion(j[0], table), parse_criterion(j[1], table)};
}

PreferenceStatement parse_statement(const json& doc, const PerformanceTable& table) {
    const auto type = doc.at("type").get<std::string>();
    if (type == "local_pair" || type == "global_p1" || type == "global_p2") {
        const std::size_t a = parse_alternative(doc.at("a"), table);
        const std::size_t b = parse_alternative(doc.at("b"), table);
        const Judgement kind = parse_judgement(doc.at("kind"));
        if (type == "local_pair") return statement::LocalPair{a, b, kind};
        if (type == "global_p1") return statement::GlobalP1{a, b, kind};
        return statement::GlobalP2{a, b, kind};
    }
    if (type == "intensity") {
        const auto [a, b] = parse_alt_pair(doc.at("pair1"), table);
        const auto [c, d] = parse_alt_pair(doc.at("pair2"), table);
        return statement::Intensity{a, b, c, d, parse_judgement(doc.at("kind"))};
    }
    if (type == "criterion_importance") {
        return statement::CriterionImportance{parse_criterion(doc.at("j"), table), parse_criterion(doc.at("k"), table),
                                              parse_comparison(doc.at("kind"))};
    }
    if (type == "interaction_sign") {
        return statement::InteractionSign{parse_criterion(doc.at("j"), table), parse_criterion(doc.at("k"), table),
                                          parse_interaction(doc.at("sign"))};
    }
    if (type == "interaction_magnitude") {
        const auto [j, k] = parse_crit_pair(doc.at("pair1"), table);
        const auto [p, q] = parse_crit_pair(doc.at("pair2"), table);
        const auto& signs = doc.at("signs");
        if (!signs.is_array() || signs.size() != 2) throw ValidationError("signs must be a two-element array");
        return statement::InteractionMagnitude{j, k, p, q, parse_comparison(doc.at("kind")),
                                               parse_interaction(signs[0]), parse_interaction(signs[1])};
    }
    if (type == "opposing_power") {
        const auto variant = doc.at("variant").get<std::string>();
        if (variant != "a" && variant != "b") throw ValidationError("variant must be \"a\" or \"b\"");
        return statement::OpposingPower{variant[0], parse_criterion(doc.at("j"), table),
                                        parse_criterion(doc.at("k"), table), parse_criterion(doc.at("h"), table)};
    }
    throw ValidationError("unknown statement type \"" + type + "\"");
}

}  // namespace

std::vector<PreferenceStatement> parse_statements(const std::string& text, const PerformanceTable& table) {
    std::vector<PreferenceStatement> out;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            const json doc = json::parse(line);
            PreferenceStatement s = parse_statement(doc, table);
            check_statement(s, table);
            out.push_back(s);
        } catch (const json::exception& e) {
            throw ValidationError("statements line " + std::to_string(line_no) + ": " + e.what());
        } catch (const ValidationError& e) {
            throw ValidationError("statements line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

std::string statements_to_json_lines(std::span<const PreferenceStatement> statements, const PerformanceTable& table) {
    const auto& alt = table.alternatives();
    auto crit = [&](std::size_t j) { return table.criterion(j).name; };
    std::string out;
    for (const auto& s : statements) {
        json doc = std::visit(
            overloaded{
                [&](const statement::LocalPair& st) {
                    return json{{"type", "local_pair"}, {"a", alt[st.a]}, {"b", alt[st.b]}, {"kind", judgement_symbol(st.kind)}};
                },
                [&](const statement::GlobalP1& st) {
                    return json{{"type", "global_p1"}, {"a", alt[st.a]}, {"b", alt[st.b]}, {"kind", judgement_symbol(st.kind)}};
                },
                [&](const statement::GlobalP2& st) {
                    return json{{"type", "global_p2"}, {"a", alt[st.a]}, {"b", alt[st.b]}, {"kind", judgement_symbol(st.kind)}};
                },
                [&](const statement::Intensity& st) {
                    return json{{"type", "intensity"},
                                {"pair1", json::array({alt[st.a], alt[st.b]})},
                                {"pair2", json::array({alt[st.c], alt[st.d]})},
                                {"kind", judgement_symbol(st.kind)}};
                },
                [&](const statement::CriterionImportance& st) {
                    return json{{"type", "criterion_importance"}, {"j", crit(st.j)}, {"k", crit(st.k)},
                                {"kind", comparison_symbol(st.kind)}};
                },
                [&](const statement::InteractionSign& st) {
                    return json{{"type", "interaction_sign"}, {"j", crit(st.j)}, {"k", crit(st.k)},
                                {"sign", interaction_symbol(st.sign)}};
                },
                [&](const statement::InteractionMagnitude& st) {
                    return json{{"type", "interaction_magnitude"},
                                {"pair1", json::array({crit(st.j), crit(st.k)})},
                                {"pair2", json::array({crit(st.p), crit(st.q)})},
                                {"kind", comparison_symbol(st.kind)},
                                {"signs", json::array({interaction_symbol(st.first), interaction_symbol(st.second)})}};
                },
                [&](const statement::OpposingPower& st) {
                    return json{{"type", "opposing_power"}, {"variant", std::string(1, st.variant)},
                                {"j", crit(st.j)}, {"k", crit(st.k)}, {"h", crit(st.h)}};
                },
            },
            s);
        out += doc.dump() + "\n";
    }
    return out;
}

}  // namespace smaa
